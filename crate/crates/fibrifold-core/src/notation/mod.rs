//! Fibrifold names: structure, ASCII rendering and parsing.
//!
//! The grammar is in `grammar/fibrifold.ebnf` at the repository root. A bar
//! is written as a `~` prefix, subscripts as `_d`, and tokens are separated
//! by single spaces. Inside a kaleidoscope a blank separator after a digit
//! is written as a space.

mod canon;
mod parse;
mod synth;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

pub use canon::{reduce_name, spelling_key, toggle_slots, SlotKind, SubSlot};
pub use parse::parse;
pub use synth::{full_name, star_rules, StarRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Enclosure {
    /// `( )`, circular fibers.
    Round,
    /// `[ ]`, interval fibers.
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sep {
    Blank,
    Dot,
    Colon,
}

impl Sep {
    pub fn as_str(self) -> &'static str {
        match self {
            Sep::Blank => "",
            Sep::Dot => ".",
            Sep::Colon => ":",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub order: u8,
    pub sub: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Ring { barred: bool, sub: Option<u8> },
    Gyration { order: u8, sub: Option<u8> },
    /// One separator per mirror; corners are either absent or one per mirror.
    Kaleidoscope { barred: bool, sub: Option<u8>, seps: Vec<Sep>, corners: Vec<Corner> },
    Cross { barred: bool, sub: Option<u8> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibrifoldName {
    pub enclosure: Enclosure,
    pub tokens: Vec<Token>,
}

impl FibrifoldName {
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push(if self.enclosure == Enclosure::Round { '(' } else { '[' });
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            render_token(t, &mut s);
        }
        s.push(if self.enclosure == Enclosure::Round { ')' } else { ']' });
        s
    }

    /// The plane group symbol underneath, e.g. `22*` for `(2_0 2 ~*.)`.
    pub fn base_symbol(&self) -> String {
        let mut s = String::new();
        for t in &self.tokens {
            match t {
                Token::Ring { .. } => s.push('o'),
                Token::Gyration { order, .. } => {
                    let _ = write!(s, "{order}");
                }
                Token::Kaleidoscope { corners, .. } => {
                    s.push('*');
                    for c in corners {
                        let _ = write!(s, "{}", c.order);
                    }
                }
                Token::Cross { .. } => s.push('x'),
            }
        }
        s
    }

    pub fn is_interval(&self) -> bool {
        self.enclosure == Enclosure::Square
    }
}

fn sub(s: &mut String, v: Option<u8>) {
    if let Some(v) = v {
        let _ = write!(s, "_{v}");
    }
}

fn render_token(t: &Token, s: &mut String) {
    match t {
        Token::Ring { barred, sub: v } => {
            s.push_str(if *barred { "~o" } else { "o" });
            sub(s, *v);
        }
        Token::Gyration { order, sub: v } => {
            let _ = write!(s, "{order}");
            sub(s, *v);
        }
        Token::Cross { barred, sub: v } => {
            s.push_str(if *barred { "~x" } else { "x" });
            sub(s, *v);
        }
        Token::Kaleidoscope { barred, sub: v, seps, corners } => {
            s.push_str(if *barred { "~*" } else { "*" });
            sub(s, *v);
            if corners.is_empty() {
                s.push_str(seps[0].as_str());
            }
            for (sep, c) in seps.iter().zip(corners) {
                if *sep == Sep::Blank && s.ends_with(|ch: char| ch.is_ascii_digit()) {
                    s.push(' ');
                } else {
                    s.push_str(sep.as_str());
                }
                let _ = write!(s, "{}", c.order);
                sub(s, c.sub);
            }
        }
    }
}

impl fmt::Display for FibrifoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::str::FromStr for FibrifoldName {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse(s)
    }
}

pub fn render(n: &FibrifoldName) -> String {
    n.render()
}

/// The name with every constant negated, as far as it can be read off the
/// name: gyration subscripts `g -> G - g` and corner subscripts likewise.
pub fn negate_name(n: &FibrifoldName) -> FibrifoldName {
    let tokens = n
        .tokens
        .iter()
        .map(|t| match t {
            Token::Gyration { order, sub } => Token::Gyration { order: *order, sub: sub.map(|g| (*order - g) % *order) },
            Token::Kaleidoscope { barred, sub, seps, corners } => Token::Kaleidoscope {
                barred: *barred,
                sub: *sub,
                seps: seps.clone(),
                corners: corners
                    .iter()
                    .map(|c| Corner { order: c.order, sub: c.sub.map(|a| (c.order - a) % c.order) })
                    .collect(),
            },
            t => t.clone(),
        })
        .collect();
    FibrifoldName { enclosure: n.enclosure, tokens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn render_examples() {
        let n = FibrifoldName {
            enclosure: Enclosure::Round,
            tokens: vec![
                Token::Gyration { order: 6, sub: Some(1) },
                Token::Gyration { order: 3, sub: Some(1) },
                Token::Gyration { order: 2, sub: Some(1) },
            ],
        };
        assert_eq!(n.render(), "(6_1 3_1 2_1)");
        let k = FibrifoldName {
            enclosure: Enclosure::Round,
            tokens: vec![Token::Kaleidoscope {
                barred: false,
                sub: None,
                seps: vec![Sep::Blank, Sep::Blank, Sep::Dot],
                corners: vec![
                    Corner { order: 4, sub: Some(0) },
                    Corner { order: 4, sub: None },
                    Corner { order: 2, sub: None },
                ],
            }],
        };
        assert_eq!(k.render(), "(*4_0 4.2)");
        assert_eq!(k.base_symbol(), "*442");
    }

    #[test]
    fn cornerless_kaleidoscope() {
        let n = FibrifoldName {
            enclosure: Enclosure::Square,
            tokens: vec![
                Token::Kaleidoscope { barred: false, sub: Some(0), seps: vec![Sep::Dot], corners: vec![] },
                Token::Kaleidoscope { barred: false, sub: Some(0), seps: vec![Sep::Colon], corners: vec![] },
            ],
        };
        assert_eq!(n.render(), "[*_0. *_0:]");
        assert_eq!(n.base_symbol(), "**");
    }
}
