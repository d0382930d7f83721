use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Corner, Enclosure, FibrifoldName, Sep, Token};
use crate::{Error, Result};

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.s.get(self.pos + 1).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digit(&mut self) -> Result<u8> {
        match self.peek() {
            Some(c @ b'0'..=b'9') => {
                self.pos += 1;
                Ok(c - b'0')
            }
            _ => self.err("expected a digit"),
        }
    }

    fn sub(&mut self) -> Result<Option<u8>> {
        if self.eat(b'_') {
            Ok(Some(self.digit()?))
        } else {
            Ok(None)
        }
    }

    fn sep(&mut self) -> Sep {
        if self.eat(b'.') {
            Sep::Dot
        } else if self.eat(b':') {
            Sep::Colon
        } else {
            Sep::Blank
        }
    }

    fn kaleidoscope(&mut self, barred: bool) -> Result<Token> {
        let sub = self.sub()?;
        let mut seps = Vec::new();
        let mut corners = Vec::new();
        loop {
            let save = self.pos;
            let sep = self.sep();
            if sep == Sep::Blank && self.peek() == Some(b' ') && self.peek2().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let order = self.digit()?;
                let csub = self.sub()?;
                seps.push(sep);
                corners.push(Corner { order, sub: csub });
                continue;
            }
            if corners.is_empty() {
                seps.push(sep);
            } else if sep != Sep::Blank {
                self.pos = save;
                return self.err("separator after the last corner");
            } else {
                self.pos = save;
            }
            break;
        }
        Ok(Token::Kaleidoscope { barred, sub, seps, corners })
    }

    fn token(&mut self) -> Result<Token> {
        let barred = self.eat(b'~');
        match self.peek() {
            Some(b'o') => {
                self.pos += 1;
                Ok(Token::Ring { barred, sub: self.sub()? })
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Token::Cross { barred, sub: self.sub()? })
            }
            Some(b'*') => {
                self.pos += 1;
                self.kaleidoscope(barred)
            }
            Some(c) if c.is_ascii_digit() && !barred => {
                let order = self.digit()?;
                Ok(Token::Gyration { order, sub: self.sub()? })
            }
            _ => self.err("expected `o`, `x`, `*` or a gyration order"),
        }
    }
}

fn check_order(order: u8, what: &str) -> Result<()> {
    if matches!(order, 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::Semantic(format!("{order} is not a crystallographic {what} order")))
    }
}

fn check_semantics(n: &FibrifoldName) -> Result<()> {
    let binary = |v: Option<u8>, what: &str| match v {
        Some(x) if x > 1 => Err(Error::Semantic(format!("{what} subscript must be 0 or 1, got {x}"))),
        _ => Ok(()),
    };
    if n.tokens.is_empty() {
        return Err(Error::Semantic("empty name".into()));
    }
    for t in &n.tokens {
        match t {
            Token::Ring { sub, .. } => binary(*sub, "ring")?,
            Token::Cross { sub, .. } => binary(*sub, "cross")?,
            Token::Gyration { order, sub } => {
                check_order(*order, "gyration")?;
                if let Some(g) = sub {
                    if g >= order {
                        return Err(Error::Semantic(format!("gyration subscript {g} must be below {order}")));
                    }
                }
            }
            Token::Kaleidoscope { sub, corners, .. } => {
                binary(*sub, "star")?;
                for c in corners {
                    check_order(c.order, "corner")?;
                    if let Some(a) = c.sub {
                        if a >= c.order {
                            return Err(Error::Semantic(format!("corner subscript {a} must be below {}", c.order)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Parse an ASCII fibrifold name. Only the canonical spacing is accepted.
pub fn parse(input: &str) -> Result<FibrifoldName> {
    let mut sc = Scanner { s: input.as_bytes(), pos: 0 };
    let enclosure = if sc.eat(b'(') {
        Enclosure::Round
    } else if sc.eat(b'[') {
        Enclosure::Square
    } else {
        return sc.err("expected `(` or `[`");
    };
    let close = if enclosure == Enclosure::Round { b')' } else { b']' };
    let mut tokens = Vec::new();
    loop {
        tokens.push(sc.token()?);
        if sc.eat(close) {
            break;
        }
        if !sc.eat(b' ') {
            return sc.err(&format!("expected a space or `{}`", close as char));
        }
    }
    if sc.pos != input.len() {
        return sc.err("trailing characters");
    }
    let n = FibrifoldName { enclosure, tokens };
    let r = n.render();
    if r != input {
        let pos = r.bytes().zip(input.bytes()).position(|(a, b)| a != b).unwrap_or(r.len().min(input.len()));
        return Err(Error::Syntax { pos, msg: String::from("non-canonical spacing") });
    }
    check_semantics(&n)?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_table_names() {
        let n = parse("[*.6.3.2]").unwrap();
        assert_eq!(n.enclosure, Enclosure::Square);
        match &n.tokens[0] {
            Token::Kaleidoscope { barred, sub, seps, corners } => {
                assert!(!barred);
                assert_eq!(*sub, None);
                assert_eq!(seps, &vec![Sep::Dot; 3]);
                assert_eq!(corners.iter().map(|c| c.order).collect::<Vec<_>>(), [6, 3, 2]);
            }
            _ => panic!(),
        }
        for s in ["(*.4 4:2)", "(2_0 2 ~*.)", "[*_0. *_0:]", "(*_0 2 2 2 2)", "(~x ~x)", "(~o_1)", "(3_1 *3_1)"] {
            assert_eq!(parse(s).unwrap().render(), s);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("(7_1)"), Err(Error::Semantic(_))));
        assert!(matches!(parse("(3_3)"), Err(Error::Semantic(_))));
        assert!(matches!(parse("(x_2)"), Err(Error::Semantic(_))));
        assert!(matches!(parse("2 2"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("(2  2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(2 2]"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(*4 .4)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(*.4.4.)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("()"), Err(Error::Syntax { pos: 1, .. })));
    }
}
