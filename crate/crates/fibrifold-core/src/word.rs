//! Words in the generators of a presentation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::{Error, Result};

/// A generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i32,
}

/// Product of letters, read left to right; the leftmost factor is applied last.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(gen: usize) -> Self {
        Word(alloc::vec![Letter { gen, exp: 1 }])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// The same word with every letter of exponent +-1.
    pub fn expanded(&self) -> Word {
        let mut v = Vec::new();
        for l in &self.0 {
            for _ in 0..l.exp.unsigned_abs() {
                v.push(Letter { gen: l.gen, exp: l.exp.signum() });
            }
        }
        Word(v)
    }

    /// Replace every generator by a word (a substitution map).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for l in &self.0 {
            let img = if l.exp > 0 { images[l.gen].clone() } else { images[l.gen].inverse() };
            for _ in 0..l.exp.unsigned_abs() {
                v.extend_from_slice(&img.0);
            }
        }
        Word(v)
    }

    /// Parse a space separated word such as `gamma^-1 P gamma`; `1` is the empty word.
    pub fn parse(s: &str, labels: &[&str]) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (label, exp) = match tok.split_once('^') {
                Some((l, e)) => (l, e.parse::<i32>().map_err(|_| Error::BadNumber(tok.into()))?),
                None => (tok, 1),
            };
            let gen = labels
                .iter()
                .position(|&x| x == label)
                .ok_or_else(|| Error::UnknownLabel(label.into()))?;
            if exp == 0 {
                return Err(Error::BadNumber(tok.into()));
            }
            out.push(Letter { gen, exp });
        }
        Ok(Word(out))
    }

    pub fn format(&self, labels: &[&str]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(labels[l.gen]);
            if l.exp != 1 {
                let _ = write!(s, "^{}", l.exp);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let labels = ["gamma", "P"];
        let w = Word::parse("gamma^-1 P gamma", &labels).unwrap();
        assert_eq!(w.0.len(), 3);
        assert_eq!(w.format(&labels), "gamma^-1 P gamma");
        assert_eq!(w.inverse().format(&labels), "gamma^-1 P^-1 gamma");
        assert!(Word::parse("1", &labels).unwrap().is_empty());
        assert!(Word::parse("Q", &labels).is_err());
    }

    #[test]
    fn substitution() {
        let labels = ["a", "b"];
        let w = Word::parse("a^2 b^-1", &labels).unwrap();
        let imgs = [Word::parse("b", &labels).unwrap(), Word::parse("a b", &labels).unwrap()];
        assert_eq!(w.substitute(&imgs).format(&labels), "b b b^-1 a^-1");
    }
}
