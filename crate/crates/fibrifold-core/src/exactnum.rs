//! Rationals modulo 1 and vertical operations `c+`, `c-`.
//!
//! `(c, +)` is the map `z -> c + z` and `(c, -)` is `z -> c - z`.

use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::word::Letter;
use crate::{Error, Result};

/// A rational number taken modulo 1, kept as `num/den` with `0 <= num < den`
/// and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FracMod1 {
    num: i64,
    den: i64,
}

impl FracMod1 {
    pub const ZERO: FracMod1 = FracMod1 { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        FracMod1 { num: num / g, den: den / g }
    }

    pub fn from_twelfths(k: i64) -> Self {
        Self::new(k, 12)
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The value as a multiple of 1/12, if it lies on that grid.
    pub fn twelfths(self) -> Option<u8> {
        if 12 % self.den == 0 {
            Some((self.num * (12 / self.den)) as u8)
        } else {
            None
        }
    }

    pub fn add(self, o: Self) -> Self {
        let l = self.den.lcm(&o.den);
        Self::new(self.num * (l / self.den) + o.num * (l / o.den), l)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.num, self.den)
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }
}

impl fmt::Display for FracMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for FracMod1 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadNumber(s.into());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(FracMod1::new(n, d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerticalOp {
    pub sign: Sign,
    pub c: FracMod1,
}

impl VerticalOp {
    pub const IDENTITY: VerticalOp = VerticalOp { sign: Sign::Plus, c: FracMod1::ZERO };

    pub fn plus(c: FracMod1) -> Self {
        VerticalOp { sign: Sign::Plus, c }
    }

    pub fn minus(c: FracMod1) -> Self {
        VerticalOp { sign: Sign::Minus, c }
    }

    /// Apply to a height `z` (mod 1).
    pub fn apply(self, z: FracMod1) -> FracMod1 {
        match self.sign {
            Sign::Plus => self.c.add(z),
            Sign::Minus => self.c.sub(z),
        }
    }
}

impl fmt::Display for VerticalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", self.c, s)
    }
}

impl FromStr for VerticalOp {
    type Err = Error;

    /// Parses `1/2+`, `0-`, `5/6+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let sign = match s.chars().last() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(Error::BadOp(s.into())),
        };
        let c: FracMod1 = s[..s.len() - 1].parse().map_err(|_| Error::BadOp(s.into()))?;
        Ok(VerticalOp { sign, c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberKernel {
    Circular,
    Interval,
}

impl FiberKernel {
    pub fn name(self) -> &'static str {
        match self {
            FiberKernel::Circular => "circular",
            FiberKernel::Interval => "interval",
        }
    }
}

impl FromStr for FiberKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" => Ok(FiberKernel::Circular),
            "interval" => Ok(FiberKernel::Interval),
            _ => Err(Error::BadOp(s.into())),
        }
    }
}

/// `z -> f(g(z))`.
pub fn compose(f: VerticalOp, g: VerticalOp) -> VerticalOp {
    let c = match f.sign {
        Sign::Plus => f.c.add(g.c),
        Sign::Minus => f.c.sub(g.c),
    };
    VerticalOp { sign: f.sign.mul(g.sign), c }
}

pub fn invert(f: VerticalOp) -> VerticalOp {
    match f.sign {
        Sign::Plus => VerticalOp::plus(f.c.neg()),
        Sign::Minus => f,
    }
}

/// Evaluate a word, `assignment[i]` being the operation of generator `i`.
pub fn evaluate_word(word: &[Letter], assignment: &[VerticalOp]) -> Result<VerticalOp> {
    let mut r = VerticalOp::IDENTITY;
    for l in word {
        let op = *assignment.get(l.gen).ok_or(Error::Unassigned(l.gen))?;
        let op = if l.exp > 0 { op } else { invert(op) };
        for _ in 0..l.exp.unsigned_abs() {
            r = compose(r, op);
        }
    }
    Ok(r)
}

pub fn in_kernel(op: VerticalOp, k: FiberKernel) -> bool {
    match k {
        FiberKernel::Circular => op == VerticalOp::IDENTITY,
        FiberKernel::Interval => op.c.is_zero(),
    }
}

/// Move the origin of the fiber: minus-coupled constants shift by `d`.
pub fn reset(assignment: &[VerticalOp], d: FracMod1) -> alloc::vec::Vec<VerticalOp> {
    assignment
        .iter()
        .map(|op| match op.sign {
            Sign::Plus => *op,
            Sign::Minus => VerticalOp::minus(op.c.add(d)),
        })
        .collect()
}

/// A vertical operation on the 1/12 grid, `c` in twelfths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridOp {
    pub sign: Sign,
    pub c: u8,
}

impl GridOp {
    pub const IDENTITY: GridOp = GridOp { sign: Sign::Plus, c: 0 };

    pub fn new(sign: Sign, c: i64) -> Self {
        GridOp { sign, c: c.rem_euclid(12) as u8 }
    }

    pub fn compose(self, g: GridOp) -> GridOp {
        let c = match self.sign {
            Sign::Plus => self.c as i64 + g.c as i64,
            Sign::Minus => self.c as i64 - g.c as i64,
        };
        GridOp::new(self.sign.mul(g.sign), c)
    }

    pub fn invert(self) -> GridOp {
        match self.sign {
            Sign::Plus => GridOp::new(Sign::Plus, -(self.c as i64)),
            Sign::Minus => self,
        }
    }

    pub fn negate(self) -> GridOp {
        GridOp::new(self.sign, -(self.c as i64))
    }

    /// All 24 grid operations, plus signs first, then by constant.
    pub fn all() -> impl Iterator<Item = GridOp> {
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(|s| (0..12).map(move |c| GridOp::new(s, c)))
    }
}

impl From<GridOp> for VerticalOp {
    fn from(g: GridOp) -> Self {
        VerticalOp { sign: g.sign, c: FracMod1::from_twelfths(g.c as i64) }
    }
}

impl TryFrom<VerticalOp> for GridOp {
    type Error = Error;

    fn try_from(v: VerticalOp) -> Result<Self> {
        let c = v.c.twelfths().ok_or_else(|| Error::BadOp(alloc::format!("{v} is not on the 1/12 grid")))?;
        Ok(GridOp { sign: v.sign, c })
    }
}

impl fmt::Display for GridOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        VerticalOp::from(*self).fmt(f)
    }
}

pub fn evaluate_grid(word: &[Letter], assignment: &[GridOp]) -> GridOp {
    let mut r = GridOp::IDENTITY;
    for l in word {
        let op = if l.exp > 0 { assignment[l.gen] } else { assignment[l.gen].invert() };
        for _ in 0..l.exp.unsigned_abs() {
            r = r.compose(op);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn op(s: &str) -> VerticalOp {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let f = FracMod1::new(-5, 6);
        assert_eq!((f.numerator(), f.denominator()), (1, 6));
        assert_eq!(FracMod1::new(6, 12), FracMod1::new(1, 2));
        assert_eq!(FracMod1::new(3, 3), FracMod1::ZERO);
        assert_eq!(FracMod1::new(1, -4), FracMod1::new(3, 4));
    }

    #[test]
    fn compose_examples() {
        let a = compose(compose(op("1/2-"), op("1/3+")), op("0-"));
        assert_eq!(a, op("1/6+"));
        for s in ["1/4+", "1/3-", "0+"] {
            assert_eq!(compose(VerticalOp::IDENTITY, op(s)), op(s));
        }
        assert_eq!(compose(op("1/3-"), op("1/3-")), op("0+"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(op("1/3+")), op("2/3+"));
        assert_eq!(invert(op("1/4-")), op("1/4-"));
        assert_eq!(invert(op("0+")), op("0+"));
    }

    #[test]
    fn evaluate_examples() {
        let w = [Letter { gen: 0, exp: 1 }, Letter { gen: 1, exp: 1 }, Letter { gen: 2, exp: 1 }];
        let r = evaluate_word(&w, &[op("1/6+"), op("1/3+"), op("1/2+")]).unwrap();
        assert_eq!(r, op("0+"));
        let r = evaluate_word(&w, &[op("0+"), op("1/3+"), op("1/2+")]).unwrap();
        assert_eq!(r, op("5/6+"));
        assert_eq!(evaluate_word(&[], &[]).unwrap(), VerticalOp::IDENTITY);
        let zz = [Letter { gen: 0, exp: 2 }];
        assert_eq!(evaluate_word(&zz, &[op("1/4+")]).unwrap(), op("1/2+"));
        assert_eq!(evaluate_word(&zz, &[]), Err(Error::Unassigned(0)));
    }

    #[test]
    fn kernel_examples() {
        assert!(in_kernel(op("0-"), FiberKernel::Interval));
        assert!(!in_kernel(op("0-"), FiberKernel::Circular));
        assert!(!in_kernel(op("1/2+"), FiberKernel::Circular));
        assert!(!in_kernel(op("1/2+"), FiberKernel::Interval));
    }

    #[test]
    fn reset_examples() {
        let a = vec![op("1/3+"), op("1/4-")];
        assert_eq!(reset(&a, FracMod1::ZERO), a);
        let e = FracMod1::new(1, 4);
        assert_eq!(reset(&a, FracMod1::ZERO.sub(e))[1], op("0-"));
        assert_eq!(reset(&a, FracMod1::new(1, 6))[0], op("1/3+"));
    }

    #[test]
    fn parse_display() {
        assert_eq!(op("5/6+").to_string(), "5/6+");
        assert_eq!(op("0-").to_string(), "0-");
        assert!("1/2".parse::<VerticalOp>().is_err());
        assert!("1/0+".parse::<VerticalOp>().is_err());
    }

    #[test]
    fn grid_agrees_with_general() {
        for f in GridOp::all() {
            for g in GridOp::all() {
                assert_eq!(VerticalOp::from(f.compose(g)), compose(f.into(), g.into()));
            }
            assert_eq!(VerticalOp::from(f.invert()), invert(f.into()));
        }
    }
}
