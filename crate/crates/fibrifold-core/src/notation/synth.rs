// Full (unreduced) names of coupling assignments.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::Zero;

use super::{Corner, Enclosure, FibrifoldName, Sep, Token};
use crate::basegroups::{BasePresentation, Feature};
use crate::exactnum::{evaluate_grid, FiberKernel, GridOp, Sign};
use crate::word::Word;
use crate::{Error, Result};

const N: i64 = 12;

/// Which of the two star subscript conventions produced a star subscript.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarRule {
    /// Interval fibers: the coupling of the boundary loop, 0 or 1/2.
    Interval,
    /// Circular fibers with every mirror minus-coupled.
    AllMinus,
}

/// Sign and coefficient vector of a word: its constant is `sum coeff[i] * c[i]`.
fn symbolic(word: &Word, signs: &[Sign]) -> (Sign, Vec<i64>) {
    let mut s = Sign::Plus;
    let mut coeff = vec![0i64; signs.len()];
    for l in word.letters() {
        for _ in 0..l.exp.unsigned_abs() {
            if l.exp > 0 || signs[l.gen] == Sign::Minus {
                coeff[l.gen] += s.as_i64();
            } else {
                coeff[l.gen] -= s.as_i64();
            }
            s = s.mul(signs[l.gen]);
        }
    }
    (s, coeff)
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect()).collect();
    if m.is_empty() {
        return 0;
    }
    let ncol = m[0].len();
    let mut rk = 0;
    for c in 0..ncol {
        let Some(p) = (rk..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rk, p);
        for r in 0..m.len() {
            if r != rk && !m[r][c].is_zero() {
                let f = m[r][c] / m[rk][c];
                for k in 0..ncol {
                    let t = m[rk][k];
                    m[r][k] -= f * t;
                }
            }
        }
        rk += 1;
    }
    rk
}

fn in_rowspace(rows: &[Vec<i64>], w: &[i64]) -> bool {
    if w.iter().all(|&x| x == 0) {
        return true;
    }
    let mut ext = rows.to_vec();
    ext.push(w.to_vec());
    rank(rows) == rank(&ext)
}

fn half_int(x: i64) -> Result<u8> {
    if x.rem_euclid(N) != 0 {
        return Err(Error::Semantic(format!("subscript numerator {x}/12 is not an integer")));
    }
    Ok(x.div_euclid(N).rem_euclid(2) as u8)
}

struct Ctx<'a> {
    asg: &'a [GridOp],
    signs: Vec<Sign>,
    rows: Vec<Vec<i64>>,
}

impl Ctx<'_> {
    fn op(&self, w: &Word) -> GridOp {
        evaluate_grid(w.letters(), self.asg)
    }

    fn c(&self, w: &Word) -> i64 {
        self.op(w).c as i64
    }

    /// The constant of `w` is fixed by the relations (it cannot be varied
    /// continuously while keeping the sign pattern).
    fn constant(&self, w: &Word) -> bool {
        in_rowspace(&self.rows, &symbolic(w, &self.signs).1)
    }
}

fn check_assignment(base: &BasePresentation, asg: &[GridOp], kernel: FiberKernel) -> Result<()> {
    if asg.len() != base.rank() {
        return Err(Error::NotHomomorphism(base.id.clone()));
    }
    for r in &base.relations {
        let v = evaluate_grid(r.letters(), asg);
        let ok = match kernel {
            FiberKernel::Circular => v == GridOp::IDENTITY,
            FiberKernel::Interval => v.c == 0,
        };
        if !ok {
            return Err(Error::NotHomomorphism(base.id.clone()));
        }
    }
    Ok(())
}

/// The full name of an assignment, with every subscript that the coupling determines.
pub fn full_name(base: &BasePresentation, asg: &[GridOp], kernel: FiberKernel) -> Result<FibrifoldName> {
    Ok(synthesize(base, asg, kernel)?.0)
}

/// For each token, the star subscript rule that fired (if any).
pub fn star_rules(base: &BasePresentation, asg: &[GridOp], kernel: FiberKernel) -> Result<Vec<Option<StarRule>>> {
    Ok(synthesize(base, asg, kernel)?.1)
}

fn synthesize(
    base: &BasePresentation,
    asg: &[GridOp],
    kernel: FiberKernel,
) -> Result<(FibrifoldName, Vec<Option<StarRule>>)> {
    check_assignment(base, asg, kernel)?;
    let interval = kernel == FiberKernel::Interval;
    let signs: Vec<Sign> = asg.iter().map(|o| o.sign).collect();
    let rows = base.relations.iter().map(|r| symbolic(r, &signs).1).collect();
    let cx = Ctx { asg, signs, rows };
    let mut tokens = Vec::new();
    let mut rules = Vec::new();
    let mut plus_crosses: Vec<(usize, &Word)> = Vec::new();
    for f in &base.features {
        let mut rule = None;
        match f {
            Feature::Gyration { order, word } => {
                let op = cx.op(word);
                let g = *order as i64;
                let sub = if op.sign == Sign::Plus {
                    let x = g * op.c as i64;
                    if x % N != 0 {
                        return Err(Error::Semantic(format!("gyration constant {} not a multiple of 1/{g}", op)));
                    }
                    Some(((x / N) % g) as u8)
                } else {
                    None
                };
                tokens.push(Token::Gyration { order: *order, sub });
            }
            Feature::Kaleidoscope { lambda, mirrors, corners, closing } => {
                let mops: Vec<GridOp> = mirrors.iter().map(|m| cx.op(m)).collect();
                let mut seps = Vec::new();
                for op in &mops {
                    seps.push(match (op.sign, op.c) {
                        (Sign::Minus, _) => Sep::Blank,
                        (Sign::Plus, 0) => Sep::Dot,
                        (Sign::Plus, 6) => Sep::Colon,
                        _ => return Err(Error::Semantic(format!("mirror coupled to {op}"))),
                    });
                }
                let mut next: Vec<GridOp> = mops[1..].to_vec();
                next.push(match closing {
                    Some(w) => cx.op(w),
                    None => mops[0],
                });
                let mut cs = Vec::new();
                let mut sigma = 0i64;
                for ((p, q), &a_ord) in mops.iter().zip(&next).zip(corners) {
                    let a = a_ord as i64;
                    if p.sign == Sign::Minus && q.sign == Sign::Minus {
                        let x = a * (q.c as i64 - p.c as i64);
                        if x.rem_euclid(N) != 0 {
                            return Err(Error::Semantic("corner constant off the grid".into()));
                        }
                        let s = x.div_euclid(N).rem_euclid(a);
                        sigma += ((a - s) % a) * N / a;
                        cs.push(Corner { order: a_ord, sub: Some(s as u8) });
                    } else {
                        cs.push(Corner { order: a_ord, sub: None });
                    }
                }
                let mut barred = false;
                let mut sub = None;
                if let Some(lam) = lambda {
                    let lop = cx.op(lam);
                    barred = lop.sign == Sign::Minus;
                    if interval {
                        sub = Some(if lop.c == 0 { 0 } else { 1 });
                        rule = Some(StarRule::Interval);
                    } else if mops.iter().all(|o| o.sign == Sign::Minus) {
                        let p = mops[0].c as i64;
                        let l = lop.c as i64;
                        let (v, w) = if lop.sign == Sign::Plus {
                            (l, lam.clone())
                        } else {
                            ((p - l).rem_euclid(N), mirrors[0].concat(lam))
                        };
                        if cx.constant(&w) {
                            sub = Some(half_int(2 * v - sigma)?);
                            rule = Some(StarRule::AllMinus);
                        }
                    }
                }
                tokens.push(Token::Kaleidoscope { barred, sub, seps, corners: cs });
            }
            Feature::Cross { word } => {
                let op = cx.op(word);
                if interval {
                    tokens.push(Token::Cross { barred: false, sub: Some(((2 * op.c as i64 / N) % 2) as u8) });
                } else {
                    tokens.push(Token::Cross { barred: op.sign == Sign::Minus, sub: None });
                    if op.sign == Sign::Plus {
                        plus_crosses.push((tokens.len() - 1, word));
                    }
                }
            }
            Feature::Ring { x, y } => {
                let (ox, oy) = (cx.op(x), cx.op(y));
                if interval {
                    let sub = if ox.c == 0 && oy.c == 0 { 0 } else { 1 };
                    tokens.push(Token::Ring { barred: false, sub: Some(sub) });
                } else if ox.sign == Sign::Plus && oy.sign == Sign::Plus {
                    tokens.push(Token::Ring { barred: false, sub: None });
                } else {
                    let (xw, yw) = if ox.sign == Sign::Plus {
                        (x.concat(y), y.clone())
                    } else if oy.sign == Sign::Plus {
                        (x.clone(), x.concat(y))
                    } else {
                        (x.clone(), y.clone())
                    };
                    let d = (cx.c(&xw) - cx.c(&yw)).rem_euclid(N);
                    let k = cx.c(&base.rest);
                    tokens.push(Token::Ring { barred: true, sub: Some(half_int(2 * d + k)?) });
                }
            }
        }
        rules.push(rule);
    }
    if let Some(&(idx, _)) = plus_crosses.last() {
        let zs: i64 = plus_crosses.iter().map(|(_, w)| cx.c(w)).sum::<i64>().rem_euclid(N);
        let k = cx.c(&base.rest);
        if let Token::Cross { sub, .. } = &mut tokens[idx] {
            *sub = Some(half_int(2 * zs + k)?);
        }
    }
    let enclosure = if interval { Enclosure::Square } else { Enclosure::Round };
    Ok((FibrifoldName { enclosure, tokens }, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basegroups::presentation;

    fn ops(s: &str) -> Vec<GridOp> {
        s.split_whitespace()
            .map(|x| GridOp::try_from(x.parse::<crate::exactnum::VerticalOp>().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn paper_rows() {
        let b = presentation("632").unwrap();
        let n = full_name(&b, &ops("1/6+ 1/3+ 1/2+"), FiberKernel::Circular).unwrap();
        assert_eq!(n.render(), "(6_1 3_1 2_1)");
        let b = presentation("*632").unwrap();
        let n = full_name(&b, &ops("0+ 0+ 0+"), FiberKernel::Interval).unwrap();
        assert_eq!(n.render(), "[*.6.3.2]");
        let b = presentation("xx").unwrap();
        let n = full_name(&b, &ops("0- 0-"), FiberKernel::Circular).unwrap();
        assert_eq!(n.render(), "(~x ~x)");
    }

    #[test]
    fn rejects_non_homomorphism() {
        let b = presentation("632").unwrap();
        assert!(full_name(&b, &ops("0+ 1/3+ 1/2+"), FiberKernel::Circular).is_err());
    }

    #[test]
    fn symbolic_matches_evaluation() {
        let b = presentation("2*22").unwrap();
        let a = ops("1/2- 1/4- 3/4-");
        let signs: Vec<Sign> = a.iter().map(|o| o.sign).collect();
        for r in &b.relations {
            let (s, coeff) = symbolic(r, &signs);
            let v = evaluate_grid(r.letters(), &a);
            let c: i64 = coeff.iter().zip(&a).map(|(k, o)| k * o.c as i64).sum();
            assert_eq!(s, v.sign);
            assert_eq!(c.rem_euclid(12), v.c as i64);
        }
    }
}
