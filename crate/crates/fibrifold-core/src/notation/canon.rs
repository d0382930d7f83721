// Reduced names and the choice of one spelling per class.

use alloc::vec::Vec;

use super::{FibrifoldName, Sep, Token};
use crate::basegroups::BasePresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    Star,
    Cross,
    Ring,
}

/// A binary subscript that may or may not survive reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubSlot {
    pub token: usize,
    pub kind: SlotKind,
}

/// Star, cross and ring subscripts present in `n`.
pub fn toggle_slots(n: &FibrifoldName) -> Vec<SubSlot> {
    let mut out = Vec::new();
    for (i, t) in n.tokens.iter().enumerate() {
        let kind = match t {
            Token::Kaleidoscope { sub: Some(_), .. } => SlotKind::Star,
            Token::Cross { sub: Some(_), .. } => SlotKind::Cross,
            Token::Ring { sub: Some(_), .. } => SlotKind::Ring,
            _ => continue,
        };
        out.push(SubSlot { token: i, kind });
    }
    out
}

fn binary_sub(t: &mut Token) -> &mut Option<u8> {
    match t {
        Token::Kaleidoscope { sub, .. } | Token::Cross { sub, .. } | Token::Ring { sub, .. } => sub,
        Token::Gyration { sub, .. } => sub,
    }
}

fn toggled(n: &FibrifoldName, idx: &[usize]) -> FibrifoldName {
    let mut m = n.clone();
    for &i in idx {
        let s = binary_sub(&mut m.tokens[i]);
        *s = s.map(|v| 1 - v);
    }
    m
}

/// Drop the subscripts that do not distinguish classes.
///
/// `orbit` maps a full name to its class, or `None` when no assignment has
/// that name. A subscript goes if flipping it stays in the class, or if no
/// flip of that kind (single or joint) names anything at all.
pub fn reduce_name<F>(n: &FibrifoldName, orbit: F) -> FibrifoldName
where
    F: Fn(&FibrifoldName) -> Option<usize>,
{
    let slots = toggle_slots(n);
    let me = orbit(n);
    let mut drop = Vec::new();
    for s in &slots {
        if orbit(&toggled(n, &[s.token])) == me {
            drop.push(s.token);
            continue;
        }
        let same: Vec<usize> = slots.iter().filter(|t| t.kind == s.kind).map(|t| t.token).collect();
        if same.iter().all(|&j| orbit(&toggled(n, &[j])).is_none()) && orbit(&toggled(n, &same)).is_none() {
            drop.push(s.token);
        }
    }
    let mut m = n.clone();
    for i in drop {
        *binary_sub(&mut m.tokens[i]) = None;
    }
    m
}

fn opt(v: Option<u8>) -> i32 {
    v.map_or(-1, i32::from)
}

/// Sort key used to pick the spelling of a class among its reduced names.
pub fn spelling_key(base: &BasePresentation, n: &FibrifoldName) -> Vec<i32> {
    let mut key = Vec::new();
    for &fi in &base.feature_order {
        match &n.tokens[fi] {
            Token::Gyration { sub, .. } => {
                key.extend([0, if sub.is_some() { 0 } else { 1 }, opt(*sub)]);
            }
            Token::Kaleidoscope { barred, sub, seps, corners } => {
                key.extend([1, sub.is_some() as i32, *barred as i32]);
                key.extend(seps.iter().map(|s| match s {
                    Sep::Blank => 0,
                    Sep::Dot => 1,
                    Sep::Colon => 2,
                }));
                let order: Vec<usize> =
                    if base.corner_order.len() == corners.len() { base.corner_order.clone() } else { (0..corners.len()).collect() };
                for ci in order {
                    match corners[ci].sub {
                        Some(s) => key.extend([0, s as i32]),
                        None => key.extend([1, -1]),
                    }
                }
                key.push(opt(*sub));
            }
            Token::Cross { barred, sub } | Token::Ring { barred, sub } => {
                key.extend([2, sub.is_some() as i32, *barred as i32, opt(*sub)]);
            }
        }
    }
    key
}
