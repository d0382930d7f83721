use alloc::format;
use alloc::vec::Vec;

use super::{normalize, Normalized, SpaceGroup};
use crate::linalg::{det, trace, Mat};
use crate::{Error, Result};

// Element classes by (det, trace): the identity is implicit.
const CLASSES: [(i64, i64); 9] = [
    (1, -1), // 2-fold rotation
    (1, 0),  // 3-fold
    (1, 1),  // 4-fold
    (1, 2),  // 6-fold
    (-1, 1), // mirror
    (-1, -3), // inversion
    (-1, 0), // 3-fold rotoinversion
    (-1, -1), // 4-fold rotoinversion
    (-1, -2), // 6-fold rotoinversion
];

/// The 32 point groups by their class counts, in the order of [`CLASSES`].
pub const POINT_GROUPS: [(&str, [u8; 9]); 32] = [
    ("1", [0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("x", [0, 0, 0, 0, 0, 1, 0, 0, 0]),
    ("*", [0, 0, 0, 0, 1, 0, 0, 0, 0]),
    ("22", [1, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("2*", [1, 0, 0, 0, 1, 1, 0, 0, 0]),
    ("*22", [1, 0, 0, 0, 2, 0, 0, 0, 0]),
    ("222", [3, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("*222", [3, 0, 0, 0, 3, 1, 0, 0, 0]),
    ("2x", [1, 0, 0, 0, 0, 0, 0, 2, 0]),
    ("2*2", [3, 0, 0, 0, 2, 0, 0, 2, 0]),
    ("44", [1, 0, 2, 0, 0, 0, 0, 0, 0]),
    ("4*", [1, 0, 2, 0, 1, 1, 0, 2, 0]),
    ("*44", [1, 0, 2, 0, 4, 0, 0, 0, 0]),
    ("224", [5, 0, 2, 0, 0, 0, 0, 0, 0]),
    ("*224", [5, 0, 2, 0, 5, 1, 0, 2, 0]),
    ("33", [0, 2, 0, 0, 0, 0, 0, 0, 0]),
    ("3x", [0, 2, 0, 0, 0, 1, 2, 0, 0]),
    ("*33", [0, 2, 0, 0, 3, 0, 0, 0, 0]),
    ("223", [3, 2, 0, 0, 0, 0, 0, 0, 0]),
    ("2*3", [3, 2, 0, 0, 3, 1, 2, 0, 0]),
    ("66", [1, 2, 0, 2, 0, 0, 0, 0, 0]),
    ("3*", [0, 2, 0, 0, 1, 0, 0, 0, 2]),
    ("6*", [1, 2, 0, 2, 1, 1, 2, 0, 2]),
    ("*66", [1, 2, 0, 2, 6, 0, 0, 0, 0]),
    ("226", [7, 2, 0, 2, 0, 0, 0, 0, 0]),
    ("*223", [3, 2, 0, 0, 4, 0, 0, 0, 2]),
    ("*226", [7, 2, 0, 2, 7, 1, 2, 0, 2]),
    ("332", [3, 8, 0, 0, 0, 0, 0, 0, 0]),
    ("3*2", [3, 8, 0, 0, 3, 1, 8, 0, 0]),
    ("*332", [3, 8, 0, 0, 6, 0, 0, 6, 0]),
    ("432", [9, 8, 6, 0, 0, 0, 0, 0, 0]),
    ("*432", [9, 8, 6, 0, 9, 1, 8, 6, 0]),
];

/// Orbifold symbol of a finite group of integer matrices.
pub fn classify(linear: &[Mat<3>]) -> Result<&'static str> {
    let mut counts = [0u8; 9];
    for m in linear {
        let key = (det(m), trace(m));
        if key == (1, 3) {
            continue;
        }
        let i = CLASSES
            .iter()
            .position(|&c| c == key)
            .ok_or_else(|| Error::Realization(format!("linear part {m:?} is not crystallographic")))?;
        counts[i] += 1;
    }
    POINT_GROUPS
        .iter()
        .find(|(_, c)| *c == counts)
        .map(|(s, _)| *s)
        .ok_or_else(|| Error::Realization(format!("no point group with class counts {counts:?}")))
}

pub fn point_group_of(norm: &Normalized) -> Result<&'static str> {
    let lin: Vec<Mat<3>> = norm.cosets.iter().map(|c| c.lattice_linear).collect();
    classify(&lin)
}

pub fn point_group(g: &SpaceGroup) -> Result<&'static str> {
    point_group_of(&normalize(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histograms_are_distinct() {
        for (i, a) in POINT_GROUPS.iter().enumerate() {
            let order: u32 = 1 + a.1.iter().map(|&x| x as u32).sum::<u32>();
            assert!([1, 2, 3, 4, 6, 8, 12, 16, 24, 48].contains(&order), "{}", a.0);
            for b in &POINT_GROUPS[i + 1..] {
                assert_ne!(a.1, b.1);
            }
        }
    }
}
