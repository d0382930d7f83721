use alloc::format;
use alloc::vec::Vec;

use super::{normalize, SpaceGroup};
use crate::linalg::{Affine3, Mat, Q};
use crate::{Error, Result};

const CYCLE: Mat<3> = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
const HALF_TURN_X: Mat<3> = [[1, 0, 0], [0, -1, 0], [0, 0, -1]];

#[derive(Debug, Clone)]
pub struct Witness {
    pub r: Affine3,
    pub s: Affine3,
    /// R S^-1 R^3 S, as a map (S applied first).
    pub element: Affine3,
    pub fixed_point: [Q; 3],
}

/// An element of order 3 built from lifts R of (x,y,z) -> (y,z,x) and S of
/// the half turn about the x axis (cubic coordinates).
pub fn order3_witness(g: &SpaceGroup) -> Result<Witness> {
    let norm = normalize(g)?;
    let lift = |m: &Mat<3>| norm.cosets.iter().find(|c| c.linear == *m).map(|c| c.lift);
    let (Some(r), Some(s)) = (lift(&CYCLE), lift(&HALF_TURN_X)) else {
        return Err(Error::Realization(format!("{}: point group lacks the cubic generators", g.label)));
    };
    let element = r.mul(&s.inverse()).mul(&r.pow(3)).mul(&s);
    let [a, b, c] = r.v;
    let fixed_point = [-b - c, Q::from_integer(0), a + c];
    if element.apply(&fixed_point) != fixed_point || !element.pow(3).is_identity() || element.is_identity() {
        return Err(Error::Realization(format!("{}: witness check failed", g.label)));
    }
    Ok(Witness { r, s, element, fixed_point })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisMode {
    /// Linear parts fixing the z axis up to sign.
    ZAxis,
    /// Linear parts fixing every coordinate axis up to sign.
    AllAxes,
}

/// The subgroup whose linear parts preserve the chosen axes.
pub fn axis_stabilizer(g: &SpaceGroup, mode: AxisMode) -> Result<SpaceGroup> {
    let norm = normalize(g)?;
    let keeps = |m: &Mat<3>| match mode {
        AxisMode::ZAxis => m[0][2] == 0 && m[1][2] == 0,
        AxisMode::AllAxes => (0..3).all(|i| (0..3).all(|j| i == j || m[i][j] == 0)),
    };
    let mut gens: Vec<Affine3> = norm.cosets.iter().filter(|c| keeps(&c.linear)).map(|c| c.lift).collect();
    gens.extend(norm.lattice_translations());
    let suffix = if mode == AxisMode::ZAxis { ":3" } else { ":6" };
    Ok(SpaceGroup { generators: gens, label: format!("{}{}", g.label, suffix) })
}
