//! Explicit affine space groups and invariants that tell them apart.

mod pointgroup;
mod quotient;
mod witness;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::basegroups::BasePresentation;
use crate::exactnum::{FiberKernel, GridOp, Sign};
use crate::linalg::{lattice_basis, rinv, rmat_vec, rmul, to_integer, to_rational, Affine3, Mat, Q};
use crate::{Error, Result};

pub use pointgroup::{point_group, point_group_of, POINT_GROUPS};
pub use quotient::{
    finite_quotient, fingerprint, fingerprint_with, index_two_subgroups, FiniteQuotient, Fingerprint, Level, FINGERPRINT_LEVELS,
    SUBGROUP_LEVELS,
};
pub use witness::{axis_stabilizer, order3_witness, AxisMode, Witness};

/// A space group given by generators (any coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceGroup {
    pub generators: Vec<Affine3>,
    pub label: String,
}

impl SpaceGroup {
    /// Generators as (matrix, translation) with translations written `p/q`.
    pub fn export(&self) -> Vec<(Mat<3>, [String; 3])> {
        self.generators
            .iter()
            .map(|g| (g.m, g.v.map(|x| if x.is_integer() { format!("{}", x.numer()) } else { format!("{}/{}", x.numer(), x.denom()) })))
            .collect()
    }
}

fn lift3(m: &Mat<2>, v: &[Q; 2], op: GridOp) -> Affine3 {
    let s = if op.sign == Sign::Plus { 1 } else { -1 };
    Affine3::new(
        [[m[0][0], m[0][1], 0], [m[1][0], m[1][1], 0], [0, 0, s]],
        [v[0], v[1], Q::new(op.c as i64, 12)],
    )
}

/// Extend the plane realization of the base by the vertical couplings.
pub fn realize_fibered(base: &BasePresentation, ops: &[GridOp], kernel: FiberKernel) -> Result<SpaceGroup> {
    if ops.len() != base.rank() {
        return Err(Error::NotHomomorphism(base.id.clone()));
    }
    let mut gens: Vec<Affine3> =
        base.generators.iter().zip(ops).map(|(g, &op)| lift3(&g.realization.m, &g.realization.v, op)).collect();
    gens.push(Affine3::translation([Q::zero(), Q::zero(), Q::from_integer(1)]));
    if kernel == FiberKernel::Interval {
        gens.push(Affine3::new([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [Q::zero(); 3]));
    }
    let label = format!("{} {}", base.id, ops.iter().map(alloc::string::ToString::to_string).collect::<Vec<_>>().join(" "));
    let g = SpaceGroup { generators: gens, label };
    check_relations(base, &g)?;
    Ok(g)
}

/// Every relation of the base must become a vertical lattice translation.
fn check_relations(base: &BasePresentation, g: &SpaceGroup) -> Result<()> {
    for r in &base.relations {
        let mut x = Affine3::identity();
        for l in r.letters() {
            x = x.mul(&g.generators[l.gen].pow(l.exp as i64));
        }
        let ok = x.m == crate::linalg::identity()
            && x.v[0].is_zero()
            && x.v[1].is_zero()
            && x.v[2].is_integer();
        // Interval relations may land on the kernel reflection instead.
        let refl = x.m == [[1, 0, 0], [0, 1, 0], [0, 0, -1]] && x.v[0].is_zero() && x.v[1].is_zero() && x.v[2].is_integer();
        if !(ok || refl) {
            return Err(Error::Realization(format!("relation of {} is {:?}", base.id, x)));
        }
    }
    Ok(())
}

/// A point-group element with its lift, in both coordinate systems.
#[derive(Debug, Clone)]
pub struct Coset {
    /// Linear part in the input coordinates.
    pub linear: Mat<3>,
    /// A lift in the input coordinates.
    pub lift: Affine3,
    /// Linear part in lattice coordinates.
    pub lattice_linear: Mat<3>,
    /// Translation of the lift in lattice coordinates, reduced into [0,1).
    pub lattice_shift: [Q; 3],
}

/// A group rewritten over its own translation lattice.
#[derive(Debug, Clone)]
pub struct Normalized {
    /// Columns are the lattice basis in input coordinates.
    pub basis: [[Q; 3]; 3],
    pub cosets: Vec<Coset>,
}

const MAX_POINT_GROUP: usize = 48;

pub fn normalize(g: &SpaceGroup) -> Result<Normalized> {
    let mut lifts: BTreeMap<Mat<3>, Affine3> = BTreeMap::new();
    let mut order = Vec::new();
    lifts.insert(crate::linalg::identity(), Affine3::identity());
    order.push(crate::linalg::identity());
    let mut translations: Vec<[Q; 3]> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let p = lifts[&order[i]];
        for s in &g.generators {
            let q = p.mul(s);
            match lifts.get(&q.m) {
                Some(t) => {
                    let tr = q.mul(&t.inverse());
                    if tr.v.iter().any(|x| !x.is_zero()) {
                        translations.push(tr.v);
                    }
                }
                None => {
                    if lifts.len() >= MAX_POINT_GROUP {
                        return Err(Error::Overflow(MAX_POINT_GROUP));
                    }
                    lifts.insert(q.m, q);
                    order.push(q.m);
                }
            }
        }
        i += 1;
    }
    let rows = lattice_basis(&translations);
    if rows.len() != 3 {
        return Err(Error::Realization(format!("{}: translation lattice has rank {}", g.label, rows.len())));
    }
    let mut basis = [[Q::zero(); 3]; 3];
    for (c, r) in rows.iter().enumerate() {
        for k in 0..3 {
            basis[k][c] = r[k];
        }
    }
    let binv = rinv(&basis).ok_or_else(|| Error::Realization("singular lattice".into()))?;
    let mut cosets = Vec::with_capacity(order.len());
    for m in order {
        let lift = lifts[&m];
        let lin = rmul(&rmul(&binv, &to_rational(&m)), &basis);
        let lattice_linear =
            to_integer(&lin).ok_or_else(|| Error::Realization(format!("{}: linear part not integral", g.label)))?;
        let shift = rmat_vec(&binv, &lift.v).map(|x| x - x.floor());
        cosets.push(Coset { linear: m, lift, lattice_linear, lattice_shift: shift });
    }
    Ok(Normalized { basis, cosets })
}

impl Normalized {
    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    /// Lattice basis vectors as translations in input coordinates.
    pub fn lattice_translations(&self) -> [Affine3; 3] {
        let col = |c: usize| Affine3::translation([self.basis[0][c], self.basis[1][c], self.basis[2][c]]);
        [col(0), col(1), col(2)]
    }

    /// Is `x` (input coordinates) an element of the group?
    pub fn contains(&self, x: &Affine3) -> bool {
        let Some(c) = self.cosets.iter().find(|c| c.linear == x.m) else {
            return false;
        };
        let d = x.mul(&c.lift.inverse());
        let binv = rinv(&self.basis).expect("basis is invertible");
        rmat_vec(&binv, &d.v).iter().all(|t| t.is_integer())
    }
}
