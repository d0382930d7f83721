//! The 35 irreducible groups, built from signed permutations of the four
//! cosets of the face-centered lattice inside the body-centered lattice.
//!
//! Coordinates are cubic. Points of the body-centered lattice are kept as
//! doubled integer vectors ("halves"), all even or all odd.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{det, mat_mul, Affine3, Mat, Q};
use crate::realization::SpaceGroup;
use crate::{Error, Result};

type Perm = [u8; 4];

/// A permutation of the cosets 0..3 with a sign (the sign says whether the
/// two classes of tetrahedra are kept or swapped).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    pub minus: bool,
    pub perm: Perm,
}

fn cycles(cs: &[&[u8]]) -> Perm {
    let mut p = [0, 1, 2, 3];
    for c in cs {
        for i in 0..c.len() {
            p[c[i] as usize] = c[(i + 1) % c.len()];
        }
    }
    p
}

/// The dihedral group of order 8 acting on the cosets.
pub fn d8() -> [Perm; 8] {
    [
        cycles(&[]),
        cycles(&[&[0, 2], &[1, 3]]),
        cycles(&[&[0, 1, 2, 3]]),
        cycles(&[&[0, 3, 2, 1]]),
        cycles(&[&[1, 3]]),
        cycles(&[&[0, 2]]),
        cycles(&[&[0, 1], &[2, 3]]),
        cycles(&[&[0, 3], &[1, 2]]),
    ]
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm { minus: false, perm: [0, 1, 2, 3] };

    pub fn new(minus: bool, perm: Perm) -> Self {
        SignedPerm { minus, perm }
    }

    /// `self` after `o`.
    pub fn compose(self, o: SignedPerm) -> SignedPerm {
        let mut p = [0; 4];
        for i in 0..4 {
            p[i] = self.perm[o.perm[i] as usize];
        }
        SignedPerm { minus: self.minus != o.minus, perm: p }
    }

    pub fn inverse(self) -> SignedPerm {
        let mut p = [0; 4];
        for i in 0..4 {
            p[self.perm[i] as usize] = i as u8;
        }
        SignedPerm { minus: self.minus, perm: p }
    }

    pub fn is_positive(self) -> bool {
        !self.minus
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.minus { "-" } else { "+" })?;
        let mut seen = [false; 4];
        let mut any = false;
        for s in 0..4 {
            if seen[s] || self.perm[s] as usize == s {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{i}")?;
                i = self.perm[i] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

pub fn g8() -> Vec<SignedPerm> {
    d8().iter().map(|&p| SignedPerm::new(false, p)).collect()
}

pub fn g16() -> Vec<SignedPerm> {
    let mut v = g8();
    v.extend(d8().iter().map(|&p| SignedPerm::new(true, p)));
    v
}

fn closure(gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let mut s = BTreeSet::new();
    s.insert(SignedPerm::IDENTITY);
    let mut frontier = alloc::vec![SignedPerm::IDENTITY];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x.compose(g);
            if s.insert(y) {
                frontier.push(y);
            }
        }
    }
    s.into_iter().collect()
}

/// A conjugacy class of subgroups; `rep` is the lexicographically least
/// member (each member is a sorted element list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub rep: Vec<SignedPerm>,
    pub members: Vec<Vec<SignedPerm>>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.len()
    }
}

/// All subgroups of `group` up to conjugacy, ordered by (order, rep).
pub fn subgroup_classes(group: &[SignedPerm]) -> Vec<SubgroupClass> {
    let mut subs = BTreeSet::new();
    for a in 0..group.len() {
        for b in a..group.len() {
            for c in b..group.len() {
                subs.insert(closure(&[group[a], group[b], group[c]]));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted: Vec<Vec<SignedPerm>> = subs.into_iter().collect();
    sorted.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    for s in sorted {
        if seen.contains(&s) {
            continue;
        }
        let mut members = BTreeSet::new();
        for &g in group {
            let mut c: Vec<SignedPerm> = s.iter().map(|&x| g.compose(x).compose(g.inverse())).collect();
            c.sort();
            members.insert(c);
        }
        for m in &members {
            seen.insert(m.clone());
        }
        let members: Vec<_> = members.into_iter().collect();
        out.push(SubgroupClass { rep: members[0].clone(), members });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// All elements positive: `N^d`.
    Plain,
    /// Contains -1: `N^d:2`.
    Double,
    /// Signs split along an index 2 subgroup: `N^{de}`.
    Mixed,
    /// Line-preserving subgroup of index 4: `N^d/4`.
    Quarter,
}

fn in_c4(p: &Perm) -> bool {
    let c4 = [cycles(&[]), cycles(&[&[0, 1, 2, 3]]), cycles(&[&[0, 2], &[1, 3]]), cycles(&[&[0, 3, 2, 1]])];
    c4.contains(p)
}

fn decoration(perms: &[Perm]) -> char {
    if perms.len() == 8 || perms.iter().all(in_c4) {
        return 'o';
    }
    let odd = perms.iter().filter(|p| !in_c4(p)).all(|p| p.iter().enumerate().filter(|&(i, &x)| i as u8 != x).count() == 2);
    if odd {
        '-'
    } else {
        '+'
    }
}

fn perms_of(k: &[SignedPerm]) -> Vec<Perm> {
    let s: BTreeSet<Perm> = k.iter().map(|x| x.perm).collect();
    s.into_iter().collect()
}

/// Family of a subgroup of G16 (quarter groups are not detectable from the
/// subgroup alone and are never returned).
pub fn family_of(k: &[SignedPerm]) -> Family {
    if k.contains(&SignedPerm::new(true, [0, 1, 2, 3])) {
        Family::Double
    } else if k.iter().all(|x| x.is_positive()) {
        Family::Plain
    } else {
        Family::Mixed
    }
}

/// Name of a subgroup class in the given family, e.g. `4^o-`, `2^+:2`, `1^o/4`.
pub fn name_of_class(k: &[SignedPerm], family: Family) -> Result<String> {
    let actual = family_of(k);
    let ok = actual == family || (family == Family::Quarter && actual == Family::Plain);
    if !ok {
        return Err(Error::Irreducible(format!("subgroup of order {} is not in family {family:?}", k.len())));
    }
    let p = perms_of(k);
    let h: Vec<Perm> = k.iter().filter(|x| x.is_positive()).map(|x| x.perm).collect();
    Ok(match family {
        Family::Double => format!("{}^{}:2", p.len(), decoration(&p)),
        Family::Plain => format!("{}^{}", p.len(), decoration(&p)),
        Family::Quarter => format!("{}^{}/4", p.len(), decoration(&p)),
        Family::Mixed => format!("{}^{}{}", p.len(), decoration(&h), decoration(&p)),
    })
}

#[derive(Debug, Clone)]
pub struct IrreducibleClass {
    pub name: String,
    pub family: Family,
    pub subgroup: SubgroupClass,
}

/// The 35 irreducible groups: 27 full groups (one per class of subgroups of
/// G16) and 8 quarter groups (one per class of subgroups of G8).
pub fn irreducible_classes() -> Vec<IrreducibleClass> {
    let mut out = Vec::new();
    for c in subgroup_classes(&g16()) {
        let family = family_of(&c.rep);
        let name = name_of_class(&c.rep, family).expect("family matches");
        out.push(IrreducibleClass { name, family, subgroup: c });
    }
    for c in subgroup_classes(&g8()) {
        let name = name_of_class(&c.rep, Family::Quarter).expect("positive");
        out.push(IrreducibleClass { name, family: Family::Quarter, subgroup: c });
    }
    out
}

pub fn irreducible_names() -> Vec<String> {
    irreducible_classes().into_iter().map(|c| c.name).collect()
}

// ---- the lattice model

/// An isometry preserving the body-centered lattice, modulo 2Z^3:
/// linear part a signed permutation matrix, translation in halves mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BccIsometry {
    pub linear: Mat<3>,
    pub halves: [i64; 3],
}

impl BccIsometry {
    pub fn new(linear: Mat<3>, halves: [i64; 3]) -> Self {
        BccIsometry { linear, halves: halves.map(|x| x.rem_euclid(4)) }
    }

    pub fn mul(&self, o: &BccIsometry) -> BccIsometry {
        let m = mat_mul(&self.linear, &o.linear);
        let w = int_mat_vec(&self.linear, &o.halves);
        BccIsometry::new(m, [w[0] + self.halves[0], w[1] + self.halves[1], w[2] + self.halves[2]])
    }

    pub fn inverse(&self) -> BccIsometry {
        let mut t = [[0; 3]; 3];
        for (i, row) in self.linear.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                t[j][i] = x;
            }
        }
        let w = int_mat_vec(&t, &self.halves);
        BccIsometry::new(t, [-w[0], -w[1], -w[2]])
    }

    fn image_halves(&self, p: &[i64; 3]) -> [i64; 3] {
        let w = int_mat_vec(&self.linear, p);
        [w[0] + self.halves[0], w[1] + self.halves[1], w[2] + self.halves[2]].map(|x| x.rem_euclid(4))
    }

    pub fn to_affine(&self) -> Affine3 {
        Affine3::new(self.linear, self.halves.map(|h| Q::new(h, 2)))
    }

    /// Reduce an affine map with signed-permutation linear part and
    /// translation in the body-centered lattice.
    pub fn from_affine(g: &Affine3) -> Result<BccIsometry> {
        let mut h = [0i64; 3];
        for i in 0..3 {
            let x = g.v[i] * Q::from_integer(2);
            if !x.is_integer() {
                return Err(Error::Irreducible(format!("translation {:?} not in the lattice", g.v)));
            }
            h[i] = x.to_integer();
        }
        if !(h.iter().all(|x| x % 2 == 0) || h.iter().all(|x| x % 2 != 0)) || !is_signed_perm(&g.m) {
            return Err(Error::Irreducible("not a lattice symmetry".into()));
        }
        Ok(BccIsometry::new(g.m, h))
    }
}

fn int_mat_vec(a: &Mat<3>, v: &[i64; 3]) -> [i64; 3] {
    let mut out = [0; 3];
    for i in 0..3 {
        out[i] = (0..3).map(|j| a[i][j] * v[j]).sum();
    }
    out
}

fn is_signed_perm(a: &Mat<3>) -> bool {
    (0..3).all(|i| a[i].iter().filter(|&&x| x != 0).count() == 1 && a[i].iter().all(|&x| x.abs() <= 1))
        && (0..3).all(|j| (0..3).filter(|&i| a[i][j] != 0).count() == 1)
}

/// The 48 signed permutation matrices.
pub fn cubic_linear_parts() -> Vec<Mat<3>> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in perms {
        for s in 0..8 {
            let mut m = [[0; 3]; 3];
            for i in 0..3 {
                m[i][p[i]] = if s >> i & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Representatives of the body-centered lattice modulo 2Z^3, in halves.
pub fn lattice_points() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for odd in [0, 1] {
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    out.push([2 * x + odd, 2 * y + odd, 2 * z + odd]);
                }
            }
        }
    }
    out
}

const COSET_POINTS: [[i64; 3]; 4] = [[0, 0, 0], [1, 1, -1], [2, 0, 0], [1, 1, 1]];

/// Coset of a lattice point: twice the coordinate sum mod 4.
fn coset(h: &[i64; 3]) -> u8 {
    (h[0] + h[1] + h[2]).rem_euclid(4) as u8
}

/// The signed permutation induced on the four cosets.
pub fn induced_signed_perm(g: &BccIsometry) -> SignedPerm {
    let mut perm = [0u8; 4];
    for (k, p) in COSET_POINTS.iter().enumerate() {
        perm[k] = coset(&g.image_halves(p));
    }
    // A colored tetrahedron keeps its class iff the orientation of its
    // vertices, listed by color, is kept.
    let odd = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count() % 2 == 1;
    SignedPerm { minus: (det(&g.linear) < 0) != odd, perm }
}

/// Direction of the diagonal line through a lattice point.
pub fn line_direction(h: &[i64; 3]) -> [i64; 3] {
    let [x, y, z] = h.map(|v| v.rem_euclid(4));
    let integer = x % 2 == 0;
    // Which coordinate differs from the other two (mod 2 in real coordinates).
    let odd_one = if x == y && y == z {
        None
    } else if y == z {
        Some(0)
    } else if x == z {
        Some(1)
    } else {
        Some(2)
    };
    match (integer, odd_one) {
        (_, None) => [1, 1, 1],
        (true, Some(1)) | (false, Some(2)) => [-1, 1, 1],
        (true, Some(2)) | (false, Some(0)) => [1, -1, 1],
        (true, Some(0)) | (false, Some(1)) => [1, 1, -1],
        _ => unreachable!(),
    }
}

pub fn preserves_lines(g: &BccIsometry) -> bool {
    lattice_points().iter().all(|p| {
        let d = int_mat_vec(&g.linear, &line_direction(p));
        let e = line_direction(&g.image_halves(p));
        d == e || d == e.map(|x| -x)
    })
}

fn all_isometries() -> Vec<BccIsometry> {
    let mut out = Vec::new();
    for m in cubic_linear_parts() {
        for p in lattice_points() {
            out.push(BccIsometry::new(m, p));
        }
    }
    out
}

/// Elements (mod 2Z^3) of the group belonging to a class.
pub fn elements(class: &IrreducibleClass) -> Vec<BccIsometry> {
    elements_for(&class.subgroup.rep, class.family == Family::Quarter)
}

fn elements_for(k: &[SignedPerm], quarter: bool) -> Vec<BccIsometry> {
    all_isometries()
        .into_iter()
        .filter(|g| k.contains(&induced_signed_perm(g)) && (!quarter || preserves_lines(g)))
        .collect()
}

fn generate(gens: &[BccIsometry]) -> BTreeSet<BccIsometry> {
    let id = BccIsometry::new(crate::linalg::identity(), [0; 3]);
    let mut s = BTreeSet::new();
    s.insert(id);
    let mut frontier = alloc::vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if s.insert(y) {
                frontier.push(y);
            }
        }
    }
    s
}

/// A small generating set of an element list mod 2Z^3, chosen greedily.
pub fn generators_of(elems: &[BccIsometry]) -> Vec<BccIsometry> {
    let mut gens = Vec::new();
    let mut span = generate(&gens);
    for e in elems {
        if !span.contains(e) {
            gens.push(*e);
            span = generate(&gens);
        }
    }
    gens
}

pub fn find(name: &str) -> Result<IrreducibleClass> {
    irreducible_classes()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::NoSuchName(name.into()))
}

/// Explicit affine generators (cubic coordinates, lattice translations
/// by 2e_i included).
pub fn realize_irreducible(name: &str) -> Result<SpaceGroup> {
    let c = find(name)?;
    let elems = elements(&c);
    let mut gens: Vec<Affine3> = generators_of(&elems).iter().map(|g| g.to_affine()).collect();
    for i in 0..3 {
        let mut v = [Q::from_integer(0); 3];
        v[i] = Q::from_integer(2);
        gens.push(Affine3::translation(v));
    }
    Ok(SpaceGroup { generators: gens, label: c.name })
}

/// Minimal inclusions `(sub, sup, index)` among the 35 groups, up to
/// conjugacy in the normalizer of the body-centered structure.
pub fn inclusion_lattice() -> Vec<(String, String, usize)> {
    let classes = irreducible_classes();
    let sets: Vec<BTreeSet<BccIsometry>> = classes.iter().map(|c| elements(c).into_iter().collect()).collect();
    let conj_all = all_isometries();
    // Full groups contain every element inducing +1, so one conjugator per
    // signed permutation is enough when the larger group is full.
    let mut by_perm: BTreeMap<SignedPerm, BccIsometry> = BTreeMap::new();
    for g in &conj_all {
        by_perm.entry(induced_signed_perm(g)).or_insert(*g);
    }
    let per_perm: Vec<BccIsometry> = by_perm.into_values().collect();
    let n = classes.len();
    let mut leq = alloc::vec![alloc::vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b || sets[a].len() >= sets[b].len() || !sets[b].len().is_multiple_of(sets[a].len()) {
                continue;
            }
            let conj: &[BccIsometry] = if classes[b].family == Family::Quarter { &conj_all } else { &per_perm };
            leq[a][b] = conj.iter().any(|g| {
                let gi = g.inverse();
                sets[a].iter().all(|x| sets[b].contains(&g.mul(x).mul(&gi)))
            });
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if leq[a][b] && !(0..n).any(|c| leq[a][c] && leq[c][b]) {
                out.push((classes[a].name.clone(), classes[b].name.clone(), sets[b].len() / sets[a].len()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn translation(h: [i64; 3]) -> BccIsometry {
        BccIsometry::new(crate::linalg::identity(), h)
    }

    #[test]
    fn induced_examples() {
        assert_eq!(induced_signed_perm(&translation([0, 0, 0])), SignedPerm::IDENTITY);
        let t = induced_signed_perm(&translation([1, 1, 1]));
        assert_eq!(t.to_string(), "-(0321)");
        let inv = BccIsometry::new([[-1, 0, 0], [0, -1, 0], [0, 0, -1]], [0, 0, 0]);
        // Inversion preserves the diagonal lines, hence both classes.
        assert_eq!(induced_signed_perm(&inv).to_string(), "+(13)");
    }

    #[test]
    fn induced_is_homomorphism() {
        let all = all_isometries();
        for (i, a) in all.iter().enumerate().step_by(7) {
            for b in all.iter().skip(i % 5).step_by(11) {
                assert_eq!(induced_signed_perm(&a.mul(b)), induced_signed_perm(a).compose(induced_signed_perm(b)));
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(subgroup_classes(&g8()).len(), 8);
        let c = subgroup_classes(&g16());
        let count = |f| c.iter().filter(|x| family_of(&x.rep) == f).count();
        assert_eq!((count(Family::Double), count(Family::Plain), count(Family::Mixed)), (8, 8, 11));
        let names: BTreeSet<String> = irreducible_names().into_iter().collect();
        assert_eq!(names.len(), 35);
    }

    #[test]
    fn naming_examples() {
        let p = |minus, cs: &[&[u8]]| SignedPerm::new(minus, cycles(cs));
        let mut k = alloc::vec![p(false, &[]), p(false, &[&[1, 3]])];
        k.sort();
        assert_eq!(name_of_class(&k, Family::Plain).unwrap(), "2^-");
        let k = alloc::vec![p(false, &[]), p(false, &[&[0, 2], &[1, 3]]), p(false, &[&[0, 1, 2, 3]]), p(false, &[&[0, 3, 2, 1]])];
        assert_eq!(name_of_class(&k, Family::Plain).unwrap(), "4^o");
        let k = alloc::vec![p(false, &[]), p(false, &[&[0, 2], &[1, 3]]), p(true, &[&[1, 3]]), p(true, &[&[0, 2]])];
        assert_eq!(name_of_class(&k, Family::Mixed).unwrap(), "4^o-");
        assert!(name_of_class(&k, Family::Plain).is_err());
    }

    #[test]
    fn group_sizes() {
        for c in irreducible_classes() {
            let n = elements(&c).len();
            let want = if c.family == Family::Quarter { 12 } else { 48 } * c.subgroup.order();
            assert_eq!(n, want, "{}", c.name);
        }
    }

    #[test]
    fn origin_lies_on_main_diagonal() {
        assert_eq!(line_direction(&[0, 0, 0]), [1, 1, 1]);
    }

    #[test]
    fn quarter_groups_preserve_lines() {
        for c in irreducible_classes().iter().filter(|c| c.family == Family::Quarter) {
            assert!(elements(c).iter().all(preserves_lines));
        }
    }
}
