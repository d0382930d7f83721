use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{normalize, point_group_of, Normalized, SpaceGroup};
use crate::linalg::{det, identity, int_inv, mat_mul, mat_vec, trace, Mat, Q};
use crate::{Error, Result};

pub const FINGERPRINT_LEVELS: [i64; 5] = [1, 2, 3, 4, 6];

/// The finite group G / nL, elements as (lattice linear part, translation mod n).
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    pub n: i64,
    pub elements: Vec<(Mat<3>, [Q; 3])>,
    index: BTreeMap<(Mat<3>, [Q; 3]), usize>,
}

impl FiniteQuotient {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn reduce(&self, v: [Q; 3]) -> [Q; 3] {
        let n = Q::from_integer(self.n);
        v.map(|x| x - (x / n).floor() * n)
    }

    /// Index of the product of elements `a` and `b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let (ma, va) = &self.elements[a];
        let (mb, vb) = &self.elements[b];
        let mut v = mat_vec(ma, vb);
        for k in 0..3 {
            v[k] += va[k];
        }
        self.index[&(mat_mul(ma, mb), self.reduce(v))]
    }

    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.product(a, b)).collect()).collect()
    }
}

fn enumerate(norm: &Normalized, n: i64) -> Vec<(Mat<3>, [Q; 3])> {
    let mut out = Vec::new();
    for c in &norm.cosets {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let w = [x, y, z];
                    out.push((c.lattice_linear, core::array::from_fn(|k| c.lattice_shift[k] + Q::from_integer(w[k]))));
                }
            }
        }
    }
    out
}

pub fn finite_quotient(g: &SpaceGroup, n: i64) -> Result<FiniteQuotient> {
    if n < 1 {
        return Err(Error::Realization("quotient level must be positive".into()));
    }
    let norm = normalize(g)?;
    let elements = enumerate(&norm, n);
    let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    Ok(FiniteQuotient { n, elements, index })
}

/// Invariants of one quotient G / nL.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level {
    pub n: i64,
    pub order: usize,
    /// (element order, count), sorted by order.
    pub orders: Vec<(i64, usize)>,
    /// Number of orientation-reversing elements.
    pub improper: usize,
    /// Conjugacy classes as ((det, trace) of the linear part, element order,
    /// class size, number of such classes), sorted.
    pub classes: Vec<((i64, i64), i64, usize, usize)>,
    /// Order of the derived subgroup.
    pub derived_order: usize,
    /// (order modulo the derived subgroup, count), sorted.
    pub abelian_orders: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub point_group: String,
    pub levels: Vec<Level>,
    /// Fingerprints of the subgroups of index 2, sorted.
    pub subgroups: Vec<Fingerprint>,
}

fn linear_order(a: &Mat<3>) -> i64 {
    let mut p = *a;
    let mut k = 1;
    while p != identity() {
        p = mat_mul(&p, a);
        k += 1;
    }
    k
}

fn reduce_mod(v: [Q; 3], n: i64) -> [Q; 3] {
    let n = Q::from_integer(n);
    v.map(|x| x - (x / n).floor() * n)
}

fn level(norm: &Normalized, n: i64) -> Result<Level> {
    // Elements (linear part, translation mod n) with their orders.
    let mut elements: Vec<(Mat<3>, [Q; 3])> = Vec::new();
    let mut orders: Vec<i64> = Vec::new();
    for c in &norm.cosets {
        let a = c.lattice_linear;
        let m = linear_order(&a);
        // S = I + A + ... + A^(m-1); g^m is the translation S (t + w).
        let mut s = [[0i64; 3]; 3];
        let mut p = identity::<3>();
        for _ in 0..m {
            for i in 0..3 {
                for j in 0..3 {
                    s[i][j] += p[i][j];
                }
            }
            p = mat_mul(&p, &a);
        }
        let base = mat_vec(&s, &c.lattice_shift);
        if base.iter().any(|x| !x.is_integer()) {
            return Err(Error::Realization("power of a lift is not a lattice translation".into()));
        }
        let base = base.map(|x| x.to_integer());
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t: [i64; 3] = core::array::from_fn(|i| base[i] + s[i][0] * x + s[i][1] * y + s[i][2] * z);
                    let g = t.iter().fold(n, |g, v| g.gcd(v));
                    orders.push(m * (n / g));
                    let w = [x, y, z];
                    elements.push((a, core::array::from_fn(|k| c.lattice_shift[k] + Q::from_integer(w[k]))));
                }
            }
        }
    }
    let index: BTreeMap<(Mat<3>, [Q; 3]), usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();

    // Conjugacy classes: orbits under the coset lifts and the unit translations.
    let mut conj: Vec<(Mat<3>, [Q; 3])> = norm.cosets.iter().map(|c| (c.lattice_linear, c.lattice_shift)).collect();
    for k in 0..3 {
        let mut e = [Q::from_integer(0); 3];
        e[k] = Q::from_integer(1);
        conj.push((identity(), e));
    }
    let conj: Vec<((Mat<3>, [Q; 3]), Mat<3>)> = conj
        .into_iter()
        .map(|(a, v)| ((a, v), int_inv(&a).expect("unimodular linear part")))
        .collect();
    let mut class = alloc::vec![usize::MAX; elements.len()];
    let mut sizes = Vec::new();
    for start in 0..elements.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        class[start] = id;
        let mut stack = alloc::vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            let (b, w) = &elements[i];
            for ((a, v), ai) in &conj {
                // (A,v)(B,w)(A,v)^-1 = (A B A^-1, A w + v - A B A^-1 v)
                let m = mat_mul(&mat_mul(a, b), ai);
                let aw = mat_vec(a, w);
                let mv = mat_vec(&m, v);
                let t = reduce_mod(core::array::from_fn(|k| aw[k] + v[k] - mv[k]), n);
                let j = *index.get(&(m, t)).ok_or_else(|| Error::Realization("conjugate left the quotient".into()))?;
                if class[j] == usize::MAX {
                    class[j] = id;
                    stack.push(j);
                }
            }
        }
        sizes.push((start, size));
    }

    // Derived subgroup: normal closure of the commutators of the generators.
    let mul = |x: &(Mat<3>, [Q; 3]), y: &(Mat<3>, [Q; 3])| -> (Mat<3>, [Q; 3]) {
        let v = mat_vec(&x.0, &y.1);
        (mat_mul(&x.0, &y.0), reduce_mod(core::array::from_fn(|k| v[k] + x.1[k]), n))
    };
    let inv = |x: &(Mat<3>, [Q; 3]), ai: &Mat<3>| -> (Mat<3>, [Q; 3]) {
        let v = mat_vec(ai, &x.1);
        (*ai, reduce_mod(v.map(|t| -t), n))
    };
    let gens: Vec<(Mat<3>, [Q; 3])> = conj.iter().map(|(g, _)| (g.0, reduce_mod(g.1, n))).collect();
    let ginv: Vec<(Mat<3>, [Q; 3])> = conj.iter().map(|(g, ai)| inv(&(g.0, reduce_mod(g.1, n)), ai)).collect();
    let mut comms: BTreeSet<usize> = BTreeSet::new();
    for i in 0..gens.len() {
        for j in 0..i {
            let c = mul(&mul(&gens[i], &gens[j]), &mul(&ginv[i], &ginv[j]));
            comms.insert(*index.get(&c).ok_or_else(|| Error::Realization("commutator left the quotient".into()))?);
        }
    }
    let comms: Vec<usize> = comms.into_iter().collect();
    let e = index[&(identity(), [Q::from_integer(0); 3])];
    let mut derived = alloc::vec![false; elements.len()];
    derived[e] = true;
    let mut stack = alloc::vec![e];
    while let Some(i) = stack.pop() {
        let x = elements[i];
        let next = comms
            .iter()
            .map(|&c| mul(&x, &elements[c]))
            .chain(gens.iter().zip(&ginv).map(|(g, gi)| mul(&mul(g, &x), gi)));
        for y in next {
            let j = index[&y];
            if !derived[j] {
                derived[j] = true;
                stack.push(j);
            }
        }
    }
    let derived_order = derived.iter().filter(|&&d| d).count();
    let mut abelian: BTreeMap<i64, usize> = BTreeMap::new();
    for x in &elements {
        let mut p = *x;
        let mut k = 1;
        while !derived[index[&p]] {
            p = mul(&p, x);
            k += 1;
        }
        *abelian.entry(k).or_default() += 1;
    }

    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    let mut improper = 0;
    for (i, (a, _)) in elements.iter().enumerate() {
        *hist.entry(orders[i]).or_default() += 1;
        if det(a) < 0 {
            improper += 1;
        }
    }
    let mut classes: BTreeMap<((i64, i64), i64, usize), usize> = BTreeMap::new();
    for &(rep, size) in &sizes {
        let a = &elements[rep].0;
        *classes.entry(((det(a), trace(a)), orders[rep], size)).or_default() += 1;
    }
    Ok(Level {
        n,
        order: elements.len(),
        orders: hist.into_iter().collect(),
        improper,
        classes: classes.into_iter().map(|((k, o, s), c)| (k, o, s, c)).collect(),
        derived_order,
        abelian_orders: abelian.into_iter().collect(),
    })
}

type Element = (Mat<3>, [Q; 3]);

fn product_mod(x: &Element, y: &Element, n: i64) -> Element {
    let v = mat_vec(&x.0, &y.1);
    (mat_mul(&x.0, &y.0), reduce_mod(core::array::from_fn(|k| v[k] + x.1[k]), n))
}

fn inverse_mod(x: &Element, n: i64) -> Element {
    let ai = int_inv(&x.0).expect("unimodular linear part");
    (ai, reduce_mod(mat_vec(&ai, &x.1).map(|t| -t), n))
}

/// The subgroups of index 2, in lattice coordinates. They all contain 2L, so
/// they are the hyperplanes of G/2L modulo commutators and squares.
pub fn index_two_subgroups(norm: &Normalized) -> Result<Vec<SpaceGroup>> {
    let n = 2;
    let elements = enumerate(norm, n);
    let index: BTreeMap<Element, usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let at = |x: &Element| index.get(x).copied().ok_or_else(|| Error::Realization("element left G/2L".into()));
    let mut gens: Vec<Element> = norm.cosets.iter().map(|c| (c.lattice_linear, c.lattice_shift)).collect();
    for k in 0..3 {
        let mut e = [Q::from_integer(0); 3];
        e[k] = Q::from_integer(1);
        gens.push((identity(), e));
    }
    let ginv: Vec<Element> = gens.iter().map(|g| inverse_mod(g, n)).collect();
    let mut seeds = BTreeSet::new();
    for i in 0..gens.len() {
        seeds.insert(at(&product_mod(&gens[i], &gens[i], n))?);
        for j in 0..i {
            let c = product_mod(&product_mod(&gens[i], &gens[j], n), &product_mod(&ginv[i], &ginv[j], n), n);
            seeds.insert(at(&c)?);
        }
    }
    let e = at(&(identity(), [Q::from_integer(0); 3]))?;
    let mut frattini = alloc::vec![false; elements.len()];
    frattini[e] = true;
    let mut stack = alloc::vec![e];
    while let Some(i) = stack.pop() {
        let x = elements[i];
        let next: Vec<Element> = seeds
            .iter()
            .map(|&c| product_mod(&x, &elements[c], n))
            .chain(gens.iter().zip(&ginv).map(|(g, gi)| product_mod(&product_mod(g, &x, n), gi, n)))
            .collect();
        for y in next {
            let j = at(&y)?;
            if !frattini[j] {
                frattini[j] = true;
                stack.push(j);
            }
        }
    }
    let phi: Vec<usize> = (0..elements.len()).filter(|&i| frattini[i]).collect();
    // Coset of every element, then F2 coordinates of the cosets.
    let mut coset = alloc::vec![usize::MAX; elements.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..elements.len() {
        if coset[i] != usize::MAX {
            continue;
        }
        for &f in &phi {
            coset[at(&product_mod(&elements[i], &elements[f], n))?] = reps.len();
        }
        reps.push(i);
    }
    let mut coord: BTreeMap<usize, u64> = BTreeMap::new();
    coord.insert(coset[e], 0);
    let mut rank = 0;
    for g in &gens {
        let cg = coset[at(g)?];
        if coord.contains_key(&cg) {
            continue;
        }
        if rank >= 63 {
            return Err(Error::Overflow(63));
        }
        let bit = 1u64 << rank;
        rank += 1;
        let span: Vec<(usize, u64)> = coord.iter().map(|(&c, &v)| (c, v)).collect();
        for (c, v) in span {
            let y = product_mod(&elements[reps[c]], &elements[reps[cg]], n);
            coord.insert(coset[at(&y)?], v | bit);
        }
    }
    if coord.len() != reps.len() {
        return Err(Error::Realization("generators do not span G/2L".into()));
    }
    let mut out = Vec::new();
    for f in 1..(1u64 << rank) {
        let mut generators: Vec<crate::linalg::Affine3> = elements
            .iter()
            .enumerate()
            .filter(|&(i, _)| (coord[&coset[i]] & f).count_ones().is_multiple_of(2))
            .map(|(_, (m, v))| crate::linalg::Affine3::new(*m, *v))
            .collect();
        for k in 0..3 {
            let mut t = [Q::from_integer(0); 3];
            t[k] = Q::from_integer(2);
            generators.push(crate::linalg::Affine3::translation(t));
        }
        out.push(SpaceGroup { generators, label: alloc::format!("index 2 subgroup {f}") });
    }
    Ok(out)
}

pub const SUBGROUP_LEVELS: [i64; 4] = [1, 2, 3, 4];

pub fn fingerprint(g: &SpaceGroup) -> Result<Fingerprint> {
    let norm = normalize(g)?;
    let mut fp = fingerprint_of(&norm, &FINGERPRINT_LEVELS)?;
    let mut subs = index_two_subgroups(&norm)?
        .iter()
        .map(|h| fingerprint_with(h, &SUBGROUP_LEVELS))
        .collect::<Result<Vec<_>>>()?;
    subs.sort();
    fp.subgroups = subs;
    Ok(fp)
}

/// Quotient invariants at the given levels, without subgroups.
pub fn fingerprint_with(g: &SpaceGroup, levels: &[i64]) -> Result<Fingerprint> {
    fingerprint_of(&normalize(g)?, levels)
}

fn fingerprint_of(norm: &Normalized, levels: &[i64]) -> Result<Fingerprint> {
    let point_group = point_group_of(norm)?;
    let levels = levels.iter().map(|&n| level(norm, n)).collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint { point_group: point_group.into(), levels, subgroups: Vec::new() })
}
