//! Coupling assignments over a base group and their classification.
//!
//! An assignment sends each generator of the base presentation to a
//! vertical operation on the 1/12 grid. Valid assignments (the relations
//! land in the fiber kernel) are grouped by full name, which collapses the
//! free parameters, then by base symmetries and by reversing the fiber.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::basegroups::BasePresentation;
use crate::exactnum::{evaluate_grid, FiberKernel, GridOp, Sign};
use crate::notation::{full_name, reduce_name, spelling_key, FibrifoldName};
use crate::word::Word;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingAssignment {
    pub base: alloc::string::String,
    pub kernel: FiberKernel,
    pub ops: Vec<GridOp>,
}

/// Candidate operations per generator. Interval fibers only admit the two
/// translations that preserve the interval.
pub fn candidate_ops(kernel: FiberKernel) -> Vec<GridOp> {
    match kernel {
        FiberKernel::Circular => GridOp::all().collect(),
        FiberKernel::Interval => alloc::vec![GridOp::new(Sign::Plus, 0), GridOp::new(Sign::Plus, 6)],
    }
}

pub fn is_valid(base: &BasePresentation, ops: &[GridOp], kernel: FiberKernel) -> bool {
    ops.len() == base.rank()
        && base.relations.iter().all(|r| {
            let v = evaluate_grid(r.letters(), ops);
            match kernel {
                FiberKernel::Circular => v == GridOp::IDENTITY,
                FiberKernel::Interval => v.c == 0,
            }
        })
}

/// All valid assignments, in product order of [`candidate_ops`].
pub fn enumerate_raw(base: &BasePresentation, kernel: FiberKernel) -> Vec<Vec<GridOp>> {
    let cands = candidate_ops(kernel);
    let n = base.rank();
    let mut out = Vec::new();
    let mut idx = alloc::vec![0usize; n];
    loop {
        let ops: Vec<GridOp> = idx.iter().map(|&i| cands[i]).collect();
        if is_valid(base, &ops, kernel) {
            out.push(ops);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cands.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Image of an assignment under a base symmetry (generator images as words).
pub fn act(sigma: &[Word], ops: &[GridOp]) -> Vec<GridOp> {
    sigma.iter().map(|w| evaluate_grid(w.letters(), ops)).collect()
}

/// Reverse the fiber: every constant changes sign.
pub fn negate(ops: &[GridOp]) -> Vec<GridOp> {
    ops.iter().map(|o| o.negate()).collect()
}

/// Group assignments by full name. Returns the distinct names (sorted) and,
/// for every assignment, the index of its name.
pub fn collapse_isotopy(
    base: &BasePresentation,
    raw: &[Vec<GridOp>],
    kernel: FiberKernel,
) -> Result<(Vec<FibrifoldName>, Vec<usize>)> {
    let mut names = BTreeMap::new();
    let mut full = Vec::with_capacity(raw.len());
    for a in raw {
        let n = full_name(base, a, kernel)?;
        full.push(n.clone());
        names.insert(n, 0usize);
    }
    for (i, v) in names.values_mut().enumerate() {
        *v = i;
    }
    let idx = full.iter().map(|n| names[n]).collect();
    Ok((names.into_keys().collect(), idx))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Class of each full name under base symmetries and fiber reversal.
pub fn reduce_by_symmetry(
    base: &BasePresentation,
    symmetries: &[Vec<Word>],
    raw: &[Vec<GridOp>],
    name_of: &[usize],
    n_names: usize,
) -> Result<Vec<usize>> {
    let pos: BTreeMap<&[GridOp], usize> = raw.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let mut uf = UnionFind((0..n_names).collect());
    for (i, a) in raw.iter().enumerate() {
        let mut images: Vec<Vec<GridOp>> = symmetries.iter().map(|s| act(s, a)).collect();
        images.push(negate(a));
        for b in images {
            let j = *pos.get(b.as_slice()).ok_or_else(|| Error::NotHomomorphism(base.id.clone()))?;
            uf.union(name_of[i], name_of[j]);
        }
    }
    let mut label = BTreeMap::new();
    let mut out = Vec::with_capacity(n_names);
    for k in 0..n_names {
        let r = uf.find(k);
        let next = label.len();
        out.push(*label.entry(r).or_insert(next));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FibrationClass {
    /// The chosen spelling.
    pub name: FibrifoldName,
    /// Every reduced spelling of the class, sorted.
    pub spellings: Vec<FibrifoldName>,
    /// Full names in the class.
    pub full_names: Vec<FibrifoldName>,
    /// An assignment whose reduced name is `name`.
    pub representative: Vec<GridOp>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub base: alloc::string::String,
    pub kernel: FiberKernel,
    pub raw_count: usize,
    pub full_name_count: usize,
    pub classes: Vec<FibrationClass>,
    full_index: BTreeMap<FibrifoldName, usize>,
}

impl Classification {
    /// Class of an assignment, by its full name.
    pub fn class_of(&self, base: &BasePresentation, ops: &[GridOp]) -> Result<&FibrationClass> {
        let n = full_name(base, ops, self.kernel)?;
        self.full_index
            .get(&n)
            .map(|&i| &self.classes[i])
            .ok_or_else(|| Error::NotHomomorphism(base.id.clone()))
    }
}

pub fn classify(base: &BasePresentation, kernel: FiberKernel) -> Result<Classification> {
    classify_with(base, kernel, &base.symmetries)
}

/// Classification using only the given base symmetries (fiber reversal is
/// always applied). Over 22x with no symmetries there are 14 classes.
pub fn classify_with(base: &BasePresentation, kernel: FiberKernel, symmetries: &[Vec<Word>]) -> Result<Classification> {
    let raw = enumerate_raw(base, kernel);
    let (names, name_of) = collapse_isotopy(base, &raw, kernel)?;
    let orbit = reduce_by_symmetry(base, symmetries, &raw, &name_of, names.len())?;
    let index: BTreeMap<FibrifoldName, usize> = names.iter().cloned().zip(orbit.iter().copied()).collect();
    let n_classes = orbit.iter().max().map_or(0, |m| m + 1);
    let lookup = |n: &FibrifoldName| index.get(n).copied();
    let reduced: Vec<FibrifoldName> = names.iter().map(|n| reduce_name(n, lookup)).collect();

    let mut classes = Vec::with_capacity(n_classes);
    for k in 0..n_classes {
        let members: Vec<usize> = (0..names.len()).filter(|&i| orbit[i] == k).collect();
        let mut spellings: Vec<FibrifoldName> = members.iter().map(|&i| reduced[i].clone()).collect();
        spellings.sort();
        spellings.dedup();
        let name = spellings.iter().min_by_key(|n| spelling_key(base, n)).cloned().expect("nonempty class");
        let rep_name = members.iter().find(|&&i| reduced[i] == name).copied().expect("spelling has a source");
        let representative = raw[name_of.iter().position(|&x| x == rep_name).expect("name has an assignment")].clone();
        classes.push(FibrationClass {
            name,
            spellings,
            full_names: members.iter().map(|&i| names[i].clone()).collect(),
            representative,
        });
    }
    Ok(Classification {
        base: base.id.clone(),
        kernel,
        raw_count: raw.len(),
        full_name_count: names.len(),
        classes,
        full_index: index,
    })
}

/// The chosen spelling of the class containing an assignment.
pub fn name_assignment(base: &BasePresentation, ops: &[GridOp], kernel: FiberKernel) -> Result<FibrifoldName> {
    if !is_valid(base, ops, kernel) {
        return Err(Error::NotHomomorphism(base.id.clone()));
    }
    Ok(classify(base, kernel)?.class_of(base, ops)?.name.clone())
}
