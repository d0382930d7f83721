//! The 17 plane groups as orbifold presentations with planar realizations.
//!
//! Data lives in `data/presentations.tsv`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::linalg::{Affine2, Q};
use crate::word::Word;
use crate::{tsv, Error, Result};

pub const PRESENTATIONS: &str = include_str!("../data/presentations.tsv");
const FILE: &str = "presentations.tsv";

pub const BASE_IDS: [&str; 17] = [
    "*632", "632", "*442", "4*2", "442", "*333", "3*3", "333", "*2222", "2*22", "22*", "22x", "2222", "**", "*x",
    "xx", "o",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Reflection,
    Gyration,
    Translation,
    Crosscap,
    Handle,
}

impl GeneratorKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "reflection" => GeneratorKind::Reflection,
            "gyration" => GeneratorKind::Gyration,
            "translation" => GeneratorKind::Translation,
            "crosscap" => GeneratorKind::Crosscap,
            "handle" => GeneratorKind::Handle,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub kind: GeneratorKind,
    pub realization: Affine2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feature {
    Gyration { order: u8, word: Word },
    /// `lambda` is the boundary loop, `closing` the mirror after the last one
    /// when the string is not closed up by the first mirror.
    Kaleidoscope { lambda: Option<Word>, mirrors: Vec<Word>, corners: Vec<u8>, closing: Option<Word> },
    Cross { word: Word },
    Ring { x: Word, y: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePresentation {
    pub id: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Word>,
    pub features: Vec<Feature>,
    pub symmetries: Vec<Vec<Word>>,
    /// Remaining part of the global relation, whose coupling enters the
    /// cross and ring subscripts.
    pub rest: Word,
    /// Comparison order of features and of corners when choosing a spelling.
    pub feature_order: Vec<usize>,
    pub corner_order: Vec<usize>,
}

impl BasePresentation {
    pub fn labels(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Evaluate a word in the planar realization.
    pub fn eval(&self, w: &Word) -> Affine2 {
        let mut r = Affine2::identity();
        for l in w.letters() {
            let g = self.generators[l.gen].realization;
            let g = if l.exp > 0 { g } else { g.inverse() };
            for _ in 0..l.exp.unsigned_abs() {
                r = r.mul(&g);
            }
        }
        r
    }
}

impl BasePresentation {
    /// Two independent translations of the realization, with words for them.
    pub fn translation_words(&self) -> Option<[(Word, [Q; 2]); 2]> {
        let mut seen: BTreeSet<Affine2> = BTreeSet::new();
        let mut frontier = alloc::vec![(Word::empty(), Affine2::identity())];
        seen.insert(Affine2::identity());
        let mut found: Vec<(Word, [Q; 2])> = Vec::new();
        for _ in 0..8 {
            let mut next = Vec::new();
            for (w, a) in &frontier {
                for gen in 0..self.rank() {
                    for exp in [1, -1] {
                        let l = Word(alloc::vec![crate::word::Letter { gen, exp }]);
                        let b = a.mul(&self.eval(&l));
                        if !seen.insert(b) {
                            continue;
                        }
                        let wb = w.concat(&l);
                        if b.is_translation() {
                            let independent = match found.first() {
                                None => true,
                                Some((_, t)) => t[0] * b.v[1] != t[1] * b.v[0],
                            };
                            if independent {
                                found.push((wb.clone(), b.v));
                                if found.len() == 2 {
                                    let second = found.pop()?;
                                    let first = found.pop()?;
                                    return Some([first, second]);
                                }
                            }
                        }
                        next.push((wb, b));
                    }
                }
            }
            frontier = next;
        }
        None
    }

    /// Linear part of the affine map of the plane that realizes a base
    /// symmetry, read off from its action on translations.
    pub fn symmetry_linear_part(&self, sigma: &[Word]) -> Option<[[Q; 2]; 2]> {
        let [(w1, t1), (w2, t2)] = self.translation_words()?;
        let u1 = self.eval(&w1.substitute(sigma)).v;
        let u2 = self.eval(&w2.substitute(sigma)).v;
        // L [t1 t2] = [u1 u2]
        let d = t1[0] * t2[1] - t2[0] * t1[1];
        let inv = [[t2[1] / d, -t2[0] / d], [-t1[1] / d, t1[0] / d]];
        let u = [[u1[0], u2[0]], [u1[1], u2[1]]];
        Some(core::array::from_fn(|i| core::array::from_fn(|j| u[i][0] * inv[0][j] + u[i][1] * inv[1][j])))
    }
}

fn parse_affine(m: &str, v: &str) -> Option<Affine2> {
    let m: Vec<i64> = m.split_whitespace().map(|x| x.parse().ok()).collect::<Option<_>>()?;
    let v: Vec<Q> = v
        .split_whitespace()
        .map(|x| {
            let (n, d) = x.split_once('/').unwrap_or((x, "1"));
            Some(Q::new(n.parse().ok()?, d.parse().ok()?))
        })
        .collect::<Option<_>>()?;
    if m.len() != 4 || v.len() != 2 {
        return None;
    }
    Some(Affine2::new([[m[0], m[1]], [m[2], m[3]]], [v[0], v[1]]))
}

fn opt_word(s: &str, labels: &[&str]) -> Result<Option<Word>> {
    if s == "-" {
        Ok(None)
    } else {
        Word::parse(s, labels).map(Some)
    }
}

/// Parse a presentations resource.
pub fn parse_presentations(text: &str) -> Result<Vec<BasePresentation>> {
    match tsv::version(text) {
        Some(("fibrifold-presentations", "1")) => {}
        _ => return Err(Error::Resource { file: FILE, line: 1, msg: "missing or unknown version header".into() }),
    }
    let mut out: Vec<BasePresentation> = Vec::new();
    for (line, f) in tsv::records(text) {
        let err = |msg: &str| Error::Resource { file: FILE, line, msg: msg.to_string() };
        if f[0] == "base" {
            let id = f.get(1).ok_or_else(|| err("base without id"))?;
            out.push(BasePresentation {
                id: id.to_string(),
                generators: Vec::new(),
                relations: Vec::new(),
                features: Vec::new(),
                symmetries: Vec::new(),
                rest: Word::empty(),
                feature_order: Vec::new(),
                corner_order: Vec::new(),
            });
            continue;
        }
        let b = out.last_mut().ok_or_else(|| err("record before first base"))?;
        let labels: Vec<String> = b.generators.iter().map(|g| g.label.clone()).collect();
        let labels: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let field = |i: usize| f.get(i).copied().ok_or_else(|| err("missing field"));
        let wrap = |e: Error| err(&e.to_string());
        match f[0] {
            "gen" => {
                let kind = GeneratorKind::parse(field(2)?).ok_or_else(|| err("unknown generator kind"))?;
                let realization = parse_affine(field(3)?, field(4)?).ok_or_else(|| err("bad realization"))?;
                b.generators.push(Generator { label: field(1)?.into(), kind, realization });
            }
            "rel" => b.relations.push(Word::parse(field(1)?, &labels).map_err(wrap)?),
            "gyr" => {
                let order = field(1)?.parse().map_err(|_| err("bad order"))?;
                b.features.push(Feature::Gyration { order, word: Word::parse(field(2)?, &labels).map_err(wrap)? });
            }
            "kal" => {
                let lambda = opt_word(field(1)?, &labels).map_err(wrap)?;
                let mirrors =
                    field(2)?.split(',').map(|w| Word::parse(w, &labels)).collect::<Result<Vec<_>>>().map_err(wrap)?;
                let corners = match field(3)? {
                    "-" => Vec::new(),
                    s => s.split_whitespace().map(|x| x.parse().map_err(|_| err("bad corner"))).collect::<Result<_>>()?,
                };
                let closing = opt_word(field(4)?, &labels).map_err(wrap)?;
                if !corners.is_empty() && corners.len() != mirrors.len() {
                    return Err(err("corner count differs from mirror count"));
                }
                b.features.push(Feature::Kaleidoscope { lambda, mirrors, corners, closing });
            }
            "cross" => b.features.push(Feature::Cross { word: Word::parse(field(1)?, &labels).map_err(wrap)? }),
            "ring" => b.features.push(Feature::Ring {
                x: Word::parse(field(1)?, &labels).map_err(wrap)?,
                y: Word::parse(field(2)?, &labels).map_err(wrap)?,
            }),
            "rest" => b.rest = Word::parse(field(1)?, &labels).map_err(wrap)?,
            "sym" => {
                let imgs =
                    field(1)?.split(',').map(|w| Word::parse(w, &labels)).collect::<Result<Vec<_>>>().map_err(wrap)?;
                if imgs.len() != labels.len() {
                    return Err(err("symmetry must give one image per generator"));
                }
                b.symmetries.push(imgs);
            }
            "order" => {
                let v: Vec<usize> =
                    field(2)?.split_whitespace().map(|x| x.parse().map_err(|_| err("bad index"))).collect::<Result<_>>()?;
                match field(1)? {
                    "features" => b.feature_order = v,
                    "corners" => b.corner_order = v,
                    _ => return Err(err("unknown order kind")),
                }
            }
            _ => return Err(err("unknown record type")),
        }
    }
    for b in &mut out {
        if b.feature_order.is_empty() {
            b.feature_order = (0..b.features.len()).collect();
        }
    }
    Ok(out)
}

/// All 17 presentations in table order.
pub fn all() -> Vec<BasePresentation> {
    parse_presentations(PRESENTATIONS).expect("embedded presentations are valid")
}

pub fn presentation(id: &str) -> Result<BasePresentation> {
    all().into_iter().find(|b| b.id == id).ok_or_else(|| Error::UnknownBase(id.into()))
}

pub fn base_symmetries(id: &str) -> Result<Vec<Vec<Word>>> {
    Ok(presentation(id)?.symmetries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub id: String,
    /// Indices of relations that do not evaluate to the identity.
    pub failed_relations: Vec<usize>,
    /// Indices of symmetries that send some relation to a non-identity.
    pub failed_symmetries: Vec<usize>,
    /// Two independent translations found by word search.
    pub translations: Option<([Q; 2], [Q; 2])>,
    /// The translations of the group are exactly the integer lattice.
    pub integral_lattice: bool,
}

impl RealizationReport {
    pub fn ok(&self) -> bool {
        self.failed_relations.is_empty()
            && self.failed_symmetries.is_empty()
            && self.translations.is_some()
            && self.integral_lattice
    }
}

pub fn verify_realization(id: &str) -> Result<RealizationReport> {
    Ok(verify_presentation(&presentation(id)?))
}

pub fn verify_presentation(b: &BasePresentation) -> RealizationReport {
    let failed_relations = (0..b.relations.len()).filter(|&i| !b.eval(&b.relations[i]).is_identity()).collect();
    let failed_symmetries = (0..b.symmetries.len())
        .filter(|&i| b.relations.iter().any(|r| !b.eval(&r.substitute(&b.symmetries[i])).is_identity()))
        .collect();
    let (translations, found) = search_translations(b, 8);
    let integral_lattice = found.iter().all(|t| t.iter().all(|x| x.is_integer())) && coset_check(b);
    RealizationReport { id: b.id.clone(), failed_relations, failed_symmetries, translations, integral_lattice }
}

fn search_translations(b: &BasePresentation, depth: usize) -> (Option<([Q; 2], [Q; 2])>, Vec<[Q; 2]>) {
    let mut gens: Vec<Affine2> = b.generators.iter().map(|g| g.realization).collect();
    gens.extend(b.generators.iter().map(|g| g.realization.inverse()));
    let mut seen = BTreeSet::new();
    seen.insert(Affine2::identity());
    let mut layer = alloc::vec![Affine2::identity()];
    let mut found: Vec<[Q; 2]> = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &layer {
            for h in &gens {
                let k = g.mul(h);
                if seen.insert(k) {
                    if k.is_translation() {
                        found.push(k.v);
                    }
                    next.push(k);
                }
            }
        }
        layer = next;
    }
    let mut pair = None;
    'outer: for (i, a) in found.iter().enumerate() {
        for c in &found[i + 1..] {
            if a[0] * c[1] - a[1] * c[0] != Q::from_integer(0) {
                pair = Some((*a, *c));
                break 'outer;
            }
        }
    }
    (pair, found)
}

// Distinct elements mod Z^2 must have distinct linear parts, otherwise the
// translation lattice is finer than Z^2.
fn coset_check(b: &BasePresentation) -> bool {
    let gens: Vec<Affine2> = b.generators.iter().map(|g| g.realization.mod1()).collect();
    let mut seen = BTreeSet::new();
    seen.insert(Affine2::identity());
    let mut frontier = alloc::vec![Affine2::identity()];
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let k = g.mul(h).mod1();
            if seen.insert(k) {
                if seen.len() > 64 {
                    return false;
                }
                frontier.push(k);
            }
        }
    }
    let mats: BTreeSet<_> = seen.iter().map(|g| g.m).collect();
    mats.len() == seen.len()
}

/// Underlying orbifold symbol of a feature list, used to recognise the base of a name.
pub fn symbol_of_features(f: &[Feature]) -> String {
    let mut s = String::new();
    for x in f {
        match x {
            Feature::Gyration { order, .. } => s.push_str(&format!("{order}")),
            Feature::Kaleidoscope { corners, .. } => {
                s.push('*');
                for c in corners {
                    s.push_str(&format!("{c}"));
                }
            }
            Feature::Cross { .. } => s.push('x'),
            Feature::Ring { .. } => s.push('o'),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_distinct() {
        let all = all();
        assert_eq!(all.len(), 17);
        let ids: Vec<&str> = all.iter().map(|b| b.id.as_str()).collect();
        assert_eq!(ids, BASE_IDS);
        for b in &all {
            assert_eq!(symbol_of_features(&b.features), b.id);
        }
    }

    #[test]
    fn header_examples() {
        let o = presentation("o").unwrap();
        assert_eq!(o.labels(), ["X", "Y"]);
        assert_eq!(o.relations.len(), 1);
        assert_eq!(o.relations[0].format(&o.labels()), "X^-1 Y^-1 X Y");
        let xx = presentation("xx").unwrap();
        assert_eq!(xx.relations[0].format(&xx.labels()), "Y^2 Z^2");
        let b = presentation("4*2").unwrap();
        assert_eq!(b.relations.len(), 3);
        assert!(presentation("7").is_err());
    }

    #[test]
    fn gyration_orders_appear_as_relations() {
        for b in all() {
            for f in &b.features {
                if let Feature::Gyration { order, word } = f {
                    let w = word.pow(*order as usize).expanded();
                    assert!(b.relations.iter().any(|r| r.expanded() == w), "{} {}", b.id, order);
                }
            }
        }
    }

    #[test]
    fn realizations_verify() {
        for b in all() {
            let r = verify_presentation(&b);
            assert!(r.ok(), "{:?}", r);
        }
    }

    #[test]
    fn o_translations_are_basis() {
        let o = presentation("o").unwrap();
        assert!(o.generators.iter().all(|g| g.realization.is_translation()));
        assert_eq!(o.generators[0].realization.v, [Q::from_integer(1), Q::from_integer(0)]);
    }

    #[test]
    fn corrupted_matrix_is_reported() {
        let mut b = presentation("632").unwrap();
        b.generators[0].realization.m = [[0, -1], [1, 0]];
        let r = verify_presentation(&b);
        assert!(!r.failed_relations.is_empty());
    }

    #[test]
    fn version_header_required() {
        assert!(parse_presentations("base\to\n").is_err());
    }
}
