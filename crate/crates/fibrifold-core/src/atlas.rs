//! The catalog of 219 space groups: every fibered name and every
//! irreducible group, realized, fingerprinted and grouped.
//!
//! IT numbers and labels come from the embedded golden tables and are only
//! attached after the grouping; they never drive it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::basegroups::{all as all_bases, presentation, BasePresentation};
use crate::exactnum::{FiberKernel, GridOp, VerticalOp};
use crate::fibration::{act, classify, collapse_isotopy, enumerate_raw, negate};
use crate::irreducible::{irreducible_names, realize_irreducible};
use crate::linalg::{det, trace, Affine3, Mat, Q};
use crate::realization::{
    axis_stabilizer, fingerprint, normalize, order3_witness, point_group_of, realize_fibered, AxisMode, Fingerprint, SpaceGroup,
};
use crate::tsv::records;
use crate::{Error, Result};

const TABLE1: &str = include_str!("../data/table1.tsv");
const TABLE2A: &str = include_str!("../data/table2a.tsv");
const TABLE2B: &str = include_str!("../data/table2b.tsv");

/// A row of the table of fibered names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub base: String,
    pub name: String,
    pub couplings: Vec<VerticalOp>,
    pub kernel: FiberKernel,
    pub point_group: String,
    pub it: u16,
    pub note: String,
}

/// A row of either table of groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRow {
    pub point_group: String,
    pub primary: String,
    pub it: u16,
    pub label: String,
    pub enantiomorphic: bool,
    pub secondary: Vec<String>,
    pub note: String,
}

impl GroupRow {
    /// Secondary names carrying a suffix such as ":3", with the suffix removed.
    pub fn secondary_with(&self, suffix: &str) -> Option<&str> {
        self.secondary.iter().find_map(|s| s.strip_suffix(suffix))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTables {
    pub table1: Vec<Table1Row>,
    pub table2a: Vec<GroupRow>,
    pub table2b: Vec<GroupRow>,
}

fn bad(file: &'static str, line: usize, msg: impl Into<String>) -> Error {
    Error::Resource { file, line, msg: msg.into() }
}

fn parse_it(file: &'static str, line: usize, s: &str) -> Result<u16> {
    s.parse().map_err(|_| bad(file, line, format!("bad IT number `{s}`")))
}

fn parse_table1(text: &str) -> Result<Vec<Table1Row>> {
    const F: &str = "table1.tsv";
    let mut out = Vec::new();
    for (line, f) in records(text) {
        if f.len() < 6 {
            return Err(bad(F, line, "expected at least 6 fields"));
        }
        let couplings =
            f[2].split_whitespace().map(|s| s.parse::<VerticalOp>()).collect::<Result<Vec<_>>>()?;
        let kernel = f[3].parse().map_err(|_| bad(F, line, format!("bad fiber `{}`", f[3])))?;
        out.push(Table1Row {
            base: f[0].into(),
            name: f[1].into(),
            couplings,
            kernel,
            point_group: f[4].into(),
            it: parse_it(F, line, f[5])?,
            note: f.get(6).unwrap_or(&"").to_string(),
        });
    }
    Ok(out)
}

fn parse_groups(file: &'static str, text: &str) -> Result<Vec<GroupRow>> {
    let mut out = Vec::new();
    for (line, f) in records(text) {
        if f.len() < 5 {
            return Err(bad(file, line, "expected at least 5 fields"));
        }
        let secondary = f.get(5).map_or(Vec::new(), |s| {
            s.split(" ; ").map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
        });
        out.push(GroupRow {
            point_group: f[0].into(),
            primary: f[1].into(),
            it: parse_it(file, line, f[2])?,
            label: f[3].into(),
            enantiomorphic: match f[4] {
                "0" => false,
                "1" => true,
                x => return Err(bad(file, line, format!("bad flag `{x}`"))),
            },
            secondary,
            note: f.get(6).unwrap_or(&"").to_string(),
        });
    }
    Ok(out)
}

/// The embedded golden tables.
pub fn golden() -> Result<GoldenTables> {
    Ok(GoldenTables {
        table1: parse_table1(TABLE1)?,
        table2a: parse_groups("table2a.tsv", TABLE2A)?,
        table2b: parse_groups("table2b.tsv", TABLE2B)?,
    })
}

/// Where a realized group comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Fibered { base: String, kernel: FiberKernel, ops: Vec<GridOp> },
    Irreducible,
}

/// One unit of work: a name and how to build its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkItem {
    pub name: String,
    pub source: Source,
}

#[derive(Debug, Clone)]
pub struct Realized {
    pub name: String,
    pub source: Source,
    pub group: SpaceGroup,
    pub point_group: String,
    pub fingerprint: Fingerprint,
}

impl Realized {
    pub fn is_irreducible(&self) -> bool {
        self.source == Source::Irreducible
    }
}

/// Every fibered name over the 17 bases, then the 35 irreducible groups.
pub fn work_items() -> Result<Vec<WorkItem>> {
    let mut out = Vec::new();
    for b in all_bases() {
        for kernel in [FiberKernel::Circular, FiberKernel::Interval] {
            for c in classify(&b, kernel)?.classes {
                out.push(WorkItem {
                    name: c.name.render(),
                    source: Source::Fibered { base: b.id.clone(), kernel, ops: c.representative },
                });
            }
        }
    }
    out.extend(irreducible_names().into_iter().map(|name| WorkItem { name, source: Source::Irreducible }));
    Ok(out)
}

pub fn realize_item(item: &WorkItem) -> Result<Realized> {
    let group = match &item.source {
        Source::Fibered { base, kernel, ops } => realize_fibered(&presentation(base)?, ops, *kernel)?,
        Source::Irreducible => realize_irreducible(&item.name)?,
    };
    let point_group = point_group_of(&normalize(&group)?)?.to_string();
    let fingerprint = fingerprint(&group)?;
    Ok(Realized { name: item.name.clone(), source: item.source.clone(), group, point_group, fingerprint })
}

/// Realize every work item, in order.
pub fn realize_all() -> Result<Vec<Realized>> {
    work_items()?.iter().map(realize_item).collect()
}

/// Indices of realized groups grouped by fingerprint, ordered by first member.
pub fn partition(realized: &[Realized]) -> Vec<Vec<usize>> {
    let mut by: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, r) in realized.iter().enumerate() {
        by.entry(&r.fingerprint).or_default().push(i);
    }
    let mut parts: Vec<Vec<usize>> = by.into_values().collect();
    parts.sort();
    parts
}

/// The partition of names by IT number in the golden tables.
pub fn golden_partition(g: &GoldenTables) -> BTreeMap<u16, BTreeSet<String>> {
    let mut out: BTreeMap<u16, BTreeSet<String>> = BTreeMap::new();
    for r in &g.table1 {
        out.entry(r.it).or_default().insert(r.name.clone());
    }
    for r in &g.table2a {
        out.entry(r.it).or_default().insert(r.primary.clone());
    }
    out
}

/// The two horizontal axes: fixed line and normal of a reflection (or glide)
/// of the base.
fn base_axes(base: &BasePresentation) -> Option<[[Q; 2]; 2]> {
    let r = base.generators.iter().map(|g| g.realization.m).find(|m| m[0][0] * m[1][1] - m[0][1] * m[1][0] == -1)?;
    let column = |sign: i64| {
        [0, 1]
            .iter()
            .map(|&j| [Q::from_integer(i64::from(j == 0) + sign * r[0][j]), Q::from_integer(i64::from(j == 1) + sign * r[1][j])])
            .find(|u| u.iter().any(|x| *x.numer() != 0))
    };
    Some([column(1)?, column(-1)?])
}

/// Does `l` exchange the two axes (Some(true)) or keep them (Some(false))?
fn axis_swap(l: &[[Q; 2]; 2], axes: &[[Q; 2]; 2]) -> Option<bool> {
    let image = |u: &[Q; 2]| [l[0][0] * u[0] + l[0][1] * u[1], l[1][0] * u[0] + l[1][1] * u[1]];
    let parallel = |a: &[Q; 2], b: &[Q; 2]| a[0] * b[1] == a[1] * b[0];
    let u = image(&axes[0]);
    if parallel(&u, &axes[0]) {
        Some(false)
    } else if parallel(&u, &axes[1]) {
        Some(true)
    } else {
        None
    }
}

/// For every class over a base, whether some symmetry of the fibration
/// exchanges the two horizontal axes (those of a reflection of the base). Classes are keyed by their name.
///
/// The state (full name, parity of axis exchanges) is explored along base
/// symmetries and fiber reversal; a name is symmetric when both parities
/// reach it.
pub fn symmetric_names(base: &BasePresentation, kernel: FiberKernel) -> Result<BTreeMap<String, bool>> {
    let axes = base_axes(base).ok_or_else(|| Error::Realization(format!("{}: no reflection to fix the axes", base.id)))?;
    let mut swaps = Vec::with_capacity(base.symmetries.len());
    for s in &base.symmetries {
        let l = base
            .symmetry_linear_part(s)
            .ok_or_else(|| Error::Realization(format!("{}: no translations to measure a symmetry", base.id)))?;
        swaps.push(axis_swap(&l, &axes).ok_or_else(|| {
            Error::Realization(format!("{}: a base symmetry does not permute the coordinate axes", base.id))
        })?);
    }
    let raw = enumerate_raw(base, kernel);
    let (names, name_of) = collapse_isotopy(base, &raw, kernel)?;
    let pos: BTreeMap<&[GridOp], usize> = raw.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let mut adj: Vec<Vec<(usize, bool)>> = alloc::vec![Vec::new(); names.len()];
    for (i, a) in raw.iter().enumerate() {
        let mut images: Vec<(Vec<GridOp>, bool)> = base.symmetries.iter().zip(&swaps).map(|(s, &w)| (act(s, a), w)).collect();
        images.push((negate(a), false));
        for (b, w) in images {
            let j = *pos.get(b.as_slice()).ok_or_else(|| Error::NotHomomorphism(base.id.clone()))?;
            adj[name_of[i]].push((name_of[j], w));
            adj[name_of[j]].push((name_of[i], w));
        }
    }
    // Two-colour each component; an odd cycle means a symmetric name.
    let mut colour: Vec<Option<bool>> = alloc::vec![None; names.len()];
    let mut component = alloc::vec![usize::MAX; names.len()];
    let mut symmetric = Vec::new();
    for s in 0..names.len() {
        if colour[s].is_some() {
            continue;
        }
        let id = symmetric.len();
        let mut odd = false;
        colour[s] = Some(false);
        component[s] = id;
        let mut stack = alloc::vec![s];
        while let Some(i) = stack.pop() {
            let ci = colour[i].expect("coloured");
            for &(j, w) in &adj[i] {
                match colour[j] {
                    None => {
                        colour[j] = Some(ci ^ w);
                        component[j] = id;
                        stack.push(j);
                    }
                    Some(cj) => odd |= cj != (ci ^ w),
                }
            }
        }
        symmetric.push(odd);
    }
    let index: BTreeMap<&crate::notation::FibrifoldName, usize> = names.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut out = BTreeMap::new();
    for c in classify(base, kernel)?.classes {
        let i = index[&c.full_names[0]];
        out.insert(c.name.render(), symmetric[component[i]]);
    }
    Ok(out)
}

/// Point groups whose groups have three orthogonal fibrations.
pub const ORTHORHOMBIC: [&str; 2] = ["222", "*222"];
/// Point groups with a single canonical fiber direction.
pub const CANONICAL_DIRECTION: [&str; 4] = ["*", "22", "2*", "*22"];
/// Explicit preferences: (preferred, over).
pub const PREFERENCES: [(&str, &str); 2] = [("(2_0 2 ~*.)", "[2_1 2_1 *:]"), ("(2_0 2 ~*:)", "(2_1 2 ~*_1)")];

/// Does the fiber (the z axis) lie along the canonical direction of the point group?
pub fn along_canonical_direction(g: &SpaceGroup, point_group: &str) -> Result<bool> {
    let norm = normalize(g)?;
    let lin: Vec<Mat<3>> = norm.cosets.iter().map(|c| c.linear).collect();
    let find = |key: (i64, i64)| lin.iter().find(|m| (det(m), trace(m)) == key).copied();
    Ok(match point_group {
        // The mirror has normal z.
        "*" => find((-1, 1)).is_some_and(|m| m[2][2] == -1),
        // The half turn has axis z.
        "22" | "2*" | "*22" => find((1, -1)).is_some_and(|m| m[2][2] == 1),
        _ => return Err(Error::Alias(format!("point group {point_group} has no canonical direction"))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AliasRule {
    Unique,
    CanonicalDirection,
    Symmetric,
    Over22Star,
    Preference,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasCandidate {
    pub name: String,
    pub base: String,
    pub point_group: String,
    /// Meaningful for the orthorhombic point groups.
    pub symmetric: bool,
    /// Meaningful for point groups with a canonical direction.
    pub canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasResolution {
    pub primary: String,
    pub secondary: Vec<String>,
    pub rule: AliasRule,
}

/// Choose the primary name of one group among its fibered names.
pub fn resolve_aliases(names: &[AliasCandidate]) -> Result<AliasResolution> {
    let pick = |i: usize, rule| AliasResolution {
        primary: names[i].name.clone(),
        secondary: names.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.name.clone()).collect(),
        rule,
    };
    let unique = |f: &dyn Fn(&AliasCandidate) -> bool| {
        let hits: Vec<usize> = (0..names.len()).filter(|&i| f(&names[i])).collect();
        (hits.len() == 1).then(|| hits[0])
    };
    let all: Vec<&str> = names.iter().map(|c| c.name.as_str()).collect();
    match names {
        [] => return Err(Error::Alias("empty alias set".into())),
        [_] => return Ok(pick(0, AliasRule::Unique)),
        _ => {}
    }
    let pg = names[0].point_group.as_str();
    if names.iter().any(|c| c.point_group != pg) {
        return Err(Error::Alias(format!("{all:?} have different point groups")));
    }
    if CANONICAL_DIRECTION.contains(&pg) {
        return unique(&|c| c.canonical)
            .map(|i| pick(i, AliasRule::CanonicalDirection))
            .ok_or_else(|| Error::Alias(format!("{all:?}: no single name along the canonical direction")));
    }
    if !ORTHORHOMBIC.contains(&pg) {
        return Err(Error::Alias(format!("{all:?}: several names for point group {pg}")));
    }
    if names.len() == 2 {
        if let Some(i) = unique(&|c| c.symmetric) {
            return Ok(pick(i, AliasRule::Symmetric));
        }
    }
    if let Some(i) = unique(&|c| c.base == "22*") {
        return Ok(pick(i, AliasRule::Over22Star));
    }
    for (good, bad) in PREFERENCES {
        if let (Some(i), true) = (all.iter().position(|n| *n == good), all.contains(&bad)) {
            return Ok(pick(i, AliasRule::Preference));
        }
    }
    Err(Error::Alias(format!("{all:?}: the rules do not single out a name")))
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub it_number: u16,
    pub it_label: String,
    pub primary_name: String,
    pub secondary_names: Vec<String>,
    pub point_group: String,
    pub enantiomorphous: bool,
    pub irreducible: bool,
    /// The rule that chose the primary name (reducible groups).
    pub rule: Option<AliasRule>,
    pub fingerprint: Fingerprint,
    /// Indices into [`Catalog::realized`].
    pub members: Vec<usize>,
}

impl CatalogEntry {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        core::iter::once(self.primary_name.as_str()).chain(self.secondary_names.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub realized: Vec<Realized>,
    pub entries: Vec<CatalogEntry>,
    pub golden: GoldenTables,
    /// Symmetry flags of the orthorhombic fibered names.
    pub symmetric: BTreeMap<String, bool>,
}

pub fn build_catalog() -> Result<Catalog> {
    assemble(realize_all()?)
}

/// Group realized names into the catalog (see [`realize_all`]).
pub fn assemble(realized: Vec<Realized>) -> Result<Catalog> {
    let golden = golden()?;
    let mut it_of: BTreeMap<&str, u16> = BTreeMap::new();
    for r in &golden.table1 {
        it_of.insert(&r.name, r.it);
    }
    for r in &golden.table2a {
        it_of.insert(&r.primary, r.it);
    }
    let rows: BTreeMap<u16, &GroupRow> = golden.table2a.iter().chain(&golden.table2b).map(|r| (r.it, r)).collect();

    let mut symmetric = BTreeMap::new();
    let mut done = BTreeSet::new();
    for r in &realized {
        if let Source::Fibered { base, kernel, .. } = &r.source {
            if ORTHORHOMBIC.contains(&r.point_group.as_str()) && done.insert((base.clone(), *kernel)) {
                symmetric.extend(symmetric_names(&presentation(base)?, *kernel)?);
            }
        }
    }

    let mut entries = Vec::new();
    let mut problems = Vec::new();
    for part in partition(&realized) {
        let its: BTreeSet<Option<u16>> = part.iter().map(|&i| it_of.get(realized[i].name.as_str()).copied()).collect();
        let it = match its.iter().collect::<Vec<_>>()[..] {
            [Some(it)] => *it,
            _ => {
                let names: Vec<&str> = part.iter().map(|&i| realized[i].name.as_str()).collect();
                problems.push(format!("{names:?} share a fingerprint but have IT numbers {its:?}"));
                continue;
            }
        };
        let first = &realized[part[0]];
        let (primary, secondary, rule) = if first.is_irreducible() {
            if part.len() != 1 {
                problems.push(format!("irreducible {} shares its fingerprint", first.name));
                continue;
            }
            (first.name.clone(), Vec::new(), None)
        } else {
            let mut cands = Vec::new();
            for &i in &part {
                let r = &realized[i];
                let Source::Fibered { base, .. } = &r.source else {
                    return Err(Error::Catalog(format!("{} mixes fibered and irreducible names", r.name)));
                };
                let canonical = CANONICAL_DIRECTION.contains(&r.point_group.as_str())
                    && along_canonical_direction(&r.group, &r.point_group)?;
                cands.push(AliasCandidate {
                    name: r.name.clone(),
                    base: base.clone(),
                    point_group: r.point_group.clone(),
                    symmetric: symmetric.get(&r.name).copied().unwrap_or(false),
                    canonical,
                });
            }
            match resolve_aliases(&cands) {
                Ok(a) => (a.primary, a.secondary, Some(a.rule)),
                Err(e) => {
                    problems.push(e.to_string());
                    continue;
                }
            }
        };
        let row = rows.get(&it);
        entries.push(CatalogEntry {
            it_number: it,
            it_label: row.map_or(String::new(), |r| r.label.clone()),
            primary_name: primary,
            secondary_names: secondary,
            point_group: first.point_group.clone(),
            enantiomorphous: row.is_some_and(|r| r.enantiomorphic),
            irreducible: first.is_irreducible(),
            rule,
            fingerprint: first.fingerprint.clone(),
            members: part,
        });
    }
    if !problems.is_empty() {
        return Err(Error::Catalog(problems.join("; ")));
    }
    entries.sort_by_key(|e| e.it_number);
    Ok(Catalog { realized, entries, golden, symmetric })
}

impl Catalog {
    pub fn entry_of(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.names().any(|n| n == name))
    }

    pub fn realized_of(&self, name: &str) -> Option<&Realized> {
        self.realized.iter().find(|r| r.name == name)
    }

    pub fn entry_with(&self, fp: &Fingerprint) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| &e.fingerprint == fp)
    }

    /// The canonical name (the primary name of its group) of any catalog name.
    pub fn canonicalize(&self, name: &str) -> Option<&str> {
        self.entry_of(name).map(|e| e.primary_name.as_str())
    }

    /// Orthorhombic groups known by a single name which is not symmetric.
    pub fn asymmetric_single_names(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| !e.irreducible && e.secondary_names.is_empty() && ORTHORHOMBIC.contains(&e.point_group.as_str()))
            .filter(|e| !self.symmetric.get(&e.primary_name).copied().unwrap_or(false))
            .map(|e| e.primary_name.clone())
            .collect()
    }
}

/// A Table 2a secondary name checked against an axis stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryCheck {
    pub it: u16,
    pub primary: String,
    pub listed: Option<String>,
    /// Primary name of the catalog group the stabilizer turned out to be.
    pub found: Option<String>,
    /// The stabilizer and the listed name have the same fingerprint.
    pub matches: bool,
}

/// Compare the stabilizer of every irreducible group with its ":3" (z axis)
/// or ":6" (all axes) secondary name.
pub fn check_secondaries(catalog: &Catalog, mode: AxisMode) -> Result<Vec<SecondaryCheck>> {
    let suffix = if mode == AxisMode::ZAxis { ":3" } else { ":6" };
    let mut out = Vec::new();
    for row in &catalog.golden.table2a {
        let g = catalog
            .realized_of(&row.primary)
            .ok_or_else(|| Error::Catalog(format!("{} was not realized", row.primary)))?;
        let fp = fingerprint(&axis_stabilizer(&g.group, mode)?)?;
        let listed = row.secondary_with(suffix).map(String::from);
        let matches = listed.as_deref().and_then(|n| catalog.realized_of(n)).is_some_and(|r| r.fingerprint == fp);
        out.push(SecondaryCheck {
            it: row.it,
            primary: row.primary.clone(),
            listed,
            found: catalog.entry_with(&fp).map(|e| e.primary_name.clone()),
            matches,
        });
    }
    Ok(out)
}

/// Table 1 rows whose realized point group differs from the printed one,
/// as (name, printed, computed).
pub fn point_group_mismatches(catalog: &Catalog) -> Vec<(String, String, Option<String>)> {
    catalog
        .golden
        .table1
        .iter()
        .filter_map(|row| {
            let got = catalog.realized_of(&row.name).map(|r| r.point_group.clone());
            (got.as_deref() != Some(row.point_group.as_str())).then(|| (row.name.clone(), row.point_group.clone(), got))
        })
        .collect()
}

/// Irreducible groups for which the order-3 witness fails, with the error.
pub fn witness_failures(catalog: &Catalog) -> Vec<(String, String)> {
    catalog
        .realized
        .iter()
        .filter(|r| r.is_irreducible())
        .filter_map(|r| order3_witness(&r.group).err().map(|e| (r.name.clone(), e.to_string())))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    Table1,
    Table2a,
    Table2b,
}

impl core::str::FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Which::Table1),
            "2a" => Ok(Which::Table2a),
            "2b" => Ok(Which::Table2b),
            _ => Err(Error::Catalog(format!("unknown table `{s}` (expected 1, 2a or 2b)"))),
        }
    }
}

/// A computed table: column names and rows of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("#{}\n", self.columns.join("\t"));
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Columns padded to a common width.
    pub fn to_text(&self) -> String {
        let width: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                let cells = self.rows.iter().map(|r| r[j].chars().count());
                cells.chain([self.columns[j].len()]).max().unwrap_or(0)
            })
            .collect();
        let line = |cells: &mut dyn Iterator<Item = &str>| {
            let mut s = String::new();
            for (j, c) in cells.enumerate() {
                if j > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                s.extend(core::iter::repeat_n(' ', width[j] - c.chars().count()));
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(&mut self.columns.iter().copied());
        for r in &self.rows {
            out.push_str(&line(&mut r.iter().map(String::as_str)));
        }
        out
    }
}

const TABLE1_COLUMNS: [&str; 6] = ["base", "name", "couplings", "fiber", "point_group", "it"];
const GROUP_COLUMNS: [&str; 6] = ["point_group", "primary", "it", "label", "enantiomorphic", "secondary"];

fn flag(b: bool) -> String {
    String::from(if b { "1" } else { "0" })
}

/// The name by which the table refers to a stabilizer: the listed name when
/// it names the same group, the primary name otherwise.
fn stabilizer_name(check: &SecondaryCheck) -> Option<String> {
    if check.matches {
        check.listed.clone()
    } else {
        check.found.clone()
    }
}

/// The computed table, in the row order of the golden table. Computed rows
/// with no golden counterpart come last.
pub fn table(catalog: &Catalog, which: Which) -> Result<Table> {
    let rows = match which {
        Which::Table1 => {
            let fibered: Vec<&Realized> = catalog.realized.iter().filter(|r| !r.is_irreducible()).collect();
            let order: BTreeMap<&str, usize> =
                catalog.golden.table1.iter().enumerate().map(|(i, r)| (r.name.as_str(), i)).collect();
            let mut sorted = fibered;
            sorted.sort_by_key(|r| order.get(r.name.as_str()).copied().unwrap_or(usize::MAX));
            sorted
                .into_iter()
                .map(|r| {
                    let Source::Fibered { base, kernel, ops } = &r.source else { unreachable!() };
                    let couplings: Vec<String> = ops.iter().map(|o| VerticalOp::from(*o).to_string()).collect();
                    let it = catalog.entry_of(&r.name).map_or(String::new(), |e| e.it_number.to_string());
                    [base.clone(), r.name.clone(), couplings.join(" "), kernel.name().into(), r.point_group.clone(), it]
                        .into()
                })
                .collect()
        }
        Which::Table2a => {
            let z = check_secondaries(catalog, AxisMode::ZAxis)?;
            let all = check_secondaries(catalog, AxisMode::AllAxes)?;
            let mut rows = Vec::new();
            for (a, b) in z.iter().zip(&all) {
                let e = catalog.entry_of(&a.primary).ok_or_else(|| Error::Catalog(format!("{} missing", a.primary)))?;
                let mut secondary = Vec::new();
                secondary.extend(stabilizer_name(a).map(|n| format!("{n}:3")));
                secondary.extend(stabilizer_name(b).filter(|_| b.listed.is_some()).map(|n| format!("{n}:6")));
                rows.push(group_row(e, secondary.join(" ; ")));
            }
            rows
        }
        Which::Table2b => {
            let order: BTreeMap<u16, usize> =
                catalog.golden.table2b.iter().enumerate().map(|(i, r)| (r.it, i)).collect();
            let mut entries: Vec<&CatalogEntry> = catalog.entries.iter().filter(|e| !e.irreducible).collect();
            entries.sort_by_key(|e| (order.get(&e.it_number).copied().unwrap_or(usize::MAX), e.it_number));
            entries.into_iter().map(|e| group_row(e, e.secondary_names.join(" ; "))).collect()
        }
    };
    let columns = if which == Which::Table1 { TABLE1_COLUMNS } else { GROUP_COLUMNS };
    Ok(Table { columns: columns.into(), rows })
}

fn group_row(e: &CatalogEntry, secondary: String) -> Vec<String> {
    [
        e.point_group.clone(),
        e.primary_name.clone(),
        e.it_number.to_string(),
        e.it_label.clone(),
        flag(e.enantiomorphous),
        secondary,
    ]
    .into()
}

/// One cell where the computed table and the golden table disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    /// 1-based row of the golden table, or 0 for a computed row it lacks.
    pub row: usize,
    /// The golden row's name.
    pub key: String,
    pub column: &'static str,
    pub expected: String,
    pub got: String,
}

fn cell(row: usize, key: &str, column: &'static str, expected: &str, got: &str) -> Option<CellDiff> {
    (expected != got).then(|| CellDiff { row, key: key.into(), column, expected: expected.into(), got: got.into() })
}

/// Compare a computed table with the golden one. Table 1 couplings are
/// compared by naming: the printed couplings must name their row. The ":6"
/// names of Table 2a are not compared.
pub fn diff_golden(catalog: &Catalog, which: Which) -> Result<Vec<CellDiff>> {
    let t = table(catalog, which)?;
    let key_col = if which == Which::Table1 { 1 } else { 2 };
    let mut by_key: BTreeMap<&str, &Vec<String>> = t.rows.iter().map(|r| (r[key_col].as_str(), r)).collect();
    let mut out = Vec::new();
    match which {
        Which::Table1 => {
            for (i, g) in catalog.golden.table1.iter().enumerate() {
                let row = i + 1;
                let Some(r) = by_key.remove(g.name.as_str()) else {
                    out.push(CellDiff { row, key: g.name.clone(), column: "name", expected: g.name.clone(), got: String::new() });
                    continue;
                };
                let ops = g.couplings.iter().map(|&v| GridOp::try_from(v)).collect::<Result<Vec<_>>>()?;
                let named = crate::fibration::name_assignment(&presentation(&g.base)?, &ops, g.kernel)?.render();
                let it = g.it.to_string();
                out.extend(
                    [
                        cell(row, &g.name, "base", &g.base, &r[0]),
                        cell(row, &g.name, "couplings", &g.name, &named),
                        cell(row, &g.name, "fiber", g.kernel.name(), &r[3]),
                        cell(row, &g.name, "point_group", &g.point_group, &r[4]),
                        cell(row, &g.name, "it", &it, &r[5]),
                    ]
                    .into_iter()
                    .flatten(),
                );
            }
        }
        Which::Table2a | Which::Table2b => {
            let golden = if which == Which::Table2a { &catalog.golden.table2a } else { &catalog.golden.table2b };
            for (i, g) in golden.iter().enumerate() {
                let row = i + 1;
                let it = g.it.to_string();
                let Some(r) = by_key.remove(it.as_str()) else {
                    out.push(CellDiff { row, key: g.primary.clone(), column: "it", expected: it, got: String::new() });
                    continue;
                };
                let (want, got) = if which == Which::Table2a {
                    let g3 = g.secondary_with(":3").unwrap_or("");
                    let r3 = r[5].split(" ; ").find_map(|s| s.strip_suffix(":3")).unwrap_or("");
                    (String::from(g3), String::from(r3))
                } else {
                    let set = |v: &mut dyn Iterator<Item = &str>| {
                        let s: BTreeSet<&str> = v.filter(|x| !x.is_empty()).collect();
                        s.into_iter().collect::<Vec<_>>().join(" ; ")
                    };
                    (set(&mut g.secondary.iter().map(String::as_str)), set(&mut r[5].split(" ; ")))
                };
                out.extend(
                    [
                        cell(row, &g.primary, "point_group", &g.point_group, &r[0]),
                        cell(row, &g.primary, "primary", &g.primary, &r[1]),
                        cell(row, &g.primary, "label", &g.label, &r[3]),
                        cell(row, &g.primary, "enantiomorphic", &flag(g.enantiomorphic), &r[4]),
                        cell(row, &g.primary, "secondary", &want, &got),
                    ]
                    .into_iter()
                    .flatten(),
                );
            }
        }
    }
    for r in by_key.into_values() {
        out.push(CellDiff { row: 0, key: r[key_col].clone(), column: "row", expected: String::new(), got: r.join("\t") });
    }
    Ok(out)
}

const CYCLIC_AXES: Mat<3> = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];

/// Adjoin the cyclic permutation of the lattice axes, with some shift on
/// the quarter grid, so that the translations do not grow: the result
/// contains `g` (rewritten over its lattice) with index 3.
pub fn cyclic_supergroup(g: &SpaceGroup) -> Result<Option<SpaceGroup>> {
    let norm = normalize(g)?;
    let unit = |i: usize| {
        let mut v = [Q::from_integer(0); 3];
        v[i] = Q::from_integer(1);
        Affine3::translation(v)
    };
    let mut base: Vec<Affine3> = norm.cosets.iter().map(|c| Affine3::new(c.lattice_linear, c.lattice_shift)).collect();
    base.extend((0..3).map(unit));
    let lattice = SpaceGroup { generators: base, label: g.label.clone() };
    let ln = normalize(&lattice)?;
    let quarter = |k: i64| Q::new(k, 4);
    for k in 0..64 {
        let v = [quarter(k % 4), quarter(k / 4 % 4), quarter(k / 16)];
        let mut gens = lattice.generators.clone();
        gens.push(Affine3::new(CYCLIC_AXES, v));
        let h = SpaceGroup { generators: gens, label: format!("{}+3", g.label) };
        let Ok(hn) = normalize(&h) else { continue };
        if hn.order() == 3 * ln.order() && hn.lattice_translations().iter().all(|t| ln.contains(t)) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
