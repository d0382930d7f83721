//! The acceptance criteria, one check each.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::Result;
use fibrifold_core::atlas::{
    check_secondaries, diff_golden, golden, golden_partition, point_group_mismatches, witness_failures, Catalog, Which,
};
use fibrifold_core::basegroups::{all, presentation};
use fibrifold_core::exactnum::{reset, FiberKernel, FracMod1, GridOp, VerticalOp};
use fibrifold_core::fibration::{classify, classify_with, enumerate_raw, negate};
use fibrifold_core::irreducible::{find, g8, inclusion_lattice, irreducible_classes, subgroup_classes, Family};
use fibrifold_core::notation::parse;
use fibrifold_core::realization::AxisMode;

const KERNELS: [FiberKernel; 2] = [FiberKernel::Circular, FiberKernel::Interval];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

fn outcome(id: u8, title: &'static str, r: Result<(bool, String)>) -> Outcome {
    match r {
        Ok((pass, detail)) => Outcome { id, title, pass, detail },
        Err(e) => Outcome { id, title, pass: false, detail: format!("error: {e:#}") },
    }
}

fn first_lines<T: std::fmt::Debug>(items: &[T]) -> String {
    let shown: Vec<String> = items.iter().take(5).map(|x| format!("{x:?}")).collect();
    format!("{} mismatches, e.g. {}", items.len(), shown.join("; "))
}

/// Criterion 1: classes per base and fiber kind against the Table 1 blocks.
pub fn per_base_counts() -> Result<(bool, String)> {
    let g = golden()?;
    let mut want: BTreeMap<(String, FiberKernel), usize> = BTreeMap::new();
    for r in &g.table1 {
        *want.entry((r.base.clone(), r.kernel)).or_default() += 1;
    }
    let mut bad = Vec::new();
    let mut total = 0;
    for b in all() {
        for k in KERNELS {
            let n = classify(&b, k)?.classes.len();
            total += n;
            let w = want.get(&(b.id.clone(), k)).copied().unwrap_or(0);
            if n != w {
                bad.push(format!("{} {}: {n} vs {w}", b.id, k.name()));
            }
        }
    }
    let sum = |id: &str, syms: Option<&[Vec<fibrifold_core::word::Word>]>| -> Result<usize> {
        let b = presentation(id)?;
        let mut n = 0;
        for k in KERNELS {
            n += match syms {
                Some(s) => classify_with(&b, k, s)?.classes.len(),
                None => classify(&b, k)?.classes.len(),
            };
        }
        Ok(n)
    };
    let (hex, raw22x, full22x) = (sum("632", None)?, sum("22x", Some(&[]))?, sum("22x", None)?);
    let pass = bad.is_empty() && hex == 8 && raw22x == 14 && full22x == 10;
    let mut detail = format!("{total} classes over 17 bases, 632 gives {hex}, 22x gives {raw22x} then {full22x}");
    if !bad.is_empty() {
        detail += &format!(", blocks differ: {}", bad.join(", "));
    }
    Ok((pass, detail))
}

/// Criterion 2: the class names are exactly the Table 1 names.
pub fn names(catalog: &Catalog) -> Result<(bool, String)> {
    let mut got = BTreeSet::new();
    for b in all() {
        for k in KERNELS {
            got.extend(classify(&b, k)?.classes.iter().map(|c| c.name.render()));
        }
    }
    let want: BTreeSet<String> = catalog.golden.table1.iter().map(|r| r.name.clone()).collect();
    let diff = diff_golden(catalog, Which::Table1)?;
    let missing: Vec<&String> = want.difference(&got).collect();
    let extra: Vec<&String> = got.difference(&want).collect();
    let pass = missing.is_empty() && extra.is_empty() && diff.is_empty();
    let detail = if pass {
        format!("{} names, Table 1 diff empty", got.len())
    } else {
        format!("missing {missing:?}, extra {extra:?}, {}", first_lines(&diff))
    };
    Ok((pass, detail))
}

/// Criterion 3: subgroup classes and the 35 irreducible groups.
pub fn irreducible_counts() -> Result<(bool, String)> {
    let d8 = subgroup_classes(&g8()).len();
    let classes = irreducible_classes();
    let count = |f: Family| classes.iter().filter(|c| c.family == f).count();
    let (double, plain, mixed, quarter) =
        (count(Family::Double), count(Family::Plain), count(Family::Mixed), count(Family::Quarter));
    let pass = d8 == 8 && (double, plain, mixed) == (8, 8, 11) && quarter == 8 && classes.len() == 35;
    Ok((pass, format!("D8 {d8} classes, G16 {double}/{plain}/{mixed}, {quarter} quarter, {} total", classes.len())))
}

/// Criterion 4: minimal inclusions among the irreducible groups.
pub fn inclusions() -> Result<(bool, String)> {
    let n = inclusion_lattice().len();
    Ok((n == 83, format!("{n} minimal inclusions")))
}

/// Criterion 5: fingerprint classes against the IT numbers, and the name
/// sets of Tables 2a and 2b.
pub fn partition(catalog: &Catalog) -> Result<(bool, String)> {
    let got: BTreeSet<BTreeSet<String>> = catalog.entries.iter().map(|e| e.names().map(String::from).collect()).collect();
    let want: BTreeSet<BTreeSet<String>> = golden_partition(&catalog.golden).into_values().collect();
    let d2a: Vec<_> = diff_golden(catalog, Which::Table2a)?.into_iter().filter(|d| d.column != "secondary").collect();
    let d2b = diff_golden(catalog, Which::Table2b)?;
    let pass = got == want && got.len() == 219 && d2a.is_empty() && d2b.is_empty();
    let detail = if pass {
        format!("{} classes equal the golden partition, Tables 2a and 2b agree", got.len())
    } else {
        let only_got = got.difference(&want).count();
        format!("{} classes, {only_got} not golden, 2a: {}, 2b: {}", got.len(), first_lines(&d2a), first_lines(&d2b))
    };
    Ok((pass, detail))
}

/// Criterion 6: point group of every Table 1 row.
pub fn point_groups(catalog: &Catalog) -> Result<(bool, String)> {
    let bad = point_group_mismatches(catalog);
    let n = catalog.golden.table1.len();
    Ok((bad.is_empty(), if bad.is_empty() { format!("{n} rows agree") } else { first_lines(&bad) }))
}

/// Criterion 7: enantiomorphic pairs.
pub fn enantiomorphs(catalog: &Catalog) -> Result<(bool, String)> {
    let marked = catalog.entries.iter().filter(|e| e.enantiomorphous).count();
    let its: BTreeSet<u16> = catalog.entries.iter().map(|e| e.it_number).collect();
    let in_range = its.iter().all(|&i| (1..=230).contains(&i));
    let total = catalog.entries.len() + marked;
    let pass = marked == 11 && its.len() == 219 && in_range && total == 230;
    Ok((pass, format!("{marked} marked, {} + {marked} = {total}", catalog.entries.len())))
}

/// Criterion 8: the order 3 witness in every irreducible group.
pub fn witnesses(catalog: &Catalog) -> Result<(bool, String)> {
    let bad = witness_failures(catalog);
    let n = catalog.realized.iter().filter(|r| r.is_irreducible()).count();
    let pass = bad.is_empty() && n == 35;
    Ok((pass, if bad.is_empty() { format!("{n} groups") } else { first_lines(&bad) }))
}

fn reset_grid(ops: &[GridOp], d: i64) -> Result<Vec<GridOp>> {
    let v: Vec<VerticalOp> = ops.iter().map(|&g| g.into()).collect();
    Ok(reset(&v, FracMod1::from_twelfths(d)).into_iter().map(GridOp::try_from).collect::<fibrifold_core::Result<_>>()?)
}

/// Criterion 9: names round trip; reset and fiber reversal keep the class of
/// every assignment on the grid.
pub fn round_trip(catalog: &Catalog) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut names = 0;
    for e in &catalog.entries {
        for n in e.names() {
            names += 1;
            let ok = if e.irreducible { find(n).map(|c| c.name == n).unwrap_or(false) } else { parse(n).map(|p| p.render() == n).unwrap_or(false) };
            if !ok {
                bad.push(n.to_string());
            }
        }
    }
    for row in &catalog.golden.table2a {
        for s in &row.secondary {
            let n = s.trim_end_matches(":3").trim_end_matches(":6");
            names += 1;
            if parse(n).map(|p| p.render() != n).unwrap_or(true) {
                bad.push(n.to_string());
            }
        }
    }
    let mut checked = 0;
    for b in all() {
        for k in KERNELS {
            let c = classify(&b, k)?;
            for ops in enumerate_raw(&b, k) {
                let name = &c.class_of(&b, &ops)?.name;
                if &c.class_of(&b, &negate(&ops))?.name != name {
                    bad.push(format!("{} {ops:?} negated", b.id));
                }
                for d in 0..12 {
                    checked += 1;
                    if &c.class_of(&b, &reset_grid(&ops, d)?)?.name != name {
                        bad.push(format!("{} {ops:?} reset {d}", b.id));
                    }
                }
            }
        }
    }
    let pass = bad.is_empty();
    let detail = format!("{names} names, {checked} resets");
    Ok((pass, if pass { detail } else { format!("{detail}, {}", first_lines(&bad)) }))
}

/// Criterion 10: z axis stabilizers against the ":3" names.
pub fn secondaries(catalog: &Catalog) -> Result<(bool, String)> {
    let z = check_secondaries(catalog, AxisMode::ZAxis)?;
    let bad: Vec<_> = z.iter().filter(|c| !c.matches).collect();
    let six = check_secondaries(catalog, AxisMode::AllAxes)?;
    let listed = six.iter().filter(|c| c.listed.is_some()).count();
    let six_ok = six.iter().filter(|c| c.matches).count();
    let pass = bad.is_empty() && z.len() == 35;
    let detail = format!("{} of {} \":3\" names, {six_ok} of {listed} \":6\" names (informational)", z.len() - bad.len(), z.len());
    Ok((pass, if pass { detail } else { format!("{detail}, {}", first_lines(&bad)) }))
}

/// Run every check. Checks that need the catalog fail if it could not be built.
pub fn run_all(catalog: &Result<Catalog>) -> Vec<Outcome> {
    let with = |f: fn(&Catalog) -> Result<(bool, String)>| match catalog {
        Ok(c) => f(c),
        Err(e) => Err(anyhow::anyhow!("catalog not built: {e:#}")),
    };
    vec![
        outcome(1, "per-base fibration counts", per_base_counts()),
        outcome(2, "reducible names", with(names)),
        outcome(3, "irreducible counts", irreducible_counts()),
        outcome(4, "inclusion lattice", inclusions()),
        outcome(5, "fingerprint partition", with(partition)),
        outcome(6, "point groups", with(point_groups)),
        outcome(7, "enantiomorphs", with(enantiomorphs)),
        outcome(8, "order 3 witness", with(witnesses)),
        outcome(9, "round trip and invariance", with(round_trip)),
        outcome(10, "secondary names", with(secondaries)),
    ]
}
