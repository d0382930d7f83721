use std::collections::{BTreeMap, BTreeSet};

use fibrifold_core::basegroups::{all, presentation};
use fibrifold_core::exactnum::{FiberKernel, GridOp, VerticalOp};
use fibrifold_core::fibration::{classify, classify_with, name_assignment};
use fibrifold_core::word::Word;

const TABLE1: &str = include_str!("../data/table1.tsv");

fn golden() -> BTreeMap<(String, FiberKernel), BTreeSet<String>> {
    let mut m: BTreeMap<_, BTreeSet<String>> = BTreeMap::new();
    for line in TABLE1.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let f: Vec<&str> = line.split('\t').collect();
        m.entry((f[0].to_string(), f[3].parse().unwrap())).or_default().insert(f[1].to_string());
    }
    m
}

#[test]
fn names_match_golden_per_base() {
    let gold = golden();
    let mut total = 0;
    for b in all() {
        for k in [FiberKernel::Circular, FiberKernel::Interval] {
            let c = classify(&b, k).unwrap();
            let got: BTreeSet<String> = c.classes.iter().map(|x| x.name.render()).collect();
            let want = gold.get(&(b.id.clone(), k)).cloned().unwrap_or_default();
            assert_eq!(got, want, "{} {}", b.id, k.name());
            total += got.len();
        }
    }
    assert_eq!(total, 273);
}

#[test]
fn small_bases() {
    let b = presentation("632").unwrap();
    let n: usize = [FiberKernel::Circular, FiberKernel::Interval].iter().map(|&k| classify(&b, k).unwrap().classes.len()).sum();
    assert_eq!(n, 8);
    let b = presentation("22x").unwrap();
    // Fiber reversal alone leaves 14; the base symmetries bring it to 10.
    let count = |syms: &[Vec<Word>]| -> usize {
        [FiberKernel::Circular, FiberKernel::Interval].iter().map(|&k| classify_with(&b, k, syms).unwrap().classes.len()).sum()
    };
    assert_eq!(count(&[]), 14);
    assert_eq!(count(&b.symmetries), 10);
}

#[test]
fn golden_couplings_name_their_row() {
    for line in TABLE1.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let f: Vec<&str> = line.split('\t').collect();
        let b = presentation(f[0]).unwrap();
        let ops: Vec<GridOp> =
            f[2].split_whitespace().map(|s| GridOp::try_from(s.parse::<VerticalOp>().unwrap()).unwrap()).collect();
        let n = name_assignment(&b, &ops, f[3].parse().unwrap()).unwrap();
        assert_eq!(n.render(), f[1], "{line}");
    }
}
