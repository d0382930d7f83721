use std::collections::BTreeSet;
use std::sync::OnceLock;

use fibrifold_core::atlas::{
    build_catalog, check_secondaries, cyclic_supergroup, diff_golden, golden_partition, point_group_mismatches, table, witness_failures, Catalog,
    Which,
};
use fibrifold_core::realization::{fingerprint, AxisMode};

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| build_catalog().unwrap())
}

#[test]
fn fingerprint_partition_matches_golden() {
    let c = catalog();
    let got: BTreeSet<BTreeSet<String>> =
        c.entries.iter().map(|e| e.names().map(String::from).collect()).collect();
    let want: BTreeSet<BTreeSet<String>> = golden_partition(&c.golden).into_values().collect();
    assert_eq!(got.len(), 219);
    assert_eq!(got, want);
}

#[test]
fn primaries_match_table_2b() {
    let c = catalog();
    let mut bad = Vec::new();
    for row in &c.golden.table2b {
        let e = c.entries.iter().find(|e| e.it_number == row.it).unwrap();
        let names: BTreeSet<&str> = e.names().collect();
        let want: BTreeSet<&str> = std::iter::once(row.primary.as_str()).chain(row.secondary.iter().map(String::as_str)).collect();
        if e.primary_name != row.primary || names != want {
            bad.push(format!("{}: got {} {:?} ({:?}), want {} {:?}", row.it, e.primary_name, e.secondary_names, e.rule, row.primary, row.secondary));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn counts() {
    let c = catalog();
    assert_eq!(c.entries.iter().filter(|e| e.irreducible).count(), 35);
    assert_eq!(c.entries.iter().filter(|e| e.enantiomorphous).count(), 11);
    assert_eq!(c.asymmetric_single_names(), vec!["(2_1 2 ~*:)".to_string()]);
}

#[test]
fn point_group_column() {
    assert_eq!(point_group_mismatches(catalog()), vec![]);
}

#[test]
fn witnesses() {
    assert_eq!(witness_failures(catalog()), vec![]);
}

#[test]
fn z_stabilizers_match_secondary_names() {
    let checks = check_secondaries(catalog(), AxisMode::ZAxis).unwrap();
    assert_eq!(checks.len(), 35);
    let bad: Vec<_> = checks.iter().filter(|c| !c.matches).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn all_axes_stabilizers() {
    let checks = check_secondaries(catalog(), AxisMode::AllAxes).unwrap();
    let listed = checks.iter().filter(|c| c.listed.is_some()).count();
    let ok = checks.iter().filter(|c| c.matches).count();
    println!(":6 names matching: {ok} of {listed}");
    for c in checks.iter().filter(|c| c.listed.is_some() && !c.matches) {
        println!("{c:?}");
    }
}

#[test]
fn tables_match_golden() {
    let c = catalog();
    for (which, rows) in [(Which::Table1, 273), (Which::Table2a, 35), (Which::Table2b, 184)] {
        let t = table(c, which).unwrap();
        assert_eq!(t.rows.len(), rows, "{which:?}");
        assert_eq!(diff_golden(c, which).unwrap(), vec![], "{which:?}");
    }
}

#[test]
fn table_2b_leads_with_the_hexagonal_block() {
    let t = table(catalog(), Which::Table2b).unwrap();
    assert_eq!(t.rows[0], ["*226", "[*.6.3.2]", "191", "P6/mmm", "0", ""]);
    assert!(t.to_tsv().starts_with("#point_group\tprimary\tit\tlabel\tenantiomorphic\tsecondary\n*226\t[*.6.3.2]\t191"));
}

#[test]
fn asymmetric_name_has_a_cubic_supergroup() {
    let c = catalog();
    let g = &c.realized_of("(2_1 2 ~*:)").unwrap().group;
    let h = cyclic_supergroup(g).unwrap().expect("no shift of the axis cycle normalizes the group");
    let e = c.entry_with(&fingerprint(&h).unwrap()).unwrap();
    assert_eq!((e.it_number, e.irreducible), (205, true));
}
