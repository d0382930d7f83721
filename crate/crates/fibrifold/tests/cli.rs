use std::process::{Command, Output};

use fibrifold::locate;
use fibrifold_core::atlas::{realize_item, work_items};
use rayon::prelude::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibrifold")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn enumerate_632() {
    let circular = stdout(&["enumerate", "--base", "632", "--fiber", "circular"]);
    let interval = stdout(&["enumerate", "--base", "632", "--fiber", "interval"]);
    assert_eq!(circular.lines().count() + interval.lines().count(), 8);
    assert!(circular.lines().any(|l| l.starts_with("(6_1 3_1 2_1)\t")));
}

#[test]
fn name_from_couplings() {
    assert_eq!(stdout(&["name", "--base", "632", "--couplings", "1/6+ 1/3+ 1/2+"]).trim(), "(6_1 3_1 2_1)");
    assert_eq!(stdout(&["name", "--base", "o", "--couplings", "0+,0+"]).trim(), "(o)");
    assert!(!run(&["name", "--base", "2222", "--couplings", "1/4+ 1/4+ 1/4+ 1/4+"]).status.success());
}

#[test]
fn parse_shows_structure() {
    let out = stdout(&["parse", "[*.6.3.2]"]);
    assert!(out.contains("base\t*632"));
    assert!(out.contains("fiber\tinterval"));
    assert!(!run(&["parse", "(7_1)"]).status.success());
}

#[test]
fn realize_json() {
    let out = stdout(&["realize", "(6_1 3_1 2_1)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["point_group"], "66");
    let gens = v["generators"].as_array().unwrap();
    assert!(gens.iter().any(|g| g["vector"][2] == "1/6"));
}

#[test]
fn realize_irreducible_and_alias() {
    let out = stdout(&["realize", "8^o:2"]);
    assert!(out.contains("point group *432"));
    // A spelling that is not the chosen one still locates its class.
    assert_eq!(locate("(2_0 2_0 x_0)").unwrap().name(), "(2_0 2_0 x_0)");
}

#[test]
fn fingerprint_output() {
    let out = stdout(&["fingerprint", "(o)"]);
    assert!(out.starts_with("point group\t1\n"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["fingerprint", "(o)", "--json"])).unwrap();
    assert_eq!(v["levels"][1]["order"], 8);
}

#[test]
fn irreducible_listing() {
    assert_eq!(stdout(&["irreducible", "--list"]).lines().count(), 35);
    assert_eq!(stdout(&["irreducible", "--lattice"]).lines().count(), 83);
    assert!(!run(&["irreducible"]).status.success());
}

#[test]
fn bad_table_argument() {
    assert!(!run(&["tables", "--which", "3"]).status.success());
}

#[test]
fn parallel_realization_matches_sequential() {
    let items: Vec<_> = work_items().unwrap().into_iter().step_by(7).collect();
    let seq: Vec<_> = items.iter().map(|i| realize_item(i).unwrap().fingerprint).collect();
    let par: Vec<_> = items.par_iter().map(|i| realize_item(i).unwrap().fingerprint).collect();
    assert_eq!(seq, par);
}
