use fibrifold_core::basegroups::presentation;
use fibrifold_core::exactnum::{FiberKernel, GridOp, VerticalOp};
use fibrifold_core::linalg::{Affine3, Q};
use fibrifold_core::realization::{
    finite_quotient, fingerprint, fingerprint_with, order3_witness, point_group, realize_fibered, SpaceGroup,
};

fn group(base: &str, couplings: &str, kernel: FiberKernel) -> SpaceGroup {
    let ops: Vec<GridOp> =
        couplings.split_whitespace().map(|s| GridOp::try_from(s.parse::<VerticalOp>().unwrap()).unwrap()).collect();
    realize_fibered(&presentation(base).unwrap(), &ops, kernel).unwrap()
}

fn p1() -> SpaceGroup {
    group("o", "0+ 0+", FiberKernel::Circular)
}

#[test]
fn p1_is_three_translations() {
    let g = p1();
    assert!(g.generators.iter().all(Affine3::is_translation));
    assert_eq!(g.generators.len(), 3);
    assert_eq!(point_group(&g).unwrap(), "1");
}

#[test]
fn minus_coupling_reflects_in_a_horizontal_plane() {
    // X -> 1/3-: z goes to 1/3 - z, which fixes the plane z = 1/6.
    let g = group("o", "1/3- 0+", FiberKernel::Circular);
    let x = g.generators[0];
    assert_eq!(x.m[2], [0, 0, -1]);
    let p = x.apply(&[Q::new(0, 1), Q::new(0, 1), Q::new(1, 6)]);
    assert_eq!(p[2], Q::new(1, 6));
}

#[test]
fn bad_couplings_are_rejected() {
    let ops = [GridOp::try_from("1/4+".parse::<VerticalOp>().unwrap()).unwrap(); 4];
    assert!(realize_fibered(&presentation("2222").unwrap(), &ops, FiberKernel::Circular).is_err());
}

#[test]
fn quotient_examples() {
    let q = finite_quotient(&p1(), 2).unwrap();
    assert_eq!(q.order(), 8);
    let l = &fingerprint_with(&p1(), &[2]).unwrap().levels[0];
    assert_eq!(l.orders, vec![(1, 1), (2, 7)]);
    assert_eq!(l.derived_order, 1);

    let hex = group("*632", "0+ 0+ 0+", FiberKernel::Interval);
    assert_eq!(finite_quotient(&hex, 1).unwrap().order(), 24);

    let l = &fingerprint_with(&group("632", "1/6+ 1/3+ 1/2+", FiberKernel::Circular), &[1]).unwrap().levels[0];
    assert_eq!(l.order, 6);
    assert_eq!(l.orders, vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
}

#[test]
fn point_groups() {
    assert_eq!(point_group(&group("*632", "0+ 0+ 0+", FiberKernel::Interval)).unwrap(), "*226");
    assert_eq!(point_group(&group("632", "1/6+ 1/3+ 1/2+", FiberKernel::Circular)).unwrap(), "66");
    assert_eq!(point_group(&group("2222", "0- 0- 0- 0-", FiberKernel::Circular)).unwrap(), "x");
}

#[test]
fn fingerprint_examples() {
    let a = fingerprint(&group("2*22", "0+ 0+ 0+", FiberKernel::Interval)).unwrap();
    let b = fingerprint(&group("*2222", "0+ 0+ 0+ 1/2+", FiberKernel::Interval)).unwrap();
    assert_eq!(a, b);
    let p1bar = group("2222", "0- 0- 0- 0-", FiberKernel::Circular);
    assert_ne!(fingerprint(&p1()).unwrap(), fingerprint(&p1bar).unwrap());
}

#[test]
fn export_writes_fractions() {
    let g = group("632", "1/6+ 1/3+ 1/2+", FiberKernel::Circular);
    let e = g.export();
    assert_eq!(e[0].1[2], "1/6");
    assert!(e.iter().flat_map(|(_, v)| v.iter()).all(|s| s.parse::<i64>().is_ok() || s.contains('/')));
}

#[test]
fn witness_of_the_plain_cubic_group() {
    let z = Q::new(0, 1);
    let one = Q::new(1, 1);
    let mut gens = vec![
        Affine3::new([[0, 1, 0], [0, 0, 1], [1, 0, 0]], [z; 3]),
        Affine3::new([[1, 0, 0], [0, -1, 0], [0, 0, -1]], [z; 3]),
    ];
    for i in 0..3 {
        let mut v = [z; 3];
        v[i] = one;
        gens.push(Affine3::translation(v));
    }
    let w = order3_witness(&SpaceGroup { generators: gens, label: "P23".into() }).unwrap();
    assert_eq!(w.element.m, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    assert_eq!(w.fixed_point, [z; 3]);
    assert!(w.element.pow(3).is_identity());
}
