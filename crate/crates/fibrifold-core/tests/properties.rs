use std::sync::OnceLock;

use fibrifold_core::basegroups::{all, presentation, BasePresentation};
use fibrifold_core::exactnum::{compose, in_kernel, invert, reset, FiberKernel, FracMod1, GridOp, VerticalOp};
use fibrifold_core::fibration::{classify, enumerate_raw, negate, Classification};
use fibrifold_core::linalg::{int_inv, Affine3, Mat, Q};
use fibrifold_core::notation::{negate_name, parse};
use fibrifold_core::realization::{fingerprint_with, realize_fibered, SpaceGroup};
use proptest::prelude::*;

const KERNELS: [FiberKernel; 2] = [FiberKernel::Circular, FiberKernel::Interval];

struct BaseData {
    base: BasePresentation,
    raw: Vec<Vec<GridOp>>,
    classes: Classification,
}

fn data() -> &'static [BaseData] {
    static D: OnceLock<Vec<BaseData>> = OnceLock::new();
    D.get_or_init(|| {
        let mut out = Vec::new();
        for base in all() {
            for kernel in KERNELS {
                let raw = enumerate_raw(&base, kernel);
                let classes = classify(&base, kernel).unwrap();
                out.push(BaseData { base: base.clone(), raw, classes });
            }
        }
        out
    })
}

fn grid_op() -> impl Strategy<Value = VerticalOp> {
    (any::<bool>(), 0i64..12).prop_map(|(m, c)| {
        let c = FracMod1::from_twelfths(c);
        if m {
            VerticalOp::minus(c)
        } else {
            VerticalOp::plus(c)
        }
    })
}

fn grid(ops: &[VerticalOp]) -> Vec<GridOp> {
    ops.iter().map(|&v| GridOp::try_from(v).unwrap()).collect()
}

fn reset_grid(ops: &[GridOp], d: i64) -> Vec<GridOp> {
    let v: Vec<VerticalOp> = ops.iter().map(|&g| g.into()).collect();
    grid(&reset(&v, FracMod1::from_twelfths(d)))
}

proptest! {
    #[test]
    fn compose_is_associative(a in grid_op(), b in grid_op(), c in grid_op()) {
        prop_assert_eq!(compose(compose(a, b), c), compose(a, compose(b, c)));
    }

    #[test]
    fn sign_is_a_homomorphism(a in grid_op(), b in grid_op()) {
        prop_assert_eq!(compose(a, b).sign, a.sign.mul(b.sign));
    }

    #[test]
    fn inverse_law(a in grid_op()) {
        prop_assert_eq!(compose(a, invert(a)), VerticalOp::IDENTITY);
        prop_assert_eq!(compose(invert(a), a), VerticalOp::IDENTITY);
    }

    #[test]
    fn kernels_are_subgroups(a in grid_op(), b in grid_op()) {
        for k in KERNELS {
            if in_kernel(a, k) && in_kernel(b, k) {
                prop_assert!(in_kernel(compose(a, b), k));
                prop_assert!(in_kernel(invert(a), k));
            }
        }
    }

    #[test]
    fn sampled_assignments_keep_their_class(pick in any::<prop::sample::Index>(), row in any::<prop::sample::Index>(), d in 0i64..12) {
        let b = &data()[pick.index(data().len())];
        if !b.raw.is_empty() {
            let ops = &b.raw[row.index(b.raw.len())];
            let name = &b.classes.class_of(&b.base, ops).unwrap().name;
            prop_assert_eq!(&b.classes.class_of(&b.base, &reset_grid(ops, d)).unwrap().name, name);
            prop_assert_eq!(&b.classes.class_of(&b.base, &negate(ops)).unwrap().name, name);
        }
    }
}

#[test]
fn reset_keeps_every_assignment_in_its_class() {
    for b in data() {
        for ops in &b.raw {
            let name = &b.classes.class_of(&b.base, ops).unwrap().name;
            for d in 0..12 {
                let moved = reset_grid(ops, d);
                assert_eq!(&b.classes.class_of(&b.base, &moved).unwrap().name, name, "{} {ops:?} d={d}", b.base.id);
            }
        }
    }
}

#[test]
fn z_negation_is_an_involution_on_classes() {
    for b in data() {
        for ops in &b.raw {
            let n = negate(ops);
            assert_eq!(negate(&n), *ops);
            assert_eq!(b.classes.class_of(&b.base, &n).unwrap().name, b.classes.class_of(&b.base, ops).unwrap().name);
        }
    }
}

#[test]
fn names_round_trip() {
    let mut count = 0;
    for b in data() {
        for class in &b.classes.classes {
            for n in class.spellings.iter().chain(&class.full_names) {
                let s = n.render();
                assert_eq!(&parse(&s).unwrap(), n, "{s}");
                assert_eq!(negate_name(&negate_name(n)), *n, "{s}");
                count += 1;
            }
        }
    }
    assert!(count >= 273);
}

#[test]
fn irreducible_names_round_trip() {
    for n in fibrifold_core::irreducible::irreducible_names() {
        assert_eq!(fibrifold_core::irreducible::find(&n).unwrap().name, n);
    }
}

fn unimodular() -> impl Strategy<Value = Mat<3>> {
    // Products of elementary shears and sign changes.
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 1..6).prop_map(|steps| {
        let mut m: Mat<3> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j, k, flip) in steps {
            if i != j {
                for c in 0..3 {
                    m[i][c] += k * m[j][c];
                }
            }
            if flip {
                for c in 0..3 {
                    m[i][c] = -m[i][c];
                }
            }
        }
        m
    })
}

const SAMPLE_NAMES: [(&str, &str, FiberKernel); 5] = [
    ("o", "(o)", FiberKernel::Circular),
    ("2*22", "(2_1 *.2:2)", FiberKernel::Circular),
    ("22x", "(2_0 2_0 x_0)", FiberKernel::Circular),
    ("*442", "[*.4.4.2]", FiberKernel::Interval),
    ("632", "(6_1 3_1 2_1)", FiberKernel::Circular),
];

fn sample_group(i: usize) -> SpaceGroup {
    let (base, name, kernel) = SAMPLE_NAMES[i];
    let b = presentation(base).unwrap();
    let c = classify(&b, kernel).unwrap();
    let class = c.classes.iter().find(|x| x.name.render() == name).unwrap();
    realize_fibered(&b, &class.representative, kernel).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_is_invariant_under_change_of_basis_and_origin(
        i in 0..SAMPLE_NAMES.len(),
        u in unimodular(),
        shift in prop::array::uniform3(0i64..12),
    ) {
        let g = sample_group(i);
        let t = Affine3::new(u, shift.map(|k| Q::new(k, 12)));
        let ti = t.inverse();
        prop_assert!(int_inv(&u).is_some());
        let moved = SpaceGroup {
            generators: g.generators.iter().map(|x| t.mul(x).mul(&ti)).collect(),
            label: g.label.clone(),
        };
        let levels = [1, 2, 3, 4];
        prop_assert_eq!(fingerprint_with(&moved, &levels).unwrap(), fingerprint_with(&g, &levels).unwrap());
    }
}
