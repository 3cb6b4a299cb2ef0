mod common;

use common::p;
use hookbranch::bijection::{
    check_exhaustive, check_sampled, count_f, count_g, demo_arrangement, enumerate_f,
    enumerate_f_variant, enumerate_g_variant, hook_walk_from_f, phi, phi_inverse, phi_trace,
    sample_f, validate_f, validate_g, ArrangementF, ArrangementG, VariantKind,
};
use hookbranch::identities::{sides, specialize_all_ones};
use hookbranch::partition::partitions_up_to;
use hookbranch::polynomial::Axis;
use hookbranch::{Cell, IdentityId, Partition, Polynomial};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [VariantKind; 4] = [
    VariantKind::Plain,
    VariantKind::X,
    VariantKind::Y,
    VariantKind::Xy,
];

fn identity_for(kind: VariantKind) -> IdentityId {
    match kind {
        VariantKind::Plain => IdentityId::Cwbr,
        VariantKind::X => IdentityId::CwbrX,
        VariantKind::Y => IdentityId::CwbrY,
        VariantKind::Xy => IdentityId::CwbrXy,
    }
}

fn nonempty_up_to(n: usize) -> Vec<Partition> {
    partitions_up_to(n)
        .into_iter()
        .filter(|l| !l.is_empty())
        .collect()
}

#[test]
fn exhaustive_up_to_six() {
    for lam in nonempty_up_to(6) {
        for kind in KINDS {
            let r = check_exhaustive(&lam, kind);
            assert!(r.passed(), "{lam} {kind:?}: {r:?}");
        }
    }
}

#[test]
fn counts_match_all_ones_values() {
    for lam in nonempty_up_to(7) {
        for kind in KINDS {
            let (l, r) = specialize_all_ones(identity_for(kind), &lam).unwrap();
            assert_eq!(BigInt::from(count_f(&lam, kind)), l, "{lam} {kind:?}");
            assert_eq!(BigInt::from(count_g(&lam, kind)), r, "{lam} {kind:?}");
        }
    }
}

#[test]
fn weight_generating_functions_are_the_two_sides() {
    for lam in nonempty_up_to(5) {
        for kind in KINDS {
            let s = sides(identity_for(kind), &lam).unwrap();
            let f_sum = enumerate_f_variant(&lam, kind).fold(Polynomial::zero(), |acc, f| {
                &acc + &Polynomial::term(f.weight(), BigInt::from(1))
            });
            let g_sum = enumerate_g_variant(&lam, kind).fold(Polynomial::zero(), |acc, g| {
                &acc + &Polynomial::term(g.weight(), BigInt::from(1))
            });
            assert_eq!(f_sum, s.lhs.expand(), "{lam} {kind:?}");
            assert_eq!(g_sum, s.rhs.expand(), "{lam} {kind:?}");
        }
    }
}

#[test]
fn walks_stay_in_the_hook_of_their_terminal() {
    for lam in nonempty_up_to(5) {
        for f in enumerate_f(&lam) {
            let w = hook_walk_from_f(&f);
            let end = w.terminal();
            assert!(lam.is_outer_corner(end));
            assert_eq!(w.cells[0], Cell::new(1, 1));
            for c in &w.cells[..w.cells.len() - 1] {
                assert!(lam.contains(*c));
            }
            assert!(w.rows.iter().all(|&r| r <= end.row));
            assert!(w.cols.iter().all(|&s| s <= end.col));
        }
    }
}

#[test]
fn column_labels_encode_the_row_projection() {
    for lam in nonempty_up_to(5) {
        for f in enumerate_f(&lam) {
            let walk = hook_walk_from_f(&f);
            let g = phi(&f);
            let (r, s) = (g.outer_corner.row, g.outer_corner.col);
            for i in 1..r {
                let label = g.label(Cell::new(i, s)).unwrap();
                let high_y = label.axis == Axis::Y
                    && lam.row_len(i + 1) < label.index
                    && label.index <= lam.row_len(i);
                assert_eq!(
                    high_y,
                    walk.rows.contains(&(i + 1)),
                    "{lam} cell ({i},{s}) in {g}"
                );
            }
        }
    }
}

#[test]
fn trace_stages_are_consistent() {
    for lam in [p("321"), p("3211"), p("42")] {
        for f in enumerate_f(&lam).take(400) {
            let t = phi_trace(&f);
            assert_eq!(t.walk, hook_walk_from_f(&f));
            assert_eq!(t.result, phi(&f));
            assert_eq!(t.relabelled.outer_corner, t.result.outer_corner);
        }
    }
}

#[test]
fn sampled_checks_on_larger_shapes() {
    for lam in [p("66532"), p("5441"), p("7322")] {
        for kind in KINDS {
            let r = check_sampled(&lam, kind, 200, 31);
            assert!(r.passed(), "{lam} {kind:?}: {r:?}");
            assert_eq!(r.checked, 200);
        }
    }
}

#[test]
fn demo_round_trips() {
    let f = demo_arrangement();
    assert!(validate_f(&f));
    let g = phi(&f);
    assert!(validate_g(&g));
    assert_eq!(g.weight(), f.weight());
    assert_eq!(phi_inverse(&g), Some(f));
}

#[test]
fn text_format_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for lam in [p("321"), p("4431"), p("22")] {
        for kind in KINDS.into_iter().filter(|k| !k.variants(&lam).is_empty()) {
            let f = sample_f(&lam, kind, &mut rng);
            assert_eq!(f.to_string().parse::<ArrangementF>().unwrap(), f);
            let g = phi(&f);
            assert_eq!(g.to_string().parse::<ArrangementG>().unwrap(), g);
        }
    }
}

fn shape() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1i64..=6, 1..=5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_arrangements_round_trip(lam in shape(), k in 0usize..4, seed in any::<u64>()) {
        let kind = KINDS[k];
        prop_assume!(!kind.variants(&lam).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_f(&lam, kind, &mut rng);
        prop_assert!(validate_f(&f));
        let g = phi(&f);
        prop_assert!(validate_g(&g));
        prop_assert_eq!(g.weight(), f.weight());
        prop_assert_eq!(phi_inverse(&g), Some(f));
    }
}
