mod common;

use common::{arb_poly, cfg, parse_in, zero};
use jetinv::euler_lagrange::el_pair3;
use jetinv::jetspace::{LAGRANGIAN_PAIR_COORDS, PAIR_COORDS};
use jetinv::ode4::Variationality;
use jetinv::pair::{invariants_pair, is_variational_pair, pair_building_blocks, pair_symmetry_nullity, PairInvariants};
use jetinv::symexpr::{substitute_all, Expr};
use proptest::prelude::*;

fn pair(text: &str) -> Expr {
    parse_in(text, &PAIR_COORDS, &[])
}

fn pattern(inv: &PairInvariants) -> Vec<bool> {
    inv.named().into_iter().map(|(_, e)| zero(e)).collect()
}

fn swap_indices(e: &Expr) -> Expr {
    let v = Expr::var;
    substitute_all(
        e,
        &[("y1", v("y2")), ("y2", v("y1")), ("p1", v("p2")), ("p2", v("p1")), ("q1", v("q2")), ("q2", v("q1"))],
    )
}

/// Position of each component after relabeling 1 <-> 2.
const RELABEL: [usize; 15] = [3, 2, 1, 0, 6, 5, 4, 7, 10, 9, 8, 11, 14, 13, 12];

fn relabeled_pattern_matches(f1: &Expr, f2: &Expr) -> bool {
    let before = pattern(&invariants_pair(f1, f2));
    let after = pattern(&invariants_pair(&swap_indices(f2), &swap_indices(f1)));
    (0..15).all(|k| before[k] == after[RELABEL[k]])
}

#[test]
fn trivial_pair_blocks_vanish() {
    let z = Expr::zero();
    let blk = pair_building_blocks(&z, &z);
    let all = blk.e.iter().flatten().flatten().chain(blk.e_ring.iter().flatten().flatten());
    assert!(all.chain(blk.f.iter().flatten()).chain(blk.g.iter().flatten()).chain(blk.h.iter().flatten()).all(zero));
    assert!(pattern(&invariants_pair(&z, &z)).into_iter().all(|b| b));
    assert!(is_variational_pair(&z, &z, &cfg()).unwrap().is_variational());
}

#[test]
fn second_partials_of_a_square() {
    let blk = pair_building_blocks(&pair("q1^2"), &Expr::zero());
    assert_eq!(blk.e[0][0][0], Expr::int(2));
    assert!(blk.e.iter().flatten().flatten().skip(1).all(zero));
}

#[test]
fn cubic_pair_is_not_variational() {
    match is_variational_pair(&pair("q1^3"), &Expr::zero(), &cfg()).unwrap() {
        Variationality::NotVariational { invariant, .. } => assert!(invariant.starts_with("b1")),
        Variationality::Variational => panic!("expected a b1 witness"),
    }
    let rep = pair_symmetry_nullity(&pair("q1^3"), &Expr::zero(), &cfg()).unwrap();
    assert!(rep.b50_zero);
    assert_eq!(rep.null_symmetry, None);
}

#[test]
fn flat_pair_has_vanishing_variational_part() {
    let (f1, f2) = (pair("3*q1^2/p1"), pair("3*q1*q2/p1"));
    let inv = invariants_pair(&f1, &f2);
    assert!(inv.variational_part().iter().all(|(_, e)| zero(e)));
    assert!(inv.b4.iter().all(zero));
    assert_eq!(pair_symmetry_nullity(&f1, &f2, &cfg()).unwrap().null_symmetry, Some(true));
}

#[test]
fn degenerate_lagrangian_family() {
    let funcs: &[(&str, &[&str])] = &[("g", &["p1", "p2"]), ("h", &["p1", "p2"])];
    let g = parse_in("g[]", &LAGRANGIAN_PAIR_COORDS, funcs);
    let h = parse_in("h[]", &LAGRANGIAN_PAIR_COORDS, funcs);
    let (f1, f2) = el_pair3(&g, &h, &Expr::zero(), &cfg()).unwrap();
    let blk = pair_building_blocks(&f1, &f2);
    assert!(blk.e_ring.iter().flatten().flatten().all(zero));
    let inv = invariants_pair(&f1, &f2);
    assert!(inv.variational_part().iter().all(|(_, e)| zero(e)));
    assert!(zero(&inv.b5));
    assert!(!inv.b4.iter().all(zero));
}

#[test]
fn opaque_lagrangians_give_variational_pairs() {
    let funcs: &[(&str, &[&str])] =
        &[("L1", &LAGRANGIAN_PAIR_COORDS), ("L2", &LAGRANGIAN_PAIR_COORDS), ("L0", &LAGRANGIAN_PAIR_COORDS)];
    let [l1, l2, l0] = ["L1[]", "L2[]", "L0[]"].map(|s| parse_in(s, &LAGRANGIAN_PAIR_COORDS, funcs));
    let (f1, f2) = el_pair3(&l1, &l2, &l0, &cfg()).unwrap();
    assert!(is_variational_pair(&f1, &f2, &cfg()).unwrap().is_variational());
}

#[test]
fn relabeling_on_structured_pairs() {
    for (a, b) in [("q1^3", "0"), ("q1^2", "q1*q2"), ("p1*q2^2", "y1"), ("3*q1^2/p1", "3*q1*q2/p1"), ("q2^3 + x", "q1*p2")] {
        assert!(relabeled_pattern_matches(&pair(a), &pair(b)), "({a}, {b})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn polynomial_lagrangians_give_variational_pairs(
        l1 in arb_poly(&["y1", "p1", "p2"], 2),
        l2 in arb_poly(&["x", "y2", "p1"], 2),
        l0 in arb_poly(&["y1", "y2", "p2"], 2),
    ) {
        let l1 = l1 + Expr::var("p2");
        match el_pair3(&l1, &l2, &l0, &cfg()) {
            Ok((f1, f2)) => {
                let inv = invariants_pair(&f1, &f2);
                prop_assert!(zero(&inv.b2[1]));
                prop_assert!(inv.variational_part().iter().all(|(_, e)| zero(e)));
            }
            Err(_) => prop_assume!(false),
        }
    }

    #[test]
    fn relabeling_permutes_components(f1 in arb_poly(&["p1", "q1", "q2"], 2), f2 in arb_poly(&["y1", "q1", "q2"], 2)) {
        prop_assert!(relabeled_pattern_matches(&f1, &f2));
    }
}
