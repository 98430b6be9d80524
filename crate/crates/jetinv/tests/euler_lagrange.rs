mod common;

use common::{arb_poly, cfg, parse_in, zero};
use jetinv::euler_lagrange::{el_ode4, el_ode4_closed_form, el_pair3, ElError};
use jetinv::jetspace::{LAGRANGIAN2_COORDS, LAGRANGIAN_PAIR_COORDS};
use jetinv::symexpr::{diff, diff_n, Expr};
use proptest::prelude::*;

fn lag(text: &str) -> Expr {
    parse_in(text, &LAGRANGIAN2_COORDS, &[("L", &LAGRANGIAN2_COORDS)])
}

/// `D₀ = ∂x + p∂y + q∂p`.
fn truncated_total_derivative(e: &Expr) -> Expr {
    diff(e, "x") + Expr::var("p") * diff(e, "y") + Expr::var("q") * diff(e, "p")
}

#[test]
fn quadratic_examples() {
    assert!(zero(&el_ode4(&lag("q^2/2"), &cfg()).unwrap()));
    let f = el_ode4(&lag("q^2/2 + y^2/2"), &cfg()).unwrap();
    assert!(zero(&(f + Expr::var("y"))));
    assert!(matches!(el_ode4(&lag("p*q + y"), &cfg()), Err(ElError::DegenerateLagrangian { .. })));
}

#[test]
fn opaque_lagrangian_matches_closed_form() {
    let l = lag("L[]");
    let f = el_ode4(&l, &cfg()).unwrap();
    assert!(zero(&(f - el_ode4_closed_form(&l))));
}

#[test]
fn trivial_pair_lagrangian() {
    let (f1, f2) = el_pair3(&Expr::var("p2"), &-Expr::var("p1"), &Expr::zero(), &cfg()).unwrap();
    assert!(zero(&f1) && zero(&f2));
    let sym = parse_in("p1 + p2", &LAGRANGIAN_PAIR_COORDS, &[]);
    assert!(matches!(el_pair3(&sym, &sym, &Expr::zero(), &cfg()), Err(ElError::DegenerateLagrangian { .. })));
}

#[test]
fn degenerate_pair_lagrangian_has_common_denominator() {
    let funcs: &[(&str, &[&str])] = &[("g", &["p1", "p2"]), ("h", &["p1", "p2"])];
    let g = parse_in("g[]", &LAGRANGIAN_PAIR_COORDS, funcs);
    let h = parse_in("h[]", &LAGRANGIAN_PAIR_COORDS, funcs);
    let (f1, f2) = el_pair3(&g, &h, &Expr::zero(), &cfg()).unwrap();
    let mu = diff(&g, "p2") - diff(&h, "p1");
    // both right-hand sides are quadratic in q with the single denominator mu
    for f in [&f1, &f2] {
        let numer = f * &mu;
        assert!(zero(&diff_n(&numer, &["q1", "q1", "q1"])));
        assert!(zero(&diff_n(&numer, &["q2", "q2", "q2"])));
        assert!(zero(&diff_n(&numer, &["q1", "q1", "q2"])));
    }
    assert!(!zero(&f1) || !zero(&f2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn at_most_quadratic_in_r(l in arb_poly(&["y", "p", "q"], 3)) {
        let l = l + Expr::var("q").pow(2);
        if let Ok(f) = el_ode4(&l, &cfg()) {
            prop_assert!(zero(&diff_n(&f, &["r", "r", "r"])));
        }
    }

    #[test]
    fn divergence_equivalent_lagrangians_agree(
        l in arb_poly(&["x", "p", "q"], 2),
        big_f in arb_poly(&["x", "y", "p"], 2),
        c in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let l = l + Expr::var("q").pow(3) + Expr::var("y") * Expr::var("q").pow(2);
        let other = Expr::int(c) * &l + truncated_total_derivative(&big_f);
        let f = el_ode4(&l, &cfg()).unwrap();
        let g = el_ode4(&other, &cfg()).unwrap();
        prop_assert!(zero(&(f - g)));
    }
}
