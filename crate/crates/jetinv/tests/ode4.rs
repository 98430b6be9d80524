mod common;

use common::{arb_poly, cfg, parse_in, zero};
use jetinv::euler_lagrange::el_ode4;
use jetinv::jetspace::{LAGRANGIAN2_COORDS, ODE4_COORDS};
use jetinv::ode4::{
    binary_quartic_multiplicity, cartan_quartic, classify_235, invariants_ode4, is_variational_ode4, w0_bar_derivatives,
    Multiplicity, Ode4Error, Ode4Invariants, Variationality,
};
use jetinv::quasicontact::null_family_lagrangian;
use jetinv::symexpr::{substitute_all, Expr, Rational};
use proptest::prelude::*;

fn ode(text: &str) -> Expr {
    parse_in(text, &ODE4_COORDS, &[])
}

fn lag(text: &str, funcs: &[(&str, &[&str])]) -> Expr {
    parse_in(text, &LAGRANGIAN2_COORDS, funcs)
}

fn pattern(inv: &Ode4Invariants) -> [bool; 4] {
    [zero(&inv.c1), zero(&inv.c0), zero(&inv.w1), zero(&inv.w0)]
}

/// `f` rewritten for the equation satisfied by the inverse function `x(y)`.
fn hodograph(f: &Expr) -> Expr {
    let v = |s: &str| Expr::var(s);
    let (p, qv, r) = (v("p"), v("q"), v("r"));
    let moved = substitute_all(
        f,
        &[
            ("x", v("y")),
            ("y", v("x")),
            ("p", p.pow(-1)),
            ("q", -(&qv / p.pow(3))),
            ("r", (Expr::int(3) * qv.pow(2) - &p * &r) / p.pow(5)),
        ],
    );
    Expr::int(10) * &qv * &r / &p - Expr::int(15) * qv.pow(3) / p.pow(2) - p.pow(5) * moved
}

#[test]
fn trivial_and_submaximal_invariants() {
    let inv = invariants_ode4(&Expr::zero());
    assert_eq!(pattern(&inv), [true; 4]);
    let inv = invariants_ode4(&ode("4*r^2/(3*q)"));
    assert!(zero(&inv.c1) && zero(&inv.w1) && zero(&inv.w0));
    assert!(zero(&(&inv.c0 + ode("160/(81*q^2)"))));
}

#[test]
fn flat_hodograph_oracle() {
    let f = hodograph(&Expr::zero());
    assert!(zero(&(&f - ode("10*q*r/p - 15*q^3/p^2"))));
    assert_eq!(pattern(&invariants_ode4(&f)), [true; 4]);
}

#[test]
fn euler_lagrange_equations_are_variational() {
    let l = lag("L[]", &[("L", &LAGRANGIAN2_COORDS)]);
    let f = el_ode4(&l, &cfg()).unwrap();
    let inv = invariants_ode4(&f);
    assert!(zero(&inv.c1) && zero(&inv.w1));
    assert!(is_variational_ode4(&f, &cfg()).unwrap().is_variational());
}

#[test]
fn variationality_examples() {
    assert!(is_variational_ode4(&Expr::zero(), &cfg()).unwrap().is_variational());
    assert!(is_variational_ode4(&ode("4*r^2/(3*q)"), &cfg()).unwrap().is_variational());
    // y'''' = y'''² comes from L = exp(-y''), so it is variational
    assert!(is_variational_ode4(&ode("r^2"), &cfg()).unwrap().is_variational());
    match is_variational_ode4(&ode("q*r"), &cfg()).unwrap() {
        Variationality::NotVariational { invariant, .. } => assert_eq!(invariant, "w1"),
        Variationality::Variational => panic!("q*r is not variational"),
    }
    match is_variational_ode4(&ode("r^3"), &cfg()).unwrap() {
        Variationality::NotVariational { invariant, .. } => assert_eq!(invariant, "c1"),
        Variationality::Variational => panic!("r^3 is not variational"),
    }
}

#[test]
fn quartic_examples() {
    let qc = cartan_quartic(&Expr::zero(), &cfg()).unwrap();
    assert!(qc.a.iter().all(zero));
    assert!(matches!(cartan_quartic(&ode("q*r"), &cfg()), Err(Ode4Error::NotVariational { .. })));
    let g = &[("g", &["y", "p"][..])];
    let f = parse_in("(q/p)*g[p] + g[y]", &ODE4_COORDS, g);
    let bars = w0_bar_derivatives(&f, 2).unwrap();
    assert!(zero(&bars[2]));
}

#[test]
fn fifth_bar_derivative_vanishes_for_variational_equations() {
    for text in ["q^3 + p*q^2", "q^4 + y*q^2"] {
        let l = lag(text, &[]);
        let f = el_ode4(&l, &cfg()).unwrap();
        let bars = w0_bar_derivatives(&f, 5).unwrap();
        assert!(zero(&bars[5]), "{text}");
    }
}

#[test]
fn multiplicity_examples() {
    let r = |v: [i64; 5]| -> [Rational; 5] { v.map(|k| Rational::from_integer(k.into())) };
    assert_eq!(binary_quartic_multiplicity(&r([0; 5])), Multiplicity::Infinite);
    assert_eq!(binary_quartic_multiplicity(&r([1, 0, 0, 0, 0])), Multiplicity::Finite(4));
    assert_eq!(binary_quartic_multiplicity(&r([0, 0, 1, 0, 0])), Multiplicity::Finite(2));
    assert_eq!(binary_quartic_multiplicity(&r([0, 0, 0, 0, 1])), Multiplicity::Finite(4));
    // (t - 1)^3 (t + 1) = t^4 - 2t^3 + 2t - 1
    assert_eq!(
        binary_quartic_multiplicity(&[
            Rational::from_integer(1.into()),
            Rational::new((-1).into(), 2.into()),
            Rational::from_integer(0.into()),
            Rational::new(1.into(), 2.into()),
            Rational::from_integer((-1).into()),
        ]),
        Multiplicity::Finite(3)
    );
}

#[test]
fn classification_examples() {
    let hs = ["h1", "h2", "h3", "h4"].map(|h| lag(&format!("{h}[]"), &[(h, &["x", "y", "p"])]));
    let l = null_family_lagrangian(&hs[0], &hs[1], &hs[2], &hs[3], &cfg()).unwrap();
    let f = el_ode4(&l, &cfg()).unwrap();
    let cls = classify_235(&f, &cfg()).unwrap();
    assert!(cls.variational && cls.null_symmetry);

    let g = &[("g", &["y", "p"][..])];
    let f = parse_in("(q/p)*g[p] + g[y]", &ODE4_COORDS, g);
    let cls = classify_235(&f, &cfg()).unwrap();
    assert!(cls.descends_to_j2 && !cls.holonomy_reduced);

    let h = &[("h1", &["y"][..]), ("h2", &["y"][..])];
    let g = parse_in("h1[]*p^2 + h2[]", &ODE4_COORDS, h);
    let f = &Expr::var("q") / Expr::var("p") * jetinv::symexpr::diff(&g, "p") + jetinv::symexpr::diff(&g, "y");
    let cls = classify_235(&f, &cfg()).unwrap();
    assert!(cls.holonomy_reduced);
    assert!(cls.multiplicities.iter().all(|(_, m)| m.at_least(4)));
}

#[test]
fn c0_zero_forces_third_bar_derivative_to_vanish() {
    let l = lag("1/(q + p) + q*x*y + p^2", &[]);
    let f = el_ode4(&l, &cfg()).unwrap();
    assert!(zero(&invariants_ode4(&f).c0));
    let bars = w0_bar_derivatives(&f, 3).unwrap();
    assert!(zero(&bars[3]));
}

#[test]
fn hodograph_preserves_vanishing_pattern() {
    for text in ["0", "4*r^2/(3*q)", "r^2", "q*r", "r^3", "y", "x*r", "q^2"] {
        let f = ode(text);
        let a = pattern(&invariants_ode4(&f));
        let b = pattern(&invariants_ode4(&hodograph(&f)));
        assert_eq!(a, b, "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicity_is_scale_invariant(a in prop::array::uniform5(-3i64..=3), num in -9i64..=9, den in 1i64..=9) {
        prop_assume!(num != 0);
        let lambda = Rational::new(num.into(), den.into());
        let base = a.map(|k| Rational::from_integer(k.into()));
        let scaled = base.clone().map(|k| k * &lambda);
        prop_assert_eq!(binary_quartic_multiplicity(&base), binary_quartic_multiplicity(&scaled));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn null_family_with_polynomial_data(h1 in arb_poly(&["x", "y", "p"], 1), h2 in arb_poly(&["x", "y", "p"], 1), h4 in arb_poly(&["x", "y", "p"], 2)) {
        prop_assume!(!zero(&h1));
        let l = null_family_lagrangian(&h1, &h2, &Expr::var("x"), &h4, &cfg()).unwrap();
        let f = el_ode4(&l, &cfg()).unwrap();
        let cls = classify_235(&f, &cfg()).unwrap();
        prop_assert!(cls.variational && cls.null_symmetry);
    }
}
