mod common;

use common::{arb_poly, cfg, parse_in, zero};
use jetinv::euler_lagrange::el_ode4;
use jetinv::jetspace::{LAGRANGIAN2_COORDS, ODE4_COORDS};
use jetinv::ode4::{classify_235, invariants_ode4, Ode4Error};
use jetinv::quasicontact::{
    lagrangian_c0_closed_form, monge_metric, null_family_lagrangian, symmetry_norm_ode4, QuasicontactError,
    C0_CLOSED_FORM_RATIO,
};
use jetinv::symexpr::{diff_n, Expr};
use proptest::prelude::*;

fn lag(text: &str, funcs: &[(&str, &[&str])]) -> Expr {
    parse_in(text, &LAGRANGIAN2_COORDS, funcs)
}

/// `9 c0 + 320 F_qq² g` with the constants taken from the stored ratio.
fn monge_identity(f: &Expr) -> Expr {
    let (n, d) = C0_CLOSED_FORM_RATIO;
    let c0 = invariants_ode4(&el_ode4(f, &cfg()).unwrap()).c0;
    let g = monge_metric(f, &cfg()).unwrap();
    Expr::int(d) * c0 + Expr::int(40 * n) * diff_n(f, &["q", "q"]).pow(2) * g
}

#[test]
fn symmetry_norm_examples() {
    assert!(symmetry_norm_ode4(&Expr::zero(), &cfg()).unwrap().null);
    let f = parse_in("4*r^2/(3*q)", &ODE4_COORDS, &[]);
    let n = symmetry_norm_ode4(&f, &cfg()).unwrap();
    assert!(!n.null);
    assert!(zero(&(n.c0 + parse_in("160/(81*q^2)", &ODE4_COORDS, &[]))));
    let g = parse_in("q*r", &ODE4_COORDS, &[]);
    assert!(matches!(symmetry_norm_ode4(&g, &cfg()), Err(Ode4Error::NotVariational { .. })));
}

#[test]
fn null_family_examples() {
    let z = Expr::zero();
    let l = null_family_lagrangian(&Expr::one(), &z, &z, &z, &cfg()).unwrap();
    assert!(zero(&(&l - Expr::var("q").pow(-1))));
    assert!(zero(&lagrangian_c0_closed_form(&l)));
    assert!(matches!(null_family_lagrangian(&z, &z, &z, &z, &cfg()), Err(QuasicontactError::DegenerateFamily)));

    let funcs: &[(&str, &[&str])] =
        &[("h1", &["x", "y", "p"]), ("h2", &["x", "y", "p"]), ("h3", &["x", "y", "p"]), ("h4", &["x", "y", "p"])];
    let hs = ["h1[]", "h2[]", "h3[]", "h4[]"].map(|s| lag(s, funcs));
    let l = null_family_lagrangian(&hs[0], &hs[1], &hs[2], &hs[3], &cfg()).unwrap();
    let f = el_ode4(&l, &cfg()).unwrap();
    assert!(symmetry_norm_ode4(&f, &cfg()).unwrap().null);
    assert!(zero(&monge_metric(&l, &cfg()).unwrap()));
}

#[test]
fn monge_examples() {
    assert!(zero(&monge_metric(&lag("q^2/2", &[]), &cfg()).unwrap()));
    assert!(matches!(monge_metric(&lag("p*q", &[]), &cfg()), Err(QuasicontactError::DegenerateMonge)));
}

#[test]
fn c0_of_euler_lagrange_equation_against_closed_form() {
    let l = lag("L[]", &[("L", &LAGRANGIAN2_COORDS)]);
    let c0 = invariants_ode4(&el_ode4(&l, &cfg()).unwrap()).c0;
    let closed = lagrangian_c0_closed_form(&l);
    let (n, d) = C0_CLOSED_FORM_RATIO;
    assert!(zero(&(Expr::int(d) * &c0 - Expr::int(n) * &closed)));
    assert!(!zero(&(&c0 - &closed)));
}

#[test]
fn opaque_monge_identity() {
    let f = lag("F[]", &[("F", &LAGRANGIAN2_COORDS)]);
    assert!(zero(&monge_identity(&f)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn monge_identity_for_polynomial_forms(base in arb_poly(&["y", "p", "q"], 2), extra in arb_poly(&["x", "q"], 3)) {
        let f = base + extra + Expr::var("q").pow(4);
        prop_assume!(!zero(&diff_n(&f, &["q", "q"])));
        prop_assert!(zero(&monge_identity(&f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn null_family_has_null_symmetry(h1 in arb_poly(&["x", "p"], 1), h2 in arb_poly(&["y", "p"], 1), h3 in arb_poly(&["x", "y"], 1), h4 in arb_poly(&["y", "p"], 2)) {
        prop_assume!(!zero(&h1));
        let l = null_family_lagrangian(&h1, &h2, &h3, &h4, &cfg()).unwrap();
        let cls = classify_235(&el_ode4(&l, &cfg()).unwrap(), &cfg()).unwrap();
        prop_assert!(cls.null_symmetry);
    }
}
