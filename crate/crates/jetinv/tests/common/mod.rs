#![allow(dead_code)]

use jetinv::frontend::{parse_expr, Scope};
use jetinv::symexpr::{is_zero, Expr, FuncDecl, ZeroTestConfig};
use proptest::prelude::*;

pub fn cfg() -> ZeroTestConfig {
    ZeroTestConfig::default()
}

pub fn zero(e: &Expr) -> bool {
    is_zero(e, &cfg()).unwrap().is_zero()
}

pub fn parse_in(text: &str, coords: &[&str], funcs: &[(&str, &[&str])]) -> Expr {
    let mut scope = Scope::with_coords(coords);
    for (name, args) in funcs {
        scope.declare(FuncDecl::new(name, args));
    }
    parse_expr(text, &scope).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Random expressions over `vars` built from small integers, sums,
/// products, small powers and quotients by never-vanishing denominators.
pub fn arb_expr(vars: &'static [&'static str], depth: u32) -> BoxedStrategy<Expr> {
    let leaf = prop_oneof![
        (-5i64..=5).prop_map(Expr::int),
        prop::sample::select(vars).prop_map(Expr::var),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), 0i64..=3).prop_map(|(a, k)| a.pow(k)),
            (inner.clone(), inner).prop_map(|(a, b)| a / (&b * &b + Expr::one())),
        ]
    })
    .boxed()
}

/// Random polynomial in `vars` with small integer coefficients.
pub fn arb_poly(vars: &'static [&'static str], max_deg: u32) -> BoxedStrategy<Expr> {
    let monomial = (
        -4i64..=4,
        prop::collection::vec(0..=max_deg as i64, vars.len()),
    )
        .prop_map(move |(c, exps)| {
            let mut factors = vec![Expr::int(c)];
            for (v, k) in vars.iter().zip(exps) {
                factors.push(Expr::var(v).pow(k));
            }
            Expr::product(factors)
        });
    prop::collection::vec(monomial, 1..5).prop_map(Expr::sum).boxed()
}
