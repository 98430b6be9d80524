//! Euler–Lagrange equations of second-order Lagrangians `L(x,y,p,q)` and of
//! degenerate Lagrangians `L1 q¹ + L2 q² + L0` for pairs.

use thiserror::Error;

use crate::jetspace::free_total_derivative;
use crate::symexpr::{diff, diff_n, is_zero, substitute, substitute_all, Expr, ZeroTestConfig, ZeroTestError};

#[derive(Debug, Error)]
pub enum ElError {
    #[error("degenerate Lagrangian: {quantity} vanishes identically")]
    DegenerateLagrangian { quantity: &'static str },
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
}

/// Fourth-order Euler–Lagrange equation `y'''' = f` of `L(x,y,p,q)`.
pub fn el_ode4(l: &Expr, cfg: &ZeroTestConfig) -> Result<Expr, ElError> {
    let lqq = diff_n(l, &["q", "q"]);
    if is_zero(&lqq, cfg)?.is_zero() {
        return Err(ElError::DegenerateLagrangian { quantity: "L_qq" });
    }
    let d = free_total_derivative(&[(&["y", "p", "q", "r"], Expr::var("u"))]);
    let e = Expr::sum([diff(l, "y"), -d.apply(&diff(l, "p")), d.apply(&d.apply(&diff(l, "q")))]);
    // E is affine in u with slope L_qq
    Ok(-substitute(&e, "u", &Expr::zero()) / lqq)
}

/// The same right-hand side written out in partial derivatives of `L`.
pub fn el_ode4_closed_form(l: &Expr) -> Expr {
    let p = Expr::var("p");
    let q = Expr::var("q");
    let r = Expr::var("r");
    let dl = |vars: &[&str]| diff_n(l, vars);
    let d0_lqq = Expr::sum([dl(&["q", "q", "x"]), &p * dl(&["q", "q", "y"]), &q * dl(&["q", "q", "p"])]);
    let d0_lp = Expr::sum([dl(&["p", "x"]), &p * dl(&["p", "y"]), &q * dl(&["p", "p"])]);
    let d0d0_lq = Expr::sum([
        dl(&["q", "x", "x"]),
        Expr::int(2) * &p * dl(&["q", "x", "y"]),
        Expr::int(2) * &q * dl(&["q", "x", "p"]),
        p.pow(2) * dl(&["q", "y", "y"]),
        Expr::int(2) * &p * &q * dl(&["q", "y", "p"]),
        q.pow(2) * dl(&["q", "p", "p"]),
        &q * dl(&["q", "y"]),
    ]);
    let num = Expr::sum([
        dl(&["q", "q", "q"]) * r.pow(2),
        Expr::int(2) * &r * d0_lqq,
        dl(&["y"]),
        -d0_lp,
        d0d0_lq,
    ]);
    -num / dl(&["q", "q"])
}

/// Third-order pair `(f1, f2)` from `L = L1 q¹ + L2 q² + L0` with
/// `L1, L2, L0` functions of `(x, y1, y2, p1, p2)`.
pub fn el_pair3(l1: &Expr, l2: &Expr, l0: &Expr, cfg: &ZeroTestConfig) -> Result<(Expr, Expr), ElError> {
    let mu = diff(l1, "p2") - diff(l2, "p1");
    if is_zero(&mu, cfg)?.is_zero() {
        return Err(ElError::DegenerateLagrangian { quantity: "dL1/dp2 - dL2/dp1" });
    }
    let l = Expr::sum([l1 * Expr::var("q1"), l2 * Expr::var("q2"), l0.clone()]);
    let d = free_total_derivative(&[
        (&["y1", "p1", "q1"], Expr::var("r1")),
        (&["y2", "p2", "q2"], Expr::var("r2")),
    ]);
    let euler = |j: usize| {
        Expr::sum([
            diff(&l, &format!("y{j}")),
            -d.apply(&diff(&l, &format!("p{j}"))),
            d.apply(&d.apply(&diff(&l, &format!("q{j}")))),
        ])
    };
    // E_1 = μ r2 + G_1, E_2 = −μ r1 + G_2
    let at_rest = [("r1", Expr::zero()), ("r2", Expr::zero())];
    let g1 = substitute_all(&euler(1), &at_rest);
    let g2 = substitute_all(&euler(2), &at_rest);
    Ok((&g2 / &mu, -(g1 / mu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_expr, Scope};
    use crate::jetspace::{LAGRANGIAN2_COORDS, LAGRANGIAN_PAIR_COORDS};
    use crate::symexpr::{is_equal, FuncDecl};

    fn lag(s: &str) -> Expr {
        let scope = Scope::with_coords(&LAGRANGIAN2_COORDS).with(FuncDecl::new("L", &LAGRANGIAN2_COORDS));
        parse_expr(s, &scope).unwrap()
    }

    #[test]
    fn quadratic_lagrangians() {
        let cfg = ZeroTestConfig::default();
        assert!(is_zero(&el_ode4(&lag("q^2/2"), &cfg).unwrap(), &cfg).unwrap().is_zero());
        let f = el_ode4(&lag("q^2/2 + y^2/2"), &cfg).unwrap();
        assert!(is_equal(&f, &-Expr::var("y"), &cfg).unwrap().is_zero());
        assert!(matches!(el_ode4(&lag("p*q + y"), &cfg), Err(ElError::DegenerateLagrangian { .. })));
    }

    #[test]
    fn opaque_matches_closed_form() {
        let cfg = ZeroTestConfig::default();
        let l = lag("L[]");
        let f = el_ode4(&l, &cfg).unwrap();
        assert!(is_equal(&f, &el_ode4_closed_form(&l), &cfg).unwrap().is_zero());
    }

    #[test]
    fn trivial_pair() {
        let cfg = ZeroTestConfig::default();
        let (f1, f2) = el_pair3(&Expr::var("p2"), &-Expr::var("p1"), &Expr::zero(), &cfg).unwrap();
        assert!(is_zero(&f1, &cfg).unwrap().is_zero());
        assert!(is_zero(&f2, &cfg).unwrap().is_zero());
        let scope = Scope::with_coords(&LAGRANGIAN_PAIR_COORDS);
        let sym = parse_expr("p1 + p2", &scope).unwrap();
        assert!(el_pair3(&sym, &sym, &Expr::zero(), &cfg).is_err());
    }
}
