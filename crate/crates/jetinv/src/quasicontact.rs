//! Quantities attached to the quasi-contactification of a variational
//! fourth-order ODE: the norm of the transversal symmetry, the Monge-form
//! metric component and the Lagrangians with a null symmetry.

use thiserror::Error;

use crate::ode4::{invariants_ode4, Ode4Error};
use crate::symexpr::{diff_n, is_zero, q, Expr, Verdict, Witness, ZeroTestConfig, ZeroTestError};

#[derive(Debug, Error)]
pub enum QuasicontactError {
    #[error("degenerate Monge form: F_qq vanishes identically")]
    DegenerateMonge,
    #[error("degenerate family: h1 vanishes identically")]
    DegenerateFamily,
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
}

#[derive(Debug, Clone)]
pub struct SymmetryNorm {
    pub c0: Expr,
    pub null: bool,
    pub witness: Option<Box<Witness>>,
}

/// `c0` together with its zero verdict; the symmetry is null iff `c0 = 0`.
pub fn symmetry_norm_ode4(f: &Expr, cfg: &ZeroTestConfig) -> Result<SymmetryNorm, Ode4Error> {
    let inv = invariants_ode4(f);
    for (name, e) in [("c1", &inv.c1), ("w1", &inv.w1)] {
        if let Verdict::NonZero(witness) = is_zero(e, cfg)? {
            return Err(Ode4Error::NotVariational { invariant: name, witness });
        }
    }
    Ok(match is_zero(&inv.c0, cfg)? {
        Verdict::Zero => SymmetryNorm { c0: inv.c0, null: true, witness: None },
        Verdict::NonZero(w) => SymmetryNorm { c0: inv.c0, null: false, witness: Some(w) },
    })
}

/// `g̃(∂z, ∂z)` for the Monge form `z' = F(x,y,p,q)`.
pub fn monge_metric(f: &Expr, cfg: &ZeroTestConfig) -> Result<Expr, QuasicontactError> {
    let f2 = diff_n(f, &["q", "q"]);
    if is_zero(&f2, cfg)?.is_zero() {
        return Err(QuasicontactError::DegenerateMonge);
    }
    let f3 = diff_n(&f2, &["q"]);
    let f4 = diff_n(&f3, &["q"]);
    let bracket = Expr::int(4) * f3.pow(2) - Expr::int(3) * &f2 * f4;
    Ok(q(-1, 40) * bracket / f2.pow(4))
}

/// `(4 L_qqq² − 3 L_qqqq L_qq) / L_qq²`, the bracket shared by `c0` of the
/// Euler–Lagrange equation and the Monge metric.
pub fn lagrangian_c0_closed_form(l: &Expr) -> Expr {
    let l2 = diff_n(l, &["q", "q"]);
    let l3 = diff_n(&l2, &["q"]);
    let l4 = diff_n(&l3, &["q"]);
    (Expr::int(4) * l3.pow(2) - Expr::int(3) * l4 * &l2) / l2.pow(2)
}

/// `c0(el_ode4(L)) = C0_CLOSED_FORM_RATIO · lagrangian_c0_closed_form(L)`.
pub const C0_CLOSED_FORM_RATIO: (i64, i64) = (8, 9);

/// `L = h1/(h2 + q) + q h3 + h4`.
pub fn null_family_lagrangian(
    h1: &Expr,
    h2: &Expr,
    h3: &Expr,
    h4: &Expr,
    cfg: &ZeroTestConfig,
) -> Result<Expr, QuasicontactError> {
    if is_zero(h1, cfg)?.is_zero() {
        return Err(QuasicontactError::DegenerateFamily);
    }
    let qv = Expr::var("q");
    Ok(Expr::sum([h1 / &(h2 + &qv), &qv * h3, h4.clone()]))
}
