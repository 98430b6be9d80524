//! Adapted coframe of a scalar fourth-order ODE, its dual frame and coframe
//! derivatives.

use thiserror::Error;

use crate::jetspace::{JetContext, ODE4_COORDS};
use crate::symexpr::{diff, q, Expr, Normalizer, VectorField};

/// Coframe slots in row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Omega3,
    Omega2,
    Omega1,
    Omega0,
    Theta1,
}

impl Slot {
    pub const ALL: [Slot; 5] = [Slot::Omega3, Slot::Omega2, Slot::Omega1, Slot::Omega0, Slot::Theta1];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Overall scale applied to the unscaled θ¹ row so that the coframe
/// derivative `w0;1̄` matches the closed form on the `(q/p) g_p + g_y` family.
pub const THETA1_SCALE: (i64, i64) = (-8, 3);

/// Rows `(ω³, ω², ω¹, ω⁰, θ¹)` in the basis `(dx, dy, dp, dq, dr)`.
#[derive(Debug, Clone)]
pub struct Coframe {
    pub rows: [[Expr; 5]; 5],
}

/// Inverse of a coframe: `cols[j]` is the vector field dual to row `j`, in the
/// basis `(∂x, ∂y, ∂p, ∂q, ∂r)`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub cols: [[Expr; 5]; 5],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoframeError {
    #[error("singular coframe: no usable pivot in elimination step {step}")]
    Singular { step: usize },
}

fn contact_forms(f: &Expr) -> [[Expr; 5]; 5] {
    let z = Expr::zero;
    let o = Expr::one;
    let neg = |v: &str| -Expr::var(v);
    [
        [neg("p"), o(), z(), z(), z()],   // ρ³ = dy - p dx
        [neg("q"), z(), o(), z(), z()],   // ρ² = dp - q dx
        [neg("r"), z(), z(), o(), z()],   // ρ¹ = dq - r dx
        [o(), z(), z(), z(), z()],        // ρ⁰ = dx
        [-f.clone(), z(), z(), z(), o()], // σ¹ = dr - f dx
    ]
}

/// The adapted coframe, with coefficients expressed through `f` and its total
/// derivatives.
pub fn adapted_coframe_ode4(f: &Expr) -> Coframe {
    let ctx = JetContext::ode4(f);
    let d = |e: &Expr| ctx.total_derivative(e);
    let fr = diff(f, "r");
    let fq = diff(f, "q");
    let fp = diff(f, "p");
    let frr = diff(&fr, "r");
    let fqr = diff(&fq, "r");
    let dfr = d(&fr);
    let d2fr = d(&dfr);
    let dfq = d(&fq);
    let dfrr = d(&frr);

    // coefficients on (ρ³, ρ², ρ¹, ρ⁰, σ¹)
    let z = Expr::zero;
    let omega3 = [Expr::one(), z(), z(), z(), z()];
    let omega2 = [z(), Expr::one(), z(), z(), z()];
    let omega1 = [
        Expr::sum([q(-3, 20) * &dfr, q(9, 40) * &fq, q(11, 160) * fr.pow(2)]),
        q(1, 8) * &fr,
        q(-3, 4),
        z(),
        z(),
    ];
    let omega0 = [
        Expr::sum([q(-1, 15) * &dfrr, q(1, 30) * &fqr, q(-1, 180) * &fr * &frr]),
        q(1, 18) * &frr,
        z(),
        q(1, 3),
        z(),
    ];
    let theta1_unscaled = [
        Expr::sum([
            q(9, 80) * &d2fr,
            q(-9, 20) * &dfq,
            q(-9, 32) * &fr * &dfr,
            q(23, 320) * fr.pow(3),
            q(27, 80) * &fr * &fq,
            q(9, 8) * &fp,
        ]),
        Expr::sum([q(-27, 40) * &dfr, q(63, 40) * &fq, q(57, 160) * fr.pow(2)]),
        q(9, 8) * &fr,
        z(),
        q(-9, 4),
    ];
    let s = q(THETA1_SCALE.0, THETA1_SCALE.1);
    let theta1 = theta1_unscaled.map(|c| &s * &c);

    let basis = contact_forms(f);
    let expand = |coefs: &[Expr; 5]| -> [Expr; 5] {
        std::array::from_fn(|col| {
            Expr::sum(
                coefs
                    .iter()
                    .zip(basis.iter())
                    .filter(|(c, b)| !c.is_zero_const() && !b[col].is_zero_const())
                    .map(|(c, b)| c * &b[col])
                    .collect::<Vec<_>>(),
            )
        })
    };
    Coframe { rows: [expand(&omega3), expand(&omega2), expand(&omega1), expand(&omega0), expand(&theta1)] }
}

/// Gauss–Jordan elimination preferring constant pivots; entries are
/// normalized after every step so cancellations surface as constants.
pub fn invert_coframe(c: &Coframe) -> Result<Frame, CoframeError> {
    let mut norm = Normalizer::new();
    let mut m: Vec<Vec<Expr>> = c.rows.iter().map(|r| r.iter().map(|e| norm.normalize(e)).collect()).collect();
    let mut inv: Vec<Vec<Expr>> =
        (0..5).map(|i| (0..5).map(|j| if i == j { Expr::one() } else { Expr::zero() }).collect()).collect();
    let mut row_used = [false; 5];
    let mut col_used = [false; 5];
    let mut pivots = Vec::with_capacity(5);
    for step in 0..5 {
        let mut choice = None;
        for constant_only in [true, false] {
            'search: for i in (0..5).filter(|&i| !row_used[i]) {
                for j in (0..5).filter(|&j| !col_used[j]) {
                    let e = &m[i][j];
                    let ok = if constant_only { e.as_const().is_some() && !e.is_zero_const() } else { !e.is_zero_const() };
                    if ok {
                        choice = Some((i, j));
                        break 'search;
                    }
                }
            }
            if choice.is_some() {
                break;
            }
        }
        let (pi, pj) = choice.ok_or(CoframeError::Singular { step })?;
        row_used[pi] = true;
        col_used[pj] = true;
        pivots.push((pi, pj));
        let piv = m[pi][pj].clone();
        for k in 0..5 {
            m[pi][k] = norm.normalize(&(&m[pi][k] / &piv));
            inv[pi][k] = norm.normalize(&(&inv[pi][k] / &piv));
        }
        for i in (0..5).filter(|&i| i != pi) {
            let factor = m[i][pj].clone();
            if factor.is_zero_const() {
                continue;
            }
            for k in 0..5 {
                if k == pj {
                    m[i][k] = Expr::zero();
                } else if !m[pi][k].is_zero_const() {
                    m[i][k] = norm.normalize(&(&m[i][k] - &factor * &m[pi][k]));
                }
                if !inv[pi][k].is_zero_const() {
                    inv[i][k] = norm.normalize(&(&inv[i][k] - &factor * &inv[pi][k]));
                }
            }
        }
    }
    // E·M = P with P[pi][pj] = 1, hence M⁻¹ = Pᵀ E: row pj of M⁻¹ is row pi of E.
    let mut minv: Vec<Vec<Expr>> = vec![vec![Expr::zero(); 5]; 5];
    for &(pi, pj) in &pivots {
        minv[pj] = inv[pi].clone();
    }
    // column `slot` of M⁻¹ is the dual vector of coframe row `slot`
    Ok(Frame { cols: std::array::from_fn(|slot| std::array::from_fn(|k| minv[k][slot].clone())) })
}

impl Frame {
    pub fn vector_field(&self, slot: Slot) -> VectorField {
        let col = &self.cols[slot.index()];
        ODE4_COORDS.iter().zip(col.iter()).fold(VectorField::new(), |v, (name, c)| v.with(name, c.clone()))
    }
}

/// `e_{;slot}`: the derivative of `e` along the frame vector dual to `slot`.
pub fn coframe_derivative(fr: &Frame, e: &Expr, slot: Slot) -> Expr {
    fr.vector_field(slot).apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_expr, Scope};
    use crate::symexpr::{is_zero, ZeroTestConfig};

    fn ode4(s: &str) -> Expr {
        parse_expr(s, &Scope::with_coords(&ODE4_COORDS)).unwrap()
    }

    #[test]
    fn trivial_rows() {
        let c = adapted_coframe_ode4(&Expr::zero());
        let theta: Vec<String> = c.rows[4].iter().map(|e| e.to_string()).collect();
        assert_eq!(theta, ["0", "0", "0", "0", "6"]);
        let omega0: Vec<String> = c.rows[3].iter().map(|e| e.to_string()).collect();
        assert_eq!(omega0, ["1/3", "0", "0", "0", "0"]);
        let any = adapted_coframe_ode4(&ode4("r^2*q + x"));
        assert_eq!(any.rows[0][0], -Expr::var("p"));
        assert!(any.rows[0][1].is_one_const());
    }

    #[test]
    fn trivial_duals() {
        let fr = invert_coframe(&adapted_coframe_ode4(&Expr::zero())).unwrap();
        let th: Vec<String> = fr.cols[Slot::Theta1.index()].iter().map(|e| e.to_string()).collect();
        assert_eq!(th, ["0", "0", "0", "0", "1/6"]);
        let w0: Vec<String> = fr.cols[Slot::Omega0.index()].iter().map(|e| e.to_string()).collect();
        assert_eq!(w0, ["3", "3*p", "3*q", "3*r", "0"]);
        assert!(coframe_derivative(&fr, &Expr::var("q"), Slot::Theta1).is_zero_const());
        assert_eq!(coframe_derivative(&fr, &Expr::var("r"), Slot::Theta1), q(1, 6));
    }

    #[test]
    fn inverse_product_is_identity() {
        let cfg = ZeroTestConfig::default();
        let f = ode4("x*q^2 - 3*y*r^2 + p*q*r + 5*r - 7/2*q + p");
        let c = adapted_coframe_ode4(&f);
        let fr = invert_coframe(&c).unwrap();
        for (i, row) in c.rows.iter().enumerate() {
            for j in 0..5 {
                let pairing = Expr::sum((0..5).map(|k| &row[k] * &fr.cols[j][k]).collect::<Vec<_>>());
                let delta = if i == j { Expr::one() } else { Expr::zero() };
                assert!(is_zero(&(pairing - delta), &cfg).unwrap().is_zero(), "entry ({i},{j})");
            }
        }
        // the dual of θ¹ is a constant multiple of ∂r for every f
        let th = &fr.cols[Slot::Theta1.index()];
        assert!(th[..4].iter().all(|e| e.is_zero_const()));
        assert_eq!(th[4], q(1, 6));
    }
}
