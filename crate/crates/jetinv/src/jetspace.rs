//! Jet coordinates and total derivatives on solution manifolds.

use crate::symexpr::{Expr, VectorField};

pub const ODE4_COORDS: [&str; 5] = ["x", "y", "p", "q", "r"];
pub const PAIR_COORDS: [&str; 7] = ["x", "y1", "y2", "p1", "p2", "q1", "q2"];
pub const LAGRANGIAN2_COORDS: [&str; 4] = ["x", "y", "p", "q"];
pub const LAGRANGIAN_PAIR_COORDS: [&str; 5] = ["x", "y1", "y2", "p1", "p2"];

/// `y'''' = f(x,y,p,q,r)` or the pair `y_i''' = f_i(x,y,p,q)`.
#[derive(Debug, Clone)]
pub enum JetContext {
    Ode4 { f: Expr, d: VectorField },
    Ode3Pair { f: [Expr; 2], d: VectorField },
}

impl JetContext {
    pub fn ode4(f: &Expr) -> JetContext {
        JetContext::Ode4 { f: f.clone(), d: ode4_field(f) }
    }

    pub fn pair(f1: &Expr, f2: &Expr) -> JetContext {
        let d = VectorField::new()
            .with("x", Expr::one())
            .with("y1", Expr::var("p1"))
            .with("y2", Expr::var("p2"))
            .with("p1", Expr::var("q1"))
            .with("p2", Expr::var("q2"))
            .with("q1", f1.clone())
            .with("q2", f2.clone());
        JetContext::Ode3Pair { f: [f1.clone(), f2.clone()], d }
    }

    pub fn coords(&self) -> &'static [&'static str] {
        match self {
            JetContext::Ode4 { .. } => &ODE4_COORDS,
            JetContext::Ode3Pair { .. } => &PAIR_COORDS,
        }
    }

    pub fn field(&self) -> &VectorField {
        match self {
            JetContext::Ode4 { d, .. } | JetContext::Ode3Pair { d, .. } => d,
        }
    }

    pub fn total_derivative(&self, e: &Expr) -> Expr {
        self.field().apply(e)
    }

    /// `D^n e`.
    pub fn total_derivative_n(&self, e: &Expr, n: usize) -> Expr {
        (0..n).fold(e.clone(), |acc, _| self.total_derivative(&acc))
    }
}

/// `D = ∂x + p∂y + q∂p + r∂q + f∂r`.
fn ode4_field(f: &Expr) -> VectorField {
    VectorField::new()
        .with("x", Expr::one())
        .with("y", Expr::var("p"))
        .with("p", Expr::var("q"))
        .with("q", Expr::var("r"))
        .with("r", f.clone())
}

/// Total derivative on a free jet: `coords[k+1]` is the derivative of
/// `coords[k]` within each chain, and the last entry of each chain maps to `top`.
pub fn free_total_derivative(chains: &[(&[&str], Expr)]) -> VectorField {
    let mut d = VectorField::new().with("x", Expr::one());
    for (chain, top) in chains {
        for w in chain.windows(2) {
            d = d.with(w[0], Expr::var(w[1]));
        }
        if let Some(last) = chain.last() {
            d = d.with(last, top.clone());
        }
    }
    d
}
