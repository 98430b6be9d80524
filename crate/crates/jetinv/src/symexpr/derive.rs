use std::collections::HashMap;
use std::sync::Arc;

use super::expr::{Expr, Node};

/// A derivation `Σ cᵢ ∂/∂vᵢ` over named coordinates. Jet symbols are
/// differentiated through the chain rule on their declared arguments.
#[derive(Debug, Clone, Default)]
pub struct VectorField {
    comps: Vec<(Arc<str>, Expr)>,
}

impl VectorField {
    pub fn new() -> VectorField {
        VectorField::default()
    }

    /// Adds the component `coeff · ∂/∂var`; zero coefficients are dropped.
    pub fn with(mut self, var: &str, coeff: Expr) -> VectorField {
        if !coeff.is_zero_const() {
            self.comps.push((Arc::from(var), coeff));
        }
        self
    }

    pub fn partial(var: &str) -> VectorField {
        VectorField::new().with(var, Expr::one())
    }

    pub fn coefficient(&self, var: &str) -> Option<&Expr> {
        self.comps.iter().find(|(v, _)| &**v == var).map(|(_, c)| c)
    }

    pub fn components(&self) -> &[(Arc<str>, Expr)] {
        &self.comps
    }

    pub fn apply(&self, e: &Expr) -> Expr {
        let mut memo = HashMap::new();
        self.go(e, &mut memo)
    }

    fn go(&self, e: &Expr, memo: &mut HashMap<*const (), Expr>) -> Expr {
        if let Some(d) = memo.get(&e.key()) {
            return d.clone();
        }
        let d = match e.node() {
            Node::Const(_) => Expr::zero(),
            Node::Var(v) => self.coefficient(v).cloned().unwrap_or_else(Expr::zero),
            Node::Jet(j) => {
                let mut terms = Vec::new();
                for (pos, arg) in j.func().args().iter().enumerate() {
                    if let Some(c) = self.coefficient(arg) {
                        terms.push(c * &Expr::jet(j.extend(pos)));
                    }
                }
                Expr::sum(terms)
            }
            Node::Add(ts) => Expr::sum(ts.iter().map(|t| self.go(t, memo)).collect::<Vec<_>>()),
            Node::Mul(fs) => {
                let ds: Vec<Expr> = fs.iter().map(|f| self.go(f, memo)).collect();
                let mut terms = Vec::new();
                for (i, di) in ds.iter().enumerate() {
                    if di.is_zero_const() {
                        continue;
                    }
                    let mut factors = Vec::with_capacity(fs.len());
                    for (j, f) in fs.iter().enumerate() {
                        factors.push(if i == j { di.clone() } else { f.clone() });
                    }
                    terms.push(Expr::product(factors));
                }
                Expr::sum(terms)
            }
            Node::Pow(b, k) => {
                let db = self.go(b, memo);
                if db.is_zero_const() {
                    Expr::zero()
                } else {
                    Expr::product([Expr::int(*k), b.pow(k - 1), db])
                }
            }
            Node::Div(a, b) => {
                // (a/b)' = (a' - (a/b) b') / b
                let da = self.go(a, memo);
                let db = self.go(b, memo);
                if db.is_zero_const() {
                    &da / b
                } else {
                    (da - e * &db) / b
                }
            }
        };
        memo.insert(e.key(), d.clone());
        d
    }
}

/// Partial derivative with respect to a coordinate.
pub fn diff(e: &Expr, v: &str) -> Expr {
    VectorField::partial(v).apply(e)
}

/// Repeated partial derivative, left to right.
pub fn diff_n(e: &Expr, vars: &[&str]) -> Expr {
    vars.iter().fold(e.clone(), |acc, v| diff(&acc, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{q, FuncDecl, JetSymbol};

    #[test]
    fn leibniz_on_jet() {
        let f = FuncDecl::new("f", &["x", "y", "p", "q", "r"]);
        let qv = Expr::var("q");
        let fq = Expr::jet(JetSymbol::new(&f, &["q"]).unwrap());
        let fqq = Expr::jet(JetSymbol::new(&f, &["q", "q"]).unwrap());
        let d = diff(&(&qv * &fq), "q");
        assert_eq!(d, fq.clone() + &qv * &fqq);
    }

    #[test]
    fn unrelated_jet_vanishes() {
        let g = FuncDecl::new("g", &["y", "p"]);
        let e = Expr::jet(JetSymbol::value(&g));
        assert!(diff(&e, "x").is_zero_const());
        assert!(diff(&q(5, 3), "y").is_zero_const());
    }
}
