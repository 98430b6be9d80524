use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::expr::{Expr, Leaf, Node};

// Precedence levels: sum < product/quotient < power operand.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const ATOM: u8 = 4;

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

impl Expr {
    /// Pretty-prints unless the unshared tree exceeds `max_nodes`.
    pub fn display_capped(&self, max_nodes: u64) -> String {
        let n = self.tree_size();
        if n > max_nodes {
            format!("<expression with {} DAG nodes, {} tree nodes>", self.dag_size(), n)
        } else {
            self.to_string()
        }
    }
}

fn level(e: &Expr) -> u8 {
    match e.node() {
        Node::Const(c) => {
            if c.is_negative() || !c.denom().is_one() {
                PRODUCT
            } else {
                ATOM
            }
        }
        Node::Var(_) | Node::Jet(_) => ATOM,
        Node::Pow(..) => 3,
        Node::Mul(_) | Node::Div(..) => PRODUCT,
        Node::Add(_) => SUM,
    }
}

fn write_wrapped<W: Write>(w: &mut W, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        w.write_char('(')?;
        write_expr(w, e, 0)?;
        w.write_char(')')
    } else {
        write_expr(w, e, min)
    }
}

fn write_expr<W: Write>(w: &mut W, e: &Expr, _ctx: u8) -> fmt::Result {
    match e.node() {
        Node::Const(c) => write!(w, "{c}"),
        Node::Var(v) => w.write_str(v),
        Node::Jet(j) => write!(w, "{}", Leaf::Jet(j.clone())),
        Node::Add(ts) => {
            for (i, t) in ts.iter().enumerate() {
                if i == 0 {
                    write_wrapped(w, t, PRODUCT)?;
                } else if t.is_negative_led() {
                    w.write_str(" - ")?;
                    write_wrapped(w, &t.neg(), PRODUCT)?;
                } else {
                    w.write_str(" + ")?;
                    write_wrapped(w, t, PRODUCT)?;
                }
            }
            Ok(())
        }
        Node::Mul(fs) => {
            let mut rest = &fs[..];
            if let Some(c) = fs[0].as_const() {
                if (-c.clone()).is_one() && !matches!(fs[1].node(), Node::Div(..)) {
                    w.write_char('-')?;
                    rest = &fs[1..];
                }
            }
            for (i, f) in rest.iter().enumerate() {
                if i > 0 {
                    w.write_char('*')?;
                }
                // a leading constant may carry a sign or a slash; later factors are wrapped
                if i == 0 && f.as_const().is_some() {
                    write_expr(w, f, PRODUCT)?;
                } else {
                    write_wrapped(w, f, 3)?;
                }
            }
            Ok(())
        }
        Node::Pow(b, k) => {
            write_wrapped(w, b, ATOM)?;
            if *k < 0 {
                write!(w, "^({k})")
            } else {
                write!(w, "^{k}")
            }
        }
        Node::Div(a, b) => {
            if matches!(a.node(), Node::Mul(_) | Node::Div(..)) || a.as_const().is_some() {
                write_expr(w, a, PRODUCT)?;
            } else {
                write_wrapped(w, a, 3)?;
            }
            w.write_char('/')?;
            write_wrapped(w, b, 3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{q, FuncDecl, JetSymbol};

    #[test]
    fn samples() {
        let x = Expr::var("x");
        let y = Expr::var("y");
        assert_eq!((&x - &y).to_string(), "x - y");
        assert_eq!((-&x * &y).to_string(), "-x*y");
        assert_eq!((q(7, 2) * x.pow(-2)).to_string(), "7/2*x^(-2)");
        assert_eq!(((&x + &y) * &x).to_string(), "(x + y)*x");
        assert_eq!((&x / (&x + &y)).to_string(), "x/(x + y)");
        let l = FuncDecl::new("L", &["x", "y", "p", "q"]);
        let lqqq = Expr::jet(JetSymbol::new(&l, &["q", "q", "q"]).unwrap());
        assert_eq!(lqqq.pow(2).to_string(), "L[q,q,q]^2");
        assert_eq!(Expr::jet(JetSymbol::value(&l)).to_string(), "L[]");
    }
}
