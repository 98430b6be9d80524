use std::collections::HashMap;

use super::expr::{Expr, Node};

/// Replaces coordinates by expressions, simultaneously.
pub fn substitute_all(e: &Expr, map: &[(&str, Expr)]) -> Expr {
    let mut memo = HashMap::new();
    go(e, map, &mut memo)
}

pub fn substitute(e: &Expr, v: &str, g: &Expr) -> Expr {
    substitute_all(e, &[(v, g.clone())])
}

fn go(e: &Expr, map: &[(&str, Expr)], memo: &mut HashMap<*const (), Expr>) -> Expr {
    if let Some(r) = memo.get(&e.key()) {
        return r.clone();
    }
    let r = match e.node() {
        Node::Const(_) | Node::Jet(_) => e.clone(),
        Node::Var(v) => map
            .iter()
            .find(|(name, _)| *name == &**v)
            .map(|(_, g)| g.clone())
            .unwrap_or_else(|| e.clone()),
        Node::Add(ts) => rebuild(e, ts, map, memo, Expr::sum),
        Node::Mul(fs) => rebuild(e, fs, map, memo, Expr::product),
        Node::Pow(b, k) => {
            let nb = go(b, map, memo);
            if nb == *b {
                e.clone()
            } else {
                nb.checked_pow(*k).unwrap_or_else(|_| Expr::raw_pow(nb, *k))
            }
        }
        Node::Div(a, b) => {
            let na = go(a, map, memo);
            let nb = go(b, map, memo);
            if na == *a && nb == *b {
                e.clone()
            } else {
                // a denominator that became the constant 0 is kept: it evaluates as a pole
                na.checked_div(&nb).unwrap_or_else(|_| Expr::raw_div(na, nb))
            }
        }
    };
    memo.insert(e.key(), r.clone());
    r
}

fn rebuild(
    e: &Expr,
    xs: &[Expr],
    map: &[(&str, Expr)],
    memo: &mut HashMap<*const (), Expr>,
    build: fn(Vec<Expr>) -> Expr,
) -> Expr {
    let ys: Vec<Expr> = xs.iter().map(|x| go(x, map, memo)).collect();
    if ys.iter().zip(xs).all(|(a, b)| a == b) {
        e.clone()
    } else {
        build(ys)
    }
}
