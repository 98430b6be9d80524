use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::expr::{rational_pow, Expr, Leaf, Node};
use super::Rational;

/// Exact rational values for the leaves of an expression.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Leaf, Rational>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, leaf: Leaf, value: Rational) {
        self.0.insert(leaf, value);
    }

    pub fn with(mut self, leaf: Leaf, value: Rational) -> Assignment {
        self.set(leaf, value);
        self
    }

    pub fn get(&self, leaf: &Leaf) -> Option<&Rational> {
        self.0.get(leaf)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Leaf, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Leaf, Rational)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Leaf, Rational)>>(iter: I) -> Assignment {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Var(v) => f.write_str(v),
            Leaf::Jet(j) => {
                write!(f, "{}[", j.func().name())?;
                for (i, a) in j.index_names().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(a)?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l} -> {v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("pole: a denominator vanishes at the sample point")]
    Pole,
    #[error("no value assigned to `{0}`")]
    Unassigned(Leaf),
}

/// Exact evaluation with a memo keyed on DAG nodes.
pub fn eval(e: &Expr, a: &Assignment) -> Result<Rational, EvalError> {
    let mut memo = HashMap::new();
    eval_memo(e, a, &mut memo)
}

/// Evaluates several expressions at one point, sharing common subexpressions.
pub fn eval_many(es: &[Expr], a: &Assignment) -> Result<Vec<Rational>, EvalError> {
    let mut memo = HashMap::new();
    es.iter().map(|e| eval_memo(e, a, &mut memo)).collect()
}

fn eval_memo(
    e: &Expr,
    a: &Assignment,
    memo: &mut HashMap<*const (), Rational>,
) -> Result<Rational, EvalError> {
    if let Some(v) = memo.get(&e.key()) {
        return Ok(v.clone());
    }
    let v = match e.node() {
        Node::Const(c) => c.clone(),
        Node::Var(name) => {
            let leaf = Leaf::Var(name.clone());
            a.get(&leaf).cloned().ok_or(EvalError::Unassigned(leaf))?
        }
        Node::Jet(j) => {
            let leaf = Leaf::Jet(j.clone());
            a.get(&leaf).cloned().ok_or(EvalError::Unassigned(leaf))?
        }
        Node::Add(ts) => {
            let mut acc = Rational::zero();
            for t in ts {
                acc += eval_memo(t, a, memo)?;
            }
            acc
        }
        Node::Mul(fs) => {
            let mut acc = Rational::one();
            for f in fs {
                let v = eval_memo(f, a, memo)?;
                if v.is_zero() {
                    // Remaining factors still need checking for poles.
                    for g in fs {
                        eval_memo(g, a, memo)?;
                    }
                    acc = Rational::zero();
                    break;
                }
                acc *= v;
            }
            acc
        }
        Node::Pow(b, k) => {
            let bv = eval_memo(b, a, memo)?;
            if *k < 0 && bv.is_zero() {
                return Err(EvalError::Pole);
            }
            rational_pow(&bv, *k)
        }
        Node::Div(n, d) => {
            let dv = eval_memo(d, a, memo)?;
            if dv.is_zero() {
                return Err(EvalError::Pole);
            }
            eval_memo(n, a, memo)? / dv
        }
    };
    memo.insert(e.key(), v.clone());
    Ok(v)
}

/// All leaves occurring in the expression.
pub fn leaves(e: &Expr) -> BTreeSet<Leaf> {
    leaves_of(std::slice::from_ref(e))
}

pub fn leaves_of(es: &[Expr]) -> BTreeSet<Leaf> {
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut stack: Vec<Expr> = es.to_vec();
    while let Some(e) = stack.pop() {
        if !seen.insert(e.key()) {
            continue;
        }
        match e.node() {
            Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(Leaf::Var(v.clone()));
            }
            Node::Jet(j) => {
                out.insert(Leaf::Jet(j.clone()));
            }
            Node::Add(xs) | Node::Mul(xs) => stack.extend(xs.iter().cloned()),
            Node::Pow(b, _) => stack.push(b.clone()),
            Node::Div(n, d) => {
                stack.push(n.clone());
                stack.push(d.clone());
            }
        }
    }
    out
}
