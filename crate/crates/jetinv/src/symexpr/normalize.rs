use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::expr::{canonical_cmp, rational_pow, Expr, Node};
use super::Rational;

/// Simplifier that collects like terms and powers and cancels common factors
/// of quotients. Products of sums are not expanded.
#[derive(Default)]
pub struct Normalizer {
    canon: HashMap<*const (), Expr>,
    // keeps memo keys alive so pointers are never reused
    keep: Vec<Expr>,
}

impl Normalizer {
    pub fn new() -> Normalizer {
        Normalizer::default()
    }

    pub fn normalize(&mut self, e: &Expr) -> Expr {
        let c = self.canon(e);
        present(&c)
    }

    /// Internal form: no quotients, negative powers allowed, sorted terms.
    fn canon(&mut self, e: &Expr) -> Expr {
        if let Some(c) = self.canon.get(&e.key()) {
            return c.clone();
        }
        let c = match e.node() {
            Node::Const(_) | Node::Var(_) | Node::Jet(_) => e.clone(),
            Node::Add(ts) => {
                let cs: Vec<Expr> = ts.iter().map(|t| self.canon(t)).collect();
                collect_sum(&cs)
            }
            Node::Mul(fs) => {
                let mut acc = Monomial::default();
                for f in fs {
                    let c = self.canon(f);
                    acc.absorb(&c, 1);
                }
                acc.build()
            }
            Node::Pow(b, k) => {
                let mut acc = Monomial::default();
                let c = self.canon(b);
                acc.absorb(&c, *k);
                acc.build()
            }
            Node::Div(a, b) => {
                let mut acc = Monomial::default();
                let ca = self.canon(a);
                let cb = self.canon(b);
                acc.absorb(&ca, 1);
                acc.absorb(&cb, -1);
                acc.build()
            }
        };
        self.keep.push(e.clone());
        self.canon.insert(e.key(), c.clone());
        c
    }
}

/// One-shot normalization.
pub fn normalize(e: &Expr) -> Expr {
    Normalizer::new().normalize(e)
}

#[derive(Default)]
struct Monomial {
    coef: Option<Rational>,
    factors: Vec<(Expr, i64)>,
    index: HashMap<Expr, usize>,
}

impl Monomial {
    fn absorb(&mut self, c: &Expr, mult: i64) {
        match c.node() {
            Node::Const(k) => {
                let v = rational_pow(k, mult);
                self.coef = Some(match self.coef.take() {
                    Some(a) => a * v,
                    None => v,
                });
            }
            Node::Mul(fs) => {
                for f in fs {
                    self.absorb(f, mult);
                }
            }
            Node::Pow(b, k) => self.add_factor(b, k * mult),
            _ => self.add_factor(c, mult),
        }
    }

    fn add_factor(&mut self, b: &Expr, k: i64) {
        if let Some(&i) = self.index.get(b) {
            self.factors[i].1 += k;
        } else {
            self.index.insert(b.clone(), self.factors.len());
            self.factors.push((b.clone(), k));
        }
    }

    fn build(self) -> Expr {
        let coef = self.coef.unwrap_or_else(Rational::one);
        if coef.is_zero() {
            return Expr::zero();
        }
        let mut fs: Vec<Expr> = self
            .factors
            .into_iter()
            .filter(|(_, k)| *k != 0)
            .map(|(b, k)| if k == 1 { b } else { Expr::raw_pow(b, k) })
            .collect();
        fs.sort_by(canonical_cmp);
        fs.insert(0, Expr::constant(coef));
        Expr::product(fs)
    }
}

fn split_coef(t: &Expr) -> (Rational, Expr) {
    match t.node() {
        Node::Const(c) => (c.clone(), Expr::one()),
        Node::Mul(fs) => match fs[0].as_const() {
            Some(c) => (c.clone(), Expr::product(fs[1..].iter().cloned())),
            None => (Rational::one(), t.clone()),
        },
        _ => (Rational::one(), t.clone()),
    }
}

fn collect_sum(cs: &[Expr]) -> Expr {
    let mut terms: Vec<(Expr, Rational)> = Vec::new();
    let mut index: HashMap<Expr, usize> = HashMap::new();
    fn add(t: &Expr, terms: &mut Vec<(Expr, Rational)>, index: &mut HashMap<Expr, usize>) {
        if let Node::Add(ts) = t.node() {
            for s in ts {
                add(s, terms, index);
            }
            return;
        }
        let (c, m) = split_coef(t);
        if let Some(&i) = index.get(&m) {
            terms[i].1 += c;
        } else {
            index.insert(m.clone(), terms.len());
            terms.push((m, c));
        }
    }
    for c in cs {
        add(c, &mut terms, &mut index);
    }
    let mut out: Vec<Expr> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| Expr::product([Expr::constant(c), m]))
        .collect();
    out.sort_by(|a, b| canonical_cmp(&split_coef(a).1, &split_coef(b).1));
    Expr::sum(out)
}

/// Turns negative powers and rational coefficients back into quotients.
fn present(e: &Expr) -> Expr {
    let mut memo = HashMap::new();
    present_memo(e, &mut memo)
}

fn present_memo(e: &Expr, memo: &mut HashMap<*const (), Expr>) -> Expr {
    if let Some(p) = memo.get(&e.key()) {
        return p.clone();
    }
    let p = match e.node() {
        Node::Const(_) | Node::Var(_) | Node::Jet(_) => e.clone(),
        Node::Add(ts) => Expr::sum(ts.iter().map(|t| present_memo(t, memo)).collect::<Vec<_>>()),
        Node::Pow(..) | Node::Mul(_) => {
            let fs: Vec<Expr> = match e.node() {
                Node::Mul(fs) => fs.clone(),
                _ => vec![e.clone()],
            };
            let mut coef = Rational::one();
            let mut num = Vec::new();
            let mut den = Vec::new();
            for f in &fs {
                match f.node() {
                    Node::Const(c) => coef *= c,
                    Node::Pow(b, k) if *k < 0 => den.push(present_memo(b, memo).pow(-k)),
                    Node::Pow(b, k) => num.push(present_memo(b, memo).pow(*k)),
                    _ => num.push(present_memo(f, memo)),
                }
            }
            let n = Expr::product(std::iter::once(Expr::constant(Rational::from_integer(coef.numer().clone()))).chain(num));
            let d = Expr::product(std::iter::once(Expr::constant(Rational::from_integer(coef.denom().abs()))).chain(den));
            if d.is_one_const() {
                n
            } else {
                Expr::raw_div(n, d)
            }
        }
        Node::Div(a, b) => Expr::raw_div(present_memo(a, memo), present_memo(b, memo)),
    };
    memo.insert(e.key(), p.clone());
    p
}
