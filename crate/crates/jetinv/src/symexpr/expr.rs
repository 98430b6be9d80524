use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::Rational;

/// Signature of an opaque function, e.g. `L(x,y,p,q)`.
#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncDecl {
    name: Arc<str>,
    args: Vec<Arc<str>>,
}

impl FuncDecl {
    pub fn new(name: &str, args: &[&str]) -> Arc<FuncDecl> {
        Arc::new(FuncDecl {
            name: Arc::from(name),
            args: args.iter().map(|a| Arc::from(*a)).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn args(&self) -> &[Arc<str>] {
        &self.args
    }

    pub fn position(&self, arg: &str) -> Option<usize> {
        self.args.iter().position(|a| &**a == arg)
    }
}

/// Formal partial derivative of a declared function. The multi-index holds
/// argument positions in ascending order, so mixed partials coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetSymbol {
    func: Arc<FuncDecl>,
    index: Vec<u16>,
}

impl JetSymbol {
    /// The function value itself (`g[]`).
    pub fn value(func: &Arc<FuncDecl>) -> JetSymbol {
        JetSymbol { func: func.clone(), index: Vec::new() }
    }

    pub fn new(func: &Arc<FuncDecl>, args: &[&str]) -> Result<JetSymbol, ExprError> {
        let mut index = Vec::with_capacity(args.len());
        for a in args {
            let pos = func.position(a).ok_or_else(|| ExprError::NotAnArgument {
                func: func.name().to_string(),
                arg: a.to_string(),
            })?;
            index.push(pos as u16);
        }
        index.sort_unstable();
        Ok(JetSymbol { func: func.clone(), index })
    }

    pub fn func(&self) -> &Arc<FuncDecl> {
        &self.func
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    pub fn index_names(&self) -> impl Iterator<Item = &str> {
        self.index.iter().map(|&i| &*self.func.args[i as usize])
    }

    /// One more derivative with respect to the argument at `pos`.
    pub fn extend(&self, pos: usize) -> JetSymbol {
        let pos = pos as u16;
        let mut index = self.index.clone();
        let at = index.partition_point(|&i| i <= pos);
        index.insert(at, pos);
        JetSymbol { func: self.func.clone(), index }
    }
}

/// A leaf of an expression: a coordinate or a jet symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leaf {
    Var(Arc<str>),
    Jet(JetSymbol),
}

impl Leaf {
    pub fn var(name: &str) -> Leaf {
        Leaf::Var(Arc::from(name))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{arg}` is not an argument of `{func}`")]
    NotAnArgument { func: String, arg: String },
}

#[derive(Debug, PartialEq, Eq)]
pub enum Node {
    Const(Rational),
    Var(Arc<str>),
    Jet(JetSymbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, i64),
    Div(Expr, Expr),
}

#[derive(Debug)]
pub(crate) struct Inner {
    node: Node,
    hash: u64,
}

/// Immutable, shareable expression DAG.
#[derive(Debug, Clone)]
pub struct Expr(Arc<Inner>);

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

fn node_hash(node: &Node) -> u64 {
    let mut h = DefaultHasher::new();
    match node {
        Node::Const(c) => {
            0u8.hash(&mut h);
            c.hash(&mut h);
        }
        Node::Var(v) => {
            1u8.hash(&mut h);
            v.hash(&mut h);
        }
        Node::Jet(j) => {
            2u8.hash(&mut h);
            j.hash(&mut h);
        }
        Node::Add(ts) => {
            3u8.hash(&mut h);
            for t in ts {
                h.write_u64(t.0.hash);
            }
        }
        Node::Mul(fs) => {
            4u8.hash(&mut h);
            for f in fs {
                h.write_u64(f.0.hash);
            }
        }
        Node::Pow(b, k) => {
            5u8.hash(&mut h);
            h.write_u64(b.0.hash);
            k.hash(&mut h);
        }
        Node::Div(a, b) => {
            6u8.hash(&mut h);
            h.write_u64(a.0.hash);
            h.write_u64(b.0.hash);
        }
    }
    h.finish()
}

impl Expr {
    fn make(node: Node) -> Expr {
        let hash = node_hash(&node);
        Expr(Arc::new(Inner { node, hash }))
    }

    pub(crate) fn raw_pow(b: Expr, k: i64) -> Expr {
        Expr::make(Node::Pow(b, k))
    }

    pub(crate) fn raw_div(a: Expr, b: Expr) -> Expr {
        Expr::make(Node::Div(a, b))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub(crate) fn key(&self) -> *const () {
        Arc::as_ptr(&self.0) as *const ()
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn constant(c: Rational) -> Expr {
        Expr::make(Node::Const(c))
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(name: &str) -> Expr {
        Expr::make(Node::Var(Arc::from(name)))
    }

    pub fn jet(j: JetSymbol) -> Expr {
        Expr::make(Node::Jet(j))
    }

    pub fn leaf(l: Leaf) -> Expr {
        match l {
            Leaf::Var(v) => Expr::make(Node::Var(v)),
            Leaf::Jet(j) => Expr::jet(j),
        }
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Syntactic zero (the constant 0).
    pub fn is_zero_const(&self) -> bool {
        self.as_const().map_or(false, |c| c.is_zero())
    }

    pub fn is_one_const(&self) -> bool {
        self.as_const().map_or(false, |c| c.is_one())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Sum with flattening and constant folding. Constants end up last.
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        let mut out = Vec::new();
        let mut c = Rational::zero();
        fn push(e: Expr, out: &mut Vec<Expr>, c: &mut Rational) {
            match e.node() {
                Node::Const(k) => *c += k,
                Node::Add(ts) => {
                    for t in ts {
                        push(t.clone(), out, c);
                    }
                }
                _ => out.push(e),
            }
        }
        for t in terms {
            push(t, &mut out, &mut c);
        }
        if !c.is_zero() {
            out.push(Expr::constant(c));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::make(Node::Add(out)),
        }
    }

    /// Product with flattening and constant folding. The constant comes first.
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        let mut out = Vec::new();
        let mut c = Rational::one();
        for f in factors {
            match f.node() {
                Node::Const(k) => {
                    if k.is_zero() {
                        return Expr::zero();
                    }
                    c *= k;
                }
                Node::Mul(fs) => {
                    for g in fs {
                        match g.node() {
                            Node::Const(k) => c *= k,
                            _ => out.push(g.clone()),
                        }
                    }
                }
                _ => out.push(f),
            }
        }
        if out.is_empty() {
            return Expr::constant(c);
        }
        if c.is_one() && out.len() == 1 {
            return out.pop().unwrap();
        }
        if !c.is_one() {
            out.insert(0, Expr::constant(c));
        }
        Expr::make(Node::Mul(out))
    }

    /// Integer power. Panics on a negative power of the constant zero.
    pub fn pow(&self, k: i64) -> Expr {
        self.checked_pow(k).expect("negative power of zero")
    }

    pub fn checked_pow(&self, k: i64) -> Result<Expr, ExprError> {
        if k == 0 {
            return Ok(Expr::one());
        }
        if k == 1 {
            return Ok(self.clone());
        }
        match self.node() {
            Node::Const(c) => {
                if c.is_zero() {
                    return if k < 0 { Err(ExprError::DivisionByZero) } else { Ok(Expr::zero()) };
                }
                Ok(Expr::constant(rational_pow(c, k)))
            }
            Node::Pow(b, m) => b.checked_pow(m * k),
            _ => Ok(Expr::make(Node::Pow(self.clone(), k))),
        }
    }

    pub fn checked_div(&self, den: &Expr) -> Result<Expr, ExprError> {
        if let Some(d) = den.as_const() {
            if d.is_zero() {
                return Err(ExprError::DivisionByZero);
            }
            if d.is_one() {
                return Ok(self.clone());
            }
            if let Some(n) = self.as_const() {
                return Ok(Expr::constant(n / d));
            }
        }
        if self.is_zero_const() {
            return Ok(Expr::zero());
        }
        Ok(Expr::make(Node::Div(self.clone(), den.clone())))
    }

    pub fn neg(&self) -> Expr {
        match self.node() {
            Node::Div(a, b) => Expr::make(Node::Div(a.neg(), b.clone())),
            _ => Expr::product([Expr::int(-1), self.clone()]),
        }
    }

    /// Leading sign as printed: a negative constant, or a product/quotient led by one.
    pub(crate) fn is_negative_led(&self) -> bool {
        match self.node() {
            Node::Const(c) => c.is_negative(),
            Node::Mul(fs) => match fs[0].as_const() {
                // -1*(a/b) would re-read as (-a)/b, so it is not treated as signed
                Some(c) if (-c.clone()).is_one() => !(fs.len() == 2 && matches!(fs[1].node(), Node::Div(..))),
                Some(c) => c.is_negative(),
                None => false,
            },
            Node::Div(a, _) => a.is_negative_led(),
            _ => false,
        }
    }

    /// Number of nodes in the tree obtained by unsharing the DAG, saturating.
    pub fn tree_size(&self) -> u64 {
        let mut memo = std::collections::HashMap::new();
        tree_size(self, &mut memo)
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.key()) {
                continue;
            }
            match e.node() {
                Node::Add(xs) | Node::Mul(xs) => stack.extend(xs.iter().cloned()),
                Node::Pow(b, _) => stack.push(b.clone()),
                Node::Div(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                _ => {}
            }
        }
        seen.len()
    }
}

fn tree_size(e: &Expr, memo: &mut std::collections::HashMap<*const (), u64>) -> u64 {
    if let Some(&n) = memo.get(&e.key()) {
        return n;
    }
    let n = match e.node() {
        Node::Add(xs) | Node::Mul(xs) => xs.iter().fold(1u64, |acc, x| acc.saturating_add(tree_size(x, memo))),
        Node::Pow(b, _) => 1 + tree_size(b, memo),
        Node::Div(a, b) => tree_size(a, memo).saturating_add(tree_size(b, memo)).saturating_add(1),
        _ => 1,
    };
    memo.insert(e.key(), n);
    n
}

pub(crate) fn rational_pow(c: &Rational, k: i64) -> Rational {
    let base = if k < 0 { c.recip() } else { c.clone() };
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn rank(e: &Expr) -> u8 {
    match e.node() {
        Node::Const(_) => 0,
        Node::Var(_) => 1,
        Node::Jet(_) => 2,
        Node::Pow(..) => 3,
        Node::Mul(_) => 4,
        Node::Div(..) => 5,
        Node::Add(_) => 6,
    }
}

fn base_exp(e: &Expr) -> (&Expr, i64) {
    match e.node() {
        Node::Pow(b, k) => (b, *k),
        _ => (e, 1),
    }
}

/// Deterministic ordering used to sort terms and factors: coordinates and jets
/// by name, powers next to their base, composites by structural hash.
pub fn canonical_cmp(a: &Expr, b: &Expr) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let (ba, ka) = base_exp(a);
    let (bb, kb) = base_exp(b);
    let ord = rank(ba).cmp(&rank(bb)).then_with(|| match (ba.node(), bb.node()) {
        (Node::Const(x), Node::Const(y)) => x.cmp(y),
        (Node::Var(x), Node::Var(y)) => x.cmp(y),
        (Node::Jet(x), Node::Jet(y)) => x.cmp(y),
        _ if ba == bb => Ordering::Equal,
        (Node::Mul(x), Node::Mul(y)) | (Node::Add(x), Node::Add(y)) => {
            x.len().cmp(&y.len()).then(ba.structural_hash().cmp(&bb.structural_hash()))
        }
        _ => ba.structural_hash().cmp(&bb.structural_hash()),
    });
    ord.then(ka.cmp(&kb))
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Expr {
        Expr::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                ops::$tr::$m(&self, &rhs)
            }
        }
        impl ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                ops::$tr::$m(&self, rhs)
            }
        }
        impl ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                ops::$tr::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::sum([a.clone(), b.clone()]));
binop!(Sub, sub, |a, b| Expr::sum([a.clone(), b.neg()]));
binop!(Mul, mul, |a, b| Expr::product([a.clone(), b.clone()]));
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

/// Shorthand for the rational constant `n/d`.
pub fn q(n: i64, d: i64) -> Expr {
    Expr::rational(n, d)
}
