//! Exact symbolic expressions over rationals, coordinates and formal jet
//! symbols of opaque functions.

mod derive;
mod eval;
mod expr;
mod normalize;
mod print;
mod subst;
mod zero;

pub type Rational = num_rational::BigRational;

pub use derive::{diff, diff_n, VectorField};
pub use eval::{eval, eval_many, leaves, leaves_of, Assignment, EvalError};
pub use expr::{canonical_cmp, q, Expr, ExprError, FuncDecl, JetSymbol, Leaf, Node};
pub use normalize::{normalize, Normalizer};
pub use subst::{substitute, substitute_all};
pub use zero::{
    is_equal, is_zero, random_assignment, random_rational, sample_point, Verdict, Witness, ZeroTestConfig,
    ZeroTestError, DEFAULT_SEED,
};
