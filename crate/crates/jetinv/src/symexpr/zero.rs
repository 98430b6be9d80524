use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::eval::{eval, leaves, Assignment, EvalError};
use super::expr::{Expr, Leaf};
use super::Rational;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Parameters of the randomized identity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTestConfig {
    pub seed: u64,
    pub trials: u32,
    /// Numerators are drawn from `[-numerator_bound, numerator_bound]`.
    pub numerator_bound: i64,
    /// Denominators are drawn from `[1, denominator_bound]`.
    pub denominator_bound: i64,
    pub max_retries: u32,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig {
            seed: DEFAULT_SEED,
            trials: 24,
            numerator_bound: 10_000,
            denominator_bound: 1_000,
            max_retries: 8,
        }
    }
}

impl ZeroTestConfig {
    pub fn with_seed(seed: u64) -> Self {
        ZeroTestConfig { seed, ..Default::default() }
    }

    pub fn with_trials(mut self, trials: u32) -> Self {
        self.trials = trials.max(1);
        self
    }

    /// A config with a seed derived from this one, for independent streams.
    pub fn derived(&self, salt: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        ZeroTestConfig { seed: rng.gen(), ..self.clone() }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Assignment,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    NonZero(Box<Witness>),
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Zero => None,
            Verdict::NonZero(w) => Some(w),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroTestError {
    #[error("zero test inconclusive: every one of {trials} trials hit a pole after {retries} retries")]
    Inconclusive { trials: u32, retries: u32 },
}

pub fn random_rational<R: Rng>(rng: &mut R, cfg: &ZeroTestConfig) -> Rational {
    let n = rng.gen_range(-cfg.numerator_bound..=cfg.numerator_bound);
    let d = rng.gen_range(1..=cfg.denominator_bound.max(1));
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_assignment<R: Rng>(leaves: &BTreeSet<Leaf>, rng: &mut R, cfg: &ZeroTestConfig) -> Assignment {
    leaves.iter().map(|l| (l.clone(), random_rational(rng, cfg))).collect()
}

/// Draws a pole-free sample point for all given expressions.
pub fn sample_point<R: Rng>(
    es: &[Expr],
    rng: &mut R,
    cfg: &ZeroTestConfig,
) -> Result<(Assignment, Vec<Rational>), ZeroTestError> {
    let ls = super::eval::leaves_of(es);
    for _ in 0..=cfg.max_retries {
        let a = random_assignment(&ls, rng, cfg);
        match super::eval::eval_many(es, &a) {
            Ok(vs) => return Ok((a, vs)),
            Err(EvalError::Pole) => continue,
            Err(EvalError::Unassigned(_)) => unreachable!("all leaves are assigned"),
        }
    }
    Err(ZeroTestError::Inconclusive { trials: 1, retries: cfg.max_retries })
}

/// Randomized identity test. `Zero` means every pole-free trial evaluated to
/// exactly 0; a single nonzero value is returned as a witness.
pub fn is_zero(e: &Expr, cfg: &ZeroTestConfig) -> Result<Verdict, ZeroTestError> {
    if let Some(c) = e.as_const() {
        return Ok(if c.is_zero() {
            Verdict::Zero
        } else {
            Verdict::NonZero(Box::new(Witness { assignment: Assignment::new(), value: c.clone() }))
        });
    }
    let ls = leaves(e);
    let mut rng = cfg.rng();
    let mut successes = 0;
    for _ in 0..cfg.trials.max(1) {
        for _ in 0..=cfg.max_retries {
            let a = random_assignment(&ls, &mut rng, cfg);
            match eval(e, &a) {
                Ok(v) => {
                    if !v.is_zero() {
                        return Ok(Verdict::NonZero(Box::new(Witness { assignment: a, value: v })));
                    }
                    successes += 1;
                    break;
                }
                Err(EvalError::Pole) => continue,
                Err(EvalError::Unassigned(_)) => unreachable!("all leaves are assigned"),
            }
        }
    }
    if successes == 0 {
        return Err(ZeroTestError::Inconclusive { trials: cfg.trials, retries: cfg.max_retries });
    }
    Ok(Verdict::Zero)
}

/// Convenience: `is_zero(a - b)`.
pub fn is_equal(a: &Expr, b: &Expr, cfg: &ZeroTestConfig) -> Result<Verdict, ZeroTestError> {
    is_zero(&(a - b), cfg)
}
