//! Orthopath invariants A, T, N, q computed from Cartan torsion and flag
//! curvature components of a (pseudo-)Finsler structure.

use rand::Rng;
use thiserror::Error;

use crate::symexpr::{is_zero, q, random_rational, Expr, Verdict, ZeroTestConfig, ZeroTestError};

/// Diagonal signature `(p, q)` on an `(n-1)`-dimensional vertical space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    p: usize,
    q: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthopathError {
    #[error("signature ({p},{q}) needs p + q >= 2")]
    BadSignature { p: usize, q: usize },
    #[error("data has dimension {data}, signature has {signature}")]
    DimensionMismatch { data: usize, signature: usize },
    #[error("{tensor} is not symmetric at index {index}")]
    SymmetryViolation { tensor: &'static str, index: String },
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Signature, OrthopathError> {
        if p + q < 2 {
            return Err(OrthopathError::BadSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `n - 1`, the number of vertical indices.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal entry of ε (equal to that of its inverse).
    pub fn eps(&self, a: usize) -> i64 {
        if a < self.p {
            1
        } else {
            -1
        }
    }

    fn eps_ab(&self, a: usize, b: usize) -> Expr {
        if a == b {
            Expr::int(self.eps(a))
        } else {
            Expr::zero()
        }
    }
}

/// Component data; all indices are 0-based here.
#[derive(Debug, Clone)]
pub struct FinslerData {
    dim: usize,
    i: Vec<Expr>,
    idot: Vec<Expr>,
    ibar: Vec<Expr>,
    j: Vec<Expr>,
    r: Vec<Expr>,
}

impl FinslerData {
    pub fn zeros(dim: usize) -> FinslerData {
        FinslerData {
            dim,
            i: vec![Expr::zero(); dim * dim * dim],
            idot: vec![Expr::zero(); dim * dim],
            ibar: vec![Expr::zero(); dim * dim],
            j: vec![Expr::zero(); dim],
            r: vec![Expr::zero(); dim * dim],
        }
    }

    /// Random rational data with the required symmetries.
    pub fn random<R: Rng>(dim: usize, rng: &mut R, cfg: &ZeroTestConfig) -> FinslerData {
        let mut d = FinslerData::zeros(dim);
        let draw = |rng: &mut R| Expr::constant(random_rational(rng, cfg));
        for a in 0..dim {
            for b in a..dim {
                for c in b..dim {
                    let v = draw(rng);
                    d.set_torsion_sym(a, b, c, v);
                }
                let v = draw(rng);
                d.set_curvature_sym(a, b, v);
            }
            for b in 0..dim {
                let v = draw(rng);
                d.set_idot(a, b, v);
                let v = draw(rng);
                d.set_ibar(a, b, v);
            }
            let v = draw(rng);
            d.set_j(a, v);
        }
        d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim + b) * self.dim + c
    }

    pub fn torsion(&self, a: usize, b: usize, c: usize) -> &Expr {
        &self.i[self.i3(a, b, c)]
    }

    pub fn set_torsion(&mut self, a: usize, b: usize, c: usize, e: Expr) {
        let k = self.i3(a, b, c);
        self.i[k] = e;
    }

    /// Sets all permutations of `(a,b,c)`.
    pub fn set_torsion_sym(&mut self, a: usize, b: usize, c: usize, e: Expr) {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            self.set_torsion(x, y, z, e.clone());
        }
    }

    pub fn idot(&self, a: usize, b: usize) -> &Expr {
        &self.idot[a * self.dim + b]
    }

    pub fn set_idot(&mut self, a: usize, b: usize, e: Expr) {
        self.idot[a * self.dim + b] = e;
    }

    pub fn ibar(&self, a: usize, b: usize) -> &Expr {
        &self.ibar[a * self.dim + b]
    }

    pub fn set_ibar(&mut self, a: usize, b: usize, e: Expr) {
        self.ibar[a * self.dim + b] = e;
    }

    pub fn j(&self, a: usize) -> &Expr {
        &self.j[a]
    }

    pub fn set_j(&mut self, a: usize, e: Expr) {
        self.j[a] = e;
    }

    pub fn curvature(&self, a: usize, b: usize) -> &Expr {
        &self.r[a * self.dim + b]
    }

    pub fn set_curvature(&mut self, a: usize, b: usize, e: Expr) {
        self.r[a * self.dim + b] = e;
    }

    pub fn set_curvature_sym(&mut self, a: usize, b: usize, e: Expr) {
        self.set_curvature(a, b, e.clone());
        self.set_curvature(b, a, e);
    }

    /// Mean Cartan torsion `I_a = ε^{bc} I_abc / (n+1)`.
    pub fn mean_torsion(&self, sig: &Signature) -> Vec<Expr> {
        let m = self.dim;
        let scale = q(1, m as i64 + 2);
        (0..m)
            .map(|a| {
                let tr = Expr::sum((0..m).map(|b| Expr::int(sig.eps(b)) * self.torsion(a, b, b)).collect::<Vec<_>>());
                &scale * &tr
            })
            .collect()
    }

    /// `ε^{ab} R_ab`.
    pub fn curvature_trace(&self, sig: &Signature) -> Expr {
        Expr::sum((0..self.dim).map(|a| Expr::int(sig.eps(a)) * self.curvature(a, a)).collect::<Vec<_>>())
    }

    fn check(&self, sig: &Signature, cfg: &ZeroTestConfig) -> Result<(), OrthopathError> {
        if self.dim != sig.dim() {
            return Err(OrthopathError::DimensionMismatch { data: self.dim, signature: sig.dim() });
        }
        let m = self.dim;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let base = self.torsion(a, b, c);
                    for other in [self.torsion(b, a, c), self.torsion(a, c, b)] {
                        if !is_zero(&(base - other), cfg)?.is_zero() {
                            return Err(OrthopathError::SymmetryViolation {
                                tensor: "I",
                                index: format!("[{},{},{}]", a + 1, b + 1, c + 1),
                            });
                        }
                    }
                }
                if !is_zero(&(self.curvature(a, b) - self.curvature(b, a)), cfg)?.is_zero() {
                    return Err(OrthopathError::SymmetryViolation {
                        tensor: "R",
                        index: format!("[{},{}]", a + 1, b + 1),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OrthopathInvariants {
    dim: usize,
    pub a: Vec<Expr>,
    pub t: Vec<Expr>,
    pub n: Vec<Expr>,
    pub q: Expr,
}

impl OrthopathInvariants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self, i: usize, j: usize, k: usize) -> &Expr {
        &self.a[(i * self.dim + j) * self.dim + k]
    }

    pub fn t(&self, i: usize, j: usize) -> &Expr {
        &self.t[i * self.dim + j]
    }

    pub fn n(&self, i: usize, j: usize) -> &Expr {
        &self.n[i * self.dim + j]
    }

    /// Named components with 1-based indices, e.g. `A[1,1,2]`.
    pub fn named(&self) -> Vec<(String, Expr)> {
        let m = self.dim;
        let mut out = Vec::new();
        for i in 0..m {
            for j in i..m {
                for k in j..m {
                    out.push((format!("A[{},{},{}]", i + 1, j + 1, k + 1), self.a(i, j, k).clone()));
                }
            }
        }
        for i in 0..m {
            for j in i..m {
                out.push((format!("T[{},{}]", i + 1, j + 1), self.t(i, j).clone()));
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                out.push((format!("N[{},{}]", i + 1, j + 1), self.n(i, j).clone()));
            }
        }
        out.push(("q".to_string(), self.q.clone()));
        out
    }

    /// `ε^{ab} A_abc` for each c.
    pub fn a_traces(&self, sig: &Signature) -> Vec<Expr> {
        let m = self.dim;
        (0..m)
            .map(|c| Expr::sum((0..m).map(|a| Expr::int(sig.eps(a)) * self.a(a, a, c)).collect::<Vec<_>>()))
            .collect()
    }

    pub fn t_trace(&self, sig: &Signature) -> Expr {
        Expr::sum((0..self.dim).map(|a| Expr::int(sig.eps(a)) * self.t(a, a)).collect::<Vec<_>>())
    }
}

/// `A = I̊`, `T = R̊`, `N_ab = -2 I_[a;b] + 4 J_[a I_b]`,
/// `q = 2 ε^{ab} I_a I_b - 1 - 2/(n-1) ε^{ab} I_{a;b̄}`.
pub fn orthopath_from_finsler(
    d: &FinslerData,
    sig: &Signature,
    cfg: &ZeroTestConfig,
) -> Result<OrthopathInvariants, OrthopathError> {
    d.check(sig, cfg)?;
    let m = d.dim();
    let ia = d.mean_torsion(sig);
    let mut a = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let corr = Expr::sum([
                    &ia[i] * &sig.eps_ab(j, k),
                    &ia[j] * &sig.eps_ab(i, k),
                    &ia[k] * &sig.eps_ab(i, j),
                ]);
                a.push(d.torsion(i, j, k) - corr);
            }
        }
    }
    let rbar = d.curvature_trace(sig) * q(1, m as i64);
    let mut t = Vec::with_capacity(m * m);
    let mut n = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            t.push(d.curvature(i, j) - &rbar * &sig.eps_ab(i, j));
            let skew_dot = d.idot(i, j) - d.idot(j, i);
            let skew_j = d.j(i) * &ia[j] - d.j(j) * &ia[i];
            n.push(Expr::int(2) * skew_j - skew_dot);
        }
    }
    let norm = Expr::sum((0..m).map(|i| Expr::int(sig.eps(i)) * ia[i].pow(2)).collect::<Vec<_>>());
    let ibar_tr = Expr::sum((0..m).map(|i| Expr::int(sig.eps(i)) * d.ibar(i, i)).collect::<Vec<_>>());
    let qv = Expr::int(2) * norm - Expr::one() - q(2, m as i64) * ibar_tr;
    Ok(OrthopathInvariants { dim: m, a, t, n, q: qv })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalIndicatrixReport {
    /// `ε^{ab} I_{a;b̄} ≡ 0`.
    pub minimal: bool,
    /// `ε^{ab} I_a I_b ≡ 1/2`.
    pub half_norm: bool,
    pub q_zero: bool,
}

pub fn check_minimal_indicatrix(
    d: &FinslerData,
    sig: &Signature,
    cfg: &ZeroTestConfig,
) -> Result<MinimalIndicatrixReport, OrthopathError> {
    let inv = orthopath_from_finsler(d, sig, cfg)?;
    let m = d.dim();
    let ia = d.mean_torsion(sig);
    let ibar_tr = Expr::sum((0..m).map(|i| Expr::int(sig.eps(i)) * d.ibar(i, i)).collect::<Vec<_>>());
    let norm = Expr::sum((0..m).map(|i| Expr::int(sig.eps(i)) * ia[i].pow(2)).collect::<Vec<_>>());
    Ok(MinimalIndicatrixReport {
        minimal: is_zero(&ibar_tr, cfg)?.is_zero(),
        half_norm: is_zero(&(norm - q(1, 2)), cfg)?.is_zero(),
        q_zero: is_zero(&inv.q, cfg)?.is_zero(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyReport {
    pub mean_torsion_zero: bool,
    pub curvature_trace_zero: bool,
    /// Both of the above: holonomy reduces to ℝⁿ ⋊ SO(p+1,q).
    pub reduced: bool,
}

pub fn holonomy_reduction_flags(
    d: &FinslerData,
    sig: &Signature,
    cfg: &ZeroTestConfig,
) -> Result<HolonomyReport, OrthopathError> {
    if d.dim() != sig.dim() {
        return Err(OrthopathError::DimensionMismatch { data: d.dim(), signature: sig.dim() });
    }
    let mut mean_zero = true;
    for e in d.mean_torsion(sig) {
        if !is_zero(&e, cfg)?.is_zero() {
            mean_zero = false;
            break;
        }
    }
    let tr_zero = matches!(is_zero(&d.curvature_trace(sig), cfg)?, Verdict::Zero);
    Ok(HolonomyReport { mean_torsion_zero: mean_zero, curvature_trace_zero: tr_zero, reduced: mean_zero && tr_zero })
}
