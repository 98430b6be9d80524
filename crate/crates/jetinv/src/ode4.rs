//! Contact invariants of scalar fourth-order ODEs `y'''' = f(x,y,p,q,r)`,
//! the variationality test, the Cartan quartic and the resulting
//! classification of the associated (2,3,5) distributions.

use std::fmt;

use thiserror::Error;

use crate::coframe::{adapted_coframe_ode4, coframe_derivative, invert_coframe, CoframeError, Slot};
use crate::jetspace::JetContext;
use crate::symexpr::{
    diff, eval_many, is_zero, q, sample_point, Assignment, EvalError, Expr, Rational, Verdict, Witness,
    ZeroTestConfig, ZeroTestError,
};

#[derive(Debug, Error)]
pub enum Ode4Error {
    #[error("the ODE is not variational ({invariant} does not vanish)")]
    NotVariational { invariant: &'static str, witness: Box<Witness> },
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Coframe(#[from] CoframeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Which power of `f_r` the `1/4 f_r^k` term of `w1` carries. `Square` is kept
/// only to show that it breaks the Euler-Lagrange closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum W1Form {
    Cube,
    Square,
}

#[derive(Debug, Clone)]
pub struct Ode4Invariants {
    pub c1: Expr,
    pub c0: Expr,
    pub w1: Expr,
    pub w0: Expr,
}

impl Ode4Invariants {
    pub fn named(&self) -> [(&'static str, &Expr); 4] {
        [("c1", &self.c1), ("c0", &self.c0), ("w1", &self.w1), ("w0", &self.w0)]
    }
}

struct Partials {
    fy: Expr,
    fp: Expr,
    fq: Expr,
    fr: Expr,
    frr: Expr,
    frrr: Expr,
    fqrr: Expr,
}

impl Partials {
    fn of(f: &Expr) -> Partials {
        let fr = diff(f, "r");
        let frr = diff(&fr, "r");
        let fq = diff(f, "q");
        Partials {
            fy: diff(f, "y"),
            fp: diff(f, "p"),
            frrr: diff(&frr, "r"),
            fqrr: diff(&diff(&fq, "r"), "r"),
            fq,
            fr,
            frr,
        }
    }
}

pub fn invariants_ode4(f: &Expr) -> Ode4Invariants {
    let ctx = JetContext::ode4(f);
    let d = |e: &Expr| ctx.total_derivative(e);
    let Partials { fy, fp, fq, fr, frr, frrr, fqrr } = Partials::of(f);
    let dfr = d(&fr);
    let d2fr = d(&dfr);
    let d3fr = d(&d2fr);
    let dfq = d(&fq);
    let d2fq = d(&dfq);
    let dfp = d(&fp);

    let c1 = frrr.clone();
    let c0 = Expr::sum([d(&frrr), q(3, 2) * &fr * &frrr, q(2, 9) * frr.pow(2), q(4, 3) * &fqrr]);
    let w1 = w1_from(&fr, &fq, &fp, &dfr, &d2fr, &dfq, W1Form::Cube);
    let w0 = Expr::sum([
        d3fr,
        q(-4, 1) * &d2fq,
        q(-3, 1) * &fr * &d2fr,
        q(-33, 10) * dfr.pow(2),
        q(10, 1) * &dfp,
        q(5, 1) * &fr * &dfq,
        q(27, 5) * &fq * &dfr,
        q(39, 10) * fr.pow(2) * &dfr,
        q(-13, 5) * fr.pow(2) * &fq,
        q(-5, 1) * &fr * &fp,
        q(-39, 80) * fr.pow(4),
        q(-9, 5) * fq.pow(2),
        q(-20, 1) * &fy,
    ]);
    Ode4Invariants { c1, c0, w1, w0 }
}

fn w1_from(fr: &Expr, fq: &Expr, fp: &Expr, dfr: &Expr, d2fr: &Expr, dfq: &Expr, form: W1Form) -> Expr {
    let cubic = match form {
        W1Form::Cube => fr.pow(3),
        W1Form::Square => fr.pow(2),
    };
    Expr::sum([
        d2fr.clone(),
        q(-3, 2) * fr * dfr,
        q(-2, 1) * dfq,
        q(1, 4) * cubic,
        fr * fq,
        q(2, 1) * fp,
    ])
}

/// `w1` with an explicit choice of the `f_r` power in its fourth term.
pub fn w1_variant(f: &Expr, form: W1Form) -> Expr {
    let ctx = JetContext::ode4(f);
    let fr = diff(f, "r");
    let fq = diff(f, "q");
    let fp = diff(f, "p");
    let dfr = ctx.total_derivative(&fr);
    let d2fr = ctx.total_derivative(&dfr);
    let dfq = ctx.total_derivative(&fq);
    w1_from(&fr, &fq, &fp, &dfr, &d2fr, &dfq, form)
}

#[derive(Debug, Clone)]
pub enum Variationality {
    Variational,
    NotVariational { invariant: &'static str, witness: Box<Witness> },
}

impl Variationality {
    pub fn is_variational(&self) -> bool {
        matches!(self, Variationality::Variational)
    }
}

/// Variational iff `c1` and `w1` both vanish.
pub fn is_variational_ode4(f: &Expr, cfg: &ZeroTestConfig) -> Result<Variationality, ZeroTestError> {
    let inv = invariants_ode4(f);
    variationality(&inv, cfg)
}

fn variationality(inv: &Ode4Invariants, cfg: &ZeroTestConfig) -> Result<Variationality, ZeroTestError> {
    for (name, e) in [("c1", &inv.c1), ("w1", &inv.w1)] {
        if let Verdict::NonZero(w) = is_zero(e, cfg)? {
            return Ok(Variationality::NotVariational { invariant: name, witness: w });
        }
    }
    Ok(Variationality::Variational)
}

/// `[w0, w0;1̄, …]` up to `n` derivatives along the frame vector dual to θ¹.
pub fn w0_bar_derivatives(f: &Expr, n: usize) -> Result<Vec<Expr>, CoframeError> {
    let frame = invert_coframe(&adapted_coframe_ode4(f))?;
    let mut out = vec![invariants_ode4(f).w0];
    for _ in 0..n {
        let next = coframe_derivative(&frame, out.last().unwrap(), Slot::Theta1);
        out.push(next);
    }
    Ok(out)
}

/// Coefficients of `a0 t⁴ + 4 a1 t³ + 6 a2 t² + 4 a3 t + a4`.
#[derive(Debug, Clone)]
pub struct QuarticCoefficients {
    pub a: [Expr; 5],
}

const QUARTIC_WEIGHTS: [(i64, i64); 5] = [(1, 1), (1, 4), (1, 12), (1, 24), (1, 24)];

fn quartic_from_bars(bars: &[Expr]) -> QuarticCoefficients {
    QuarticCoefficients {
        a: std::array::from_fn(|k| {
            let (n, d) = QUARTIC_WEIGHTS[k];
            q(n, d) * &bars[k]
        }),
    }
}

pub fn cartan_quartic(f: &Expr, cfg: &ZeroTestConfig) -> Result<QuarticCoefficients, Ode4Error> {
    if let Variationality::NotVariational { invariant, witness } = is_variational_ode4(f, cfg)? {
        return Err(Ode4Error::NotVariational { invariant, witness });
    }
    Ok(quartic_from_bars(&w0_bar_derivatives(f, 4)?))
}

/// Largest root multiplicity of a binary quartic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u8),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

impl Multiplicity {
    pub fn at_least(self, k: u8) -> bool {
        self >= Multiplicity::Finite(k)
    }
}

// dense univariate polynomials over the rationals, lowest degree first
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| *c == Rational::from_integer(0.into())) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer((i as i64).into())).collect())
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bi;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Root multiplicity of `a0 t⁴ + 4 a1 t³ + 6 a2 t² + 4 a3 t + a4`, counting the
/// root at infinity (`4 − deg`).
pub fn binary_quartic_multiplicity(a: &[Rational; 5]) -> Multiplicity {
    let binom = [1, 4, 6, 4, 1];
    // coefficient of t^k is binom[4-k] * a[4-k]
    let poly = trim((0..=4).map(|k| &a[4 - k] * Rational::from_integer(binom[4 - k].into())).collect());
    if poly.is_empty() {
        return Multiplicity::Infinite;
    }
    let at_infinity = 5 - poly.len();
    let mut finite = 0;
    let mut g = poly;
    while g.len() > 1 {
        finite += 1;
        g = gcd(&g, &derivative(&g));
    }
    Multiplicity::Finite(at_infinity.max(finite) as u8)
}

pub fn quartic_multiplicity(qc: &QuarticCoefficients, sample: &Assignment) -> Result<Multiplicity, EvalError> {
    let vals = eval_many(&qc.a, sample)?;
    Ok(binary_quartic_multiplicity(&vals.try_into().expect("five coefficients")))
}

pub const MULTIPLICITY_SAMPLES: usize = 3;

#[derive(Debug, Clone)]
pub struct Classification235 {
    pub variational: bool,
    pub null_symmetry: bool,
    pub descends_to_j2: bool,
    pub holonomy_reduced: bool,
    pub flat_quasicontactification: bool,
    pub multiplicities: Vec<(Assignment, Multiplicity)>,
    pub notes: Vec<String>,
}

impl Classification235 {
    pub fn flags(&self) -> [(&'static str, bool); 5] {
        [
            ("variational", self.variational),
            ("null_symmetry", self.null_symmetry),
            ("descends_to_J2", self.descends_to_j2),
            ("holonomy_reduced", self.holonomy_reduced),
            ("flat_quasicontactification", self.flat_quasicontactification),
        ]
    }
}

/// Sampled multiplicities at `MULTIPLICITY_SAMPLES` seeded points.
pub fn sample_multiplicities(
    qc: &QuarticCoefficients,
    cfg: &ZeroTestConfig,
) -> Result<Vec<(Assignment, Multiplicity)>, ZeroTestError> {
    let mut rng = cfg.derived(0x235).rng();
    (0..MULTIPLICITY_SAMPLES)
        .map(|_| {
            let (point, vals) = sample_point(&qc.a, &mut rng, cfg)?;
            Ok((point, binary_quartic_multiplicity(&vals.try_into().expect("five coefficients"))))
        })
        .collect()
}

pub fn classify_235(f: &Expr, cfg: &ZeroTestConfig) -> Result<Classification235, Ode4Error> {
    let inv = invariants_ode4(f);
    let zero = |e: &Expr| -> Result<bool, ZeroTestError> { Ok(is_zero(e, cfg)?.is_zero()) };
    let variational = variationality(&inv, cfg)?.is_variational();
    let c0_zero = zero(&inv.c0)?;
    let w0_zero = zero(&inv.w0)?;
    let mut notes = Vec::new();
    let mut out = Classification235 {
        variational,
        null_symmetry: variational && c0_zero,
        descends_to_j2: false,
        holonomy_reduced: false,
        flat_quasicontactification: variational && w0_zero,
        multiplicities: Vec::new(),
        notes: Vec::new(),
    };
    if !variational {
        notes.push("not variational: the Cartan quartic is not defined".to_string());
        out.notes = notes;
        return Ok(out);
    }
    let bars = w0_bar_derivatives(f, 4)?;
    if c0_zero {
        out.holonomy_reduced = zero(&bars[1])?;
        out.descends_to_j2 = zero(&bars[2])?;
    }
    let qc = quartic_from_bars(&bars);
    out.multiplicities = sample_multiplicities(&qc, cfg)?;

    let ms: Vec<Multiplicity> = out.multiplicities.iter().map(|(_, m)| *m).collect();
    if ms.windows(2).any(|w| w[0] != w[1]) {
        notes.push("non-generic stratification detected: sampled multiplicities disagree".to_string());
    }
    let expectations = [
        (out.null_symmetry, 2, "null_symmetry"),
        (out.descends_to_j2, 3, "descends_to_J2"),
        (out.holonomy_reduced, 4, "holonomy_reduced"),
    ];
    for (flag, k, name) in expectations {
        if flag && !ms.iter().all(|m| m.at_least(k)) {
            notes.push(format!("cross-check failed: {name} holds but a sampled multiplicity is below {k}"));
        }
    }
    if out.flat_quasicontactification && !ms.iter().all(|m| *m == Multiplicity::Infinite) {
        notes.push("cross-check failed: flat but the sampled quartic does not vanish".to_string());
    }
    out.notes = notes;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_expr, Scope};
    use crate::jetspace::ODE4_COORDS;
    use crate::symexpr::{is_equal, FuncDecl};

    fn ode4(s: &str) -> Expr {
        parse_expr(s, &Scope::with_coords(&ODE4_COORDS)).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn trivial_equation() {
        let inv = invariants_ode4(&Expr::zero());
        for (name, e) in inv.named() {
            assert!(e.is_zero_const(), "{name}");
        }
        let qc = cartan_quartic(&Expr::zero(), &ZeroTestConfig::default()).unwrap();
        assert!(qc.a.iter().all(|a| a.is_zero_const()));
    }

    #[test]
    fn submaximal() {
        let cfg = ZeroTestConfig::default();
        let f = ode4("4*r^2/(3*q)");
        let inv = invariants_ode4(&f);
        for e in [&inv.c1, &inv.w1, &inv.w0] {
            assert!(is_zero(e, &cfg).unwrap().is_zero());
        }
        assert!(is_equal(&inv.c0, &ode4("-160/(81*q^2)"), &cfg).unwrap().is_zero());
        assert!(is_variational_ode4(&f, &cfg).unwrap().is_variational());
    }

    #[test]
    fn variationality_examples() {
        let cfg = ZeroTestConfig::default();
        // y'''' = (y''')^2 is the Euler-Lagrange equation of L = exp(-q)
        assert!(is_variational_ode4(&ode4("r^2"), &cfg).unwrap().is_variational());
        match is_variational_ode4(&ode4("q*r"), &cfg).unwrap() {
            Variationality::NotVariational { invariant, .. } => assert_eq!(invariant, "w1"),
            Variationality::Variational => panic!("q*r is not variational"),
        }
        match is_variational_ode4(&ode4("r^3"), &cfg).unwrap() {
            Variationality::NotVariational { invariant, .. } => assert_eq!(invariant, "c1"),
            Variationality::Variational => panic!("r^3 is not variational"),
        }
        let err = cartan_quartic(&ode4("q*r"), &cfg).unwrap_err();
        assert!(matches!(err, Ode4Error::NotVariational { .. }));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(binary_quartic_multiplicity(&[r(0), r(0), r(0), r(0), r(0)]), Multiplicity::Infinite);
        assert_eq!(binary_quartic_multiplicity(&[r(1), r(0), r(0), r(0), r(0)]), Multiplicity::Finite(4));
        assert_eq!(binary_quartic_multiplicity(&[r(0), r(0), r(1), r(0), r(0)]), Multiplicity::Finite(2));
        // (t - 1)^3 (t + 2) = t^4 - t^3 - 3t^2 + 5t - 2
        let a = [r(1), Rational::new((-1).into(), 4.into()), Rational::new((-1).into(), 2.into()), Rational::new(5.into(), 4.into()), r(-2)];
        assert_eq!(binary_quartic_multiplicity(&a), Multiplicity::Finite(3));
        // t^4 + 1 has simple roots
        assert_eq!(binary_quartic_multiplicity(&[r(1), r(0), r(0), r(0), r(1)]), Multiplicity::Finite(1));
        // 4t: simple root at 0 and a triple root at infinity
        assert_eq!(binary_quartic_multiplicity(&[r(0), r(0), r(0), r(1), r(0)]), Multiplicity::Finite(3));
    }

    fn type_n(g: &str) -> (Expr, Scope) {
        let scope = Scope::with_coords(&ODE4_COORDS).with(FuncDecl::new("g", &["y", "p"]));
        let g = parse_expr(g, &scope).unwrap();
        let f = &Expr::var("q") / &Expr::var("p") * diff(&g, "p") + diff(&g, "y");
        (f, scope)
    }

    #[test]
    fn descends_to_j2_family() {
        let cfg = ZeroTestConfig::default();
        let (f, scope) = type_n("g[]");
        let bars = w0_bar_derivatives(&f, 2).unwrap();
        let expected = parse_expr("(g[p,p]*p - g[p])/p^2", &scope).unwrap();
        assert!(is_equal(&bars[1], &expected, &cfg).unwrap().is_zero());
        assert!(is_zero(&bars[2], &cfg).unwrap().is_zero());
        let cls = classify_235(&f, &cfg).unwrap();
        assert!(cls.variational && cls.null_symmetry && cls.descends_to_j2);
        assert!(!cls.holonomy_reduced);
    }

    #[test]
    fn holonomy_reduced_instance() {
        let cfg = ZeroTestConfig::default();
        let scope = Scope::with_coords(&ODE4_COORDS)
            .with(FuncDecl::new("h1", &["y"]))
            .with(FuncDecl::new("h2", &["y"]));
        let g = parse_expr("h1[]*p^2 + h2[]", &scope).unwrap();
        let f = &Expr::var("q") / &Expr::var("p") * diff(&g, "p") + diff(&g, "y");
        let cls = classify_235(&f, &cfg).unwrap();
        assert!(cls.holonomy_reduced);
        assert_eq!(cls.multiplicities.len(), MULTIPLICITY_SAMPLES);
        assert!(cls.multiplicities.iter().all(|(_, m)| m.at_least(4)));
    }
}
