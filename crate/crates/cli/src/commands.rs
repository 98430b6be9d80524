use jetinv::euler_lagrange::{el_ode4, el_pair3, ElError};
use jetinv::frontend::{Payload, Problem};
use jetinv::ode4::{cartan_quartic, classify_235, invariants_ode4, Classification235, Ode4Error};
use jetinv::orthopath::{check_minimal_indicatrix, holonomy_reduction_flags, orthopath_from_finsler, OrthopathError};
use jetinv::pair::invariants_pair;
use jetinv::quasicontact::{monge_metric, QuasicontactError, C0_CLOSED_FORM_RATIO};
use jetinv::selftest::run_selftest;
use jetinv::symexpr::{diff_n, is_zero, Expr, ZeroTestConfig, ZeroTestError};
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Inconclusive(#[from] ZeroTestError),
    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Inconclusive(_) => 3,
            CliError::Selftest(_) => 4,
        }
    }
}

impl From<Ode4Error> for CliError {
    fn from(e: Ode4Error) -> CliError {
        match e {
            Ode4Error::ZeroTest(z) => CliError::Inconclusive(z),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<ElError> for CliError {
    fn from(e: ElError) -> CliError {
        match e {
            ElError::ZeroTest(z) => CliError::Inconclusive(z),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<QuasicontactError> for CliError {
    fn from(e: QuasicontactError) -> CliError {
        match e {
            QuasicontactError::ZeroTest(z) => CliError::Inconclusive(z),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<OrthopathError> for CliError {
    fn from(e: OrthopathError) -> CliError {
        match e {
            OrthopathError::ZeroTest(z) => CliError::Inconclusive(z),
            OrthopathError::SymmetryViolation { .. } => CliError::Precondition(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub struct Ctx {
    pub cfg: ZeroTestConfig,
    pub show_expr: bool,
}

impl Ctx {
    fn report(&self, kind: &str) -> Report {
        Report::new(kind, self.cfg.seed, self.cfg.trials)
    }

    fn record(&self, rep: &mut Report, name: &str, e: &Expr) -> Result<bool, CliError> {
        let v = is_zero(e, &self.cfg)?;
        let zero = v.is_zero();
        rep.entry(name, &v, self.show_expr.then_some(e));
        Ok(zero)
    }
}

/// The scalar ODE behind an ODE-like problem.
fn scalar_ode(p: &Problem, ctx: &Ctx, rep: &mut Report) -> Result<Option<Expr>, CliError> {
    Ok(match &p.payload {
        Payload::Ode4 { f } => Some(f.clone()),
        Payload::Lagrangian2 { l } | Payload::Monge { f: l } => {
            rep.note("fourth-order ODE derived as the Euler-Lagrange equation of the Lagrangian");
            Some(el_ode4(l, &ctx.cfg)?)
        }
        _ => None,
    })
}

fn pair_ode(p: &Problem, ctx: &Ctx, rep: &mut Report) -> Result<Option<(Expr, Expr)>, CliError> {
    Ok(match &p.payload {
        Payload::Ode3Pair { f1, f2 } => Some((f1.clone(), f2.clone())),
        Payload::LagrangianPair { l1, l2, l0 } => {
            rep.note("pair derived as the Euler-Lagrange equations of L1 q1 + L2 q2 + L0");
            Some(el_pair3(l1, l2, l0, &ctx.cfg)?)
        }
        _ => None,
    })
}

fn classification_into(rep: &mut Report, cls: &Classification235) {
    for (name, v) in cls.flags() {
        rep.flag(name, v);
    }
    for (point, m) in &cls.multiplicities {
        rep.note(format!("quartic root multiplicity {m} at {point}"));
    }
    for n in &cls.notes {
        rep.note(n.clone());
    }
}

fn scalar_invariants(f: &Expr, ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let inv = invariants_ode4(f);
    for (name, e) in inv.named() {
        ctx.record(rep, name, e)?;
    }
    classification_into(rep, &classify_235(f, &ctx.cfg)?);
    Ok(())
}

fn pair_invariants(f1: &Expr, f2: &Expr, ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let inv = invariants_pair(f1, f2);
    let mut variational = true;
    for (i, (name, e)) in inv.named().into_iter().enumerate() {
        let zero = ctx.record(rep, name, e)?;
        if i < 8 {
            variational &= zero;
        }
    }
    rep.flag("variational", variational);
    rep.flag("null_symmetry", variational);
    rep.note("b6 uses H_rs as transcribed; it is known to vanish on pairs affine in q but not on every flat pair");
    Ok(())
}

pub fn invariants(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let mut rep = ctx.report(p.kind().name());
    if let Some(f) = scalar_ode(p, ctx, &mut rep)? {
        scalar_invariants(&f, ctx, &mut rep)?;
    } else if let Some((f1, f2)) = pair_ode(p, ctx, &mut rep)? {
        pair_invariants(&f1, &f2, ctx, &mut rep)?;
    } else {
        return orthopath(p, ctx);
    }
    Ok(rep)
}

pub fn variational(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let mut rep = ctx.report(p.kind().name());
    if let Some(f) = scalar_ode(p, ctx, &mut rep)? {
        let inv = invariants_ode4(&f);
        let c1 = ctx.record(&mut rep, "c1", &inv.c1)?;
        let w1 = ctx.record(&mut rep, "w1", &inv.w1)?;
        rep.flag("variational", c1 && w1);
    } else if let Some((f1, f2)) = pair_ode(p, ctx, &mut rep)? {
        let inv = invariants_pair(&f1, &f2);
        let mut all = true;
        for (name, e) in inv.variational_part() {
            all &= ctx.record(&mut rep, name, e)?;
        }
        rep.flag("variational", all);
    } else {
        return Err(CliError::Precondition("the variationality test applies to ODE and Lagrangian problems".into()));
    }
    Ok(rep)
}

pub fn quartic(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let mut rep = ctx.report(p.kind().name());
    let f = scalar_ode(p, ctx, &mut rep)?
        .ok_or_else(|| CliError::Precondition("the Cartan quartic is defined for fourth-order ODEs only".into()))?;
    let qc = cartan_quartic(&f, &ctx.cfg)?;
    for (k, a) in qc.a.iter().enumerate() {
        ctx.record(&mut rep, &format!("a{k}"), a)?;
    }
    classification_into(&mut rep, &classify_235(&f, &ctx.cfg)?);
    Ok(rep)
}

pub fn el(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let mut rep = ctx.report(p.kind().name());
    match &p.payload {
        Payload::Lagrangian2 { l } | Payload::Monge { f: l } => {
            let f = el_ode4(l, &ctx.cfg)?;
            let v = is_zero(&f, &ctx.cfg)?;
            rep.entry("f", &v, Some(&f));
            let inv = invariants_ode4(&f);
            let closed = is_zero(&inv.c1, &ctx.cfg)?.is_zero() && is_zero(&inv.w1, &ctx.cfg)?.is_zero();
            rep.flag("variational", closed);
        }
        Payload::LagrangianPair { l1, l2, l0 } => {
            let (f1, f2) = el_pair3(l1, l2, l0, &ctx.cfg)?;
            rep.entry("f1", &is_zero(&f1, &ctx.cfg)?, Some(&f1));
            rep.entry("f2", &is_zero(&f2, &ctx.cfg)?, Some(&f2));
            let inv = invariants_pair(&f1, &f2);
            let mut closed = true;
            for (_, e) in inv.variational_part() {
                closed &= is_zero(e, &ctx.cfg)?.is_zero();
            }
            rep.flag("variational", closed);
        }
        _ => return Err(CliError::Precondition("`el` expects a lagrangian2, monge or lagrangian_pair problem".into())),
    }
    Ok(rep)
}

pub fn monge(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let mut rep = ctx.report(p.kind().name());
    let f = match &p.payload {
        Payload::Monge { f } | Payload::Lagrangian2 { l: f } => f,
        _ => return Err(CliError::Precondition("`monge` expects a monge or lagrangian2 problem".into())),
    };
    let g = monge_metric(f, &ctx.cfg)?;
    let null = ctx.record(&mut rep, "g_zz", &g)?;
    let c0 = invariants_ode4(&el_ode4(f, &ctx.cfg)?).c0;
    ctx.record(&mut rep, "c0", &c0)?;
    let (n, d) = C0_CLOSED_FORM_RATIO;
    let f2sq = diff_n(f, &["q", "q"]).pow(2);
    let identity = Expr::int(d) * &c0 + Expr::int(40 * n) * f2sq * &g;
    let holds = ctx.record(&mut rep, "c0_identity", &identity)?;
    rep.flag("null_symmetry", null);
    rep.flag("c0_identity", holds);
    rep.note(format!("c0_identity is {d} c0 + {} F_qq^2 g_zz; c0 carries a factor {n}/{d} against the Monge bracket", 40 * n));
    Ok(rep)
}

pub fn orthopath(p: &Problem, ctx: &Ctx) -> Result<Report, CliError> {
    let Payload::Orthopath { signature, data } = &p.payload else {
        return Err(CliError::Precondition("`orthopath` expects an orthopath problem".into()));
    };
    let mut rep = ctx.report(p.kind().name());
    let inv = orthopath_from_finsler(data, signature, &ctx.cfg)?;
    for (name, e) in inv.named() {
        ctx.record(&mut rep, &name, &e)?;
    }
    let minimal = check_minimal_indicatrix(data, signature, &ctx.cfg)?;
    rep.flag("minimal_indicatrix", minimal.minimal);
    rep.flag("half_norm", minimal.half_norm);
    rep.flag("q_zero", minimal.q_zero);
    let hol = holonomy_reduction_flags(data, signature, &ctx.cfg)?;
    rep.flag("mean_torsion_zero", hol.mean_torsion_zero);
    rep.flag("curvature_trace_zero", hol.curvature_trace_zero);
    rep.flag("holonomy_reduced", hol.reduced);
    rep.note("J_a is taken as given; consistency with the mean torsion is not checked");
    Ok(rep)
}

pub fn selftest(ctx: &Ctx) -> (Report, Option<CliError>) {
    let mut rep = ctx.report("selftest");
    let res = run_selftest(&ctx.cfg);
    for label in &res.passed {
        rep.flag(label, true);
    }
    rep.notes.extend(res.notes);
    let err = res.failure.map(|f| {
        rep.flag(&format!("{}: {}", f.module, f.name), false);
        CliError::Selftest(f.to_string())
    });
    (rep, err)
}

