//! Golden examples with their provenance, run in order until the first
//! mismatch.

use std::error::Error;
use std::fmt;

use crate::coframe::{adapted_coframe_ode4, coframe_derivative, invert_coframe, Slot};
use crate::euler_lagrange::{el_ode4, el_ode4_closed_form, el_pair3};
use crate::frontend::{parse_expr, parse_problem, FrontendError, Scope, SchemaError};
use crate::jetspace::{JetContext, LAGRANGIAN2_COORDS, LAGRANGIAN_PAIR_COORDS, ODE4_COORDS, PAIR_COORDS};
use crate::ode4::{
    binary_quartic_multiplicity, cartan_quartic, classify_235, invariants_ode4, is_variational_ode4,
    w0_bar_derivatives, Multiplicity, Ode4Error,
};
use crate::orthopath::{check_minimal_indicatrix, holonomy_reduction_flags, orthopath_from_finsler, FinslerData, Signature};
use crate::pair::{invariants_pair, is_variational_pair, pair_building_blocks, pair_symmetry_nullity};
use crate::quasicontact::{monge_metric, null_family_lagrangian, symmetry_norm_ode4, QuasicontactError};
use crate::symexpr::{
    diff, eval, is_equal, is_zero, normalize, q, substitute, Assignment, EvalError, Expr, FuncDecl, JetSymbol, Leaf,
    Rational, ZeroTestConfig,
};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// stated in the source literature
    Paper,
    /// immediate from the definitions
    Trivial,
    /// computed by hand or by an independent route
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        })
    }
}

type Check = Box<dyn Fn(&ZeroTestConfig) -> Result<bool, Box<dyn Error>>>;

pub struct Example {
    pub module: &'static str,
    pub name: &'static str,
    pub tag: Provenance,
    check: Check,
}

impl Example {
    fn new(
        module: &'static str,
        name: &'static str,
        tag: Provenance,
        check: impl Fn(&ZeroTestConfig) -> Result<bool, Box<dyn Error>> + 'static,
    ) -> Example {
        Example { module, name, tag, check: Box::new(check) }
    }

    pub fn run(&self, cfg: &ZeroTestConfig) -> Result<bool, Box<dyn Error>> {
        (self.check)(cfg)
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub module: &'static str,
    pub name: &'static str,
    pub tag: Provenance,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}: {}", self.tag, self.module, self.name, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub passed: Vec<String>,
    pub failure: Option<Failure>,
    pub notes: Vec<String>,
}

pub fn run_selftest(cfg: &ZeroTestConfig) -> SelftestReport {
    let mut passed = Vec::new();
    let notes = vec![
        "w1 uses 1/4 f_r^3; the 1/4 f_r^2 variant breaks the Euler-Lagrange closure".to_string(),
        "c0 of an Euler-Lagrange ODE equals 8/9 of (4L_qqq^2 - 3L_qqqq L_qq)/L_qq^2".to_string(),
    ];
    for ex in examples() {
        let label = format!("{}: {}", ex.module, ex.name);
        let detail = match ex.run(cfg) {
            Ok(true) => {
                passed.push(label);
                continue;
            }
            Ok(false) => "value mismatch".to_string(),
            Err(e) => format!("error: {e}"),
        };
        let failure = Failure { module: ex.module, name: ex.name, tag: ex.tag, detail };
        return SelftestReport { passed, failure: Some(failure), notes };
    }
    SelftestReport { passed, failure: None, notes }
}

fn z(e: &Expr, cfg: &ZeroTestConfig) -> Result<bool, Box<dyn Error>> {
    Ok(is_zero(e, cfg)?.is_zero())
}

fn eq(a: &Expr, b: &Expr, cfg: &ZeroTestConfig) -> Result<bool, Box<dyn Error>> {
    Ok(is_equal(a, b, cfg)?.is_zero())
}

fn ode4(s: &str) -> Result<Expr, Box<dyn Error>> {
    Ok(parse_expr(s, &Scope::with_coords(&ODE4_COORDS))?)
}

fn ode4_with(s: &str, decls: &[(&str, &[&str])]) -> Result<Expr, Box<dyn Error>> {
    let mut scope = Scope::with_coords(&ODE4_COORDS);
    for (name, args) in decls {
        scope.declare(FuncDecl::new(name, args));
    }
    Ok(parse_expr(s, &scope)?)
}

fn lag(s: &str, decls: &[(&str, &[&str])]) -> Result<Expr, Box<dyn Error>> {
    let mut scope = Scope::with_coords(&LAGRANGIAN2_COORDS);
    for (name, args) in decls {
        scope.declare(FuncDecl::new(name, args));
    }
    Ok(parse_expr(s, &scope)?)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn type_n(g: &Expr) -> Expr {
    &Expr::var("q") / &Expr::var("p") * diff(g, "p") + diff(g, "y")
}

const L_ARGS: &[&str] = &LAGRANGIAN2_COORDS;

fn examples() -> Vec<Example> {
    use Provenance::*;
    vec![
        // symbolic engine
        Example::new("symexpr", "diff(q*f[q], q) = f[q] + q*f[q,q]", Trivial, |cfg| {
            let decl: &[(&str, &[&str])] = &[("f", &ODE4_COORDS)];
            let e = ode4_with("q*f[q]", decl)?;
            eq(&diff(&e, "q"), &ode4_with("f[q] + q*f[q,q]", decl)?, cfg)
        }),
        Example::new("symexpr", "diff(4r^2/(3q), r) = 8r/(3q)", Trivial, |cfg| {
            eq(&diff(&ode4("4*r^2/(3*q)")?, "r"), &ode4("8*r/(3*q)")?, cfg)
        }),
        Example::new("symexpr", "diff(c, y) = 0", Trivial, |_| Ok(diff(&q(7, 3), "y").is_zero_const())),
        Example::new("symexpr", "substitute(u + r, u, f[]) = f[] + r", Trivial, |cfg| {
            let f = Expr::jet(JetSymbol::value(&FuncDecl::new("f", &ODE4_COORDS)));
            let e = Expr::var("u") + Expr::var("r");
            eq(&substitute(&e, "u", &f), &(&f + Expr::var("r")), cfg)
        }),
        Example::new("symexpr", "substitute(q^2, q, 0) = 0", Trivial, |_| {
            Ok(substitute(&Expr::var("q").pow(2), "q", &Expr::zero()).is_zero_const())
        }),
        Example::new("symexpr", "substitute(x, y, g) = x", Trivial, |_| {
            Ok(substitute(&Expr::var("x"), "y", &Expr::var("g")) == Expr::var("x"))
        }),
        Example::new("symexpr", "eval(4r^2/(3q), r=2, q=3) = 16/9", Trivial, |_| {
            let a = Assignment::new().with(Leaf::var("r"), rat(2, 1)).with(Leaf::var("q"), rat(3, 1));
            Ok(eval(&ode4("4*r^2/(3*q)")?, &a)? == rat(16, 9))
        }),
        Example::new("symexpr", "eval(4r^2/(3q), q=0) is a pole", Trivial, |_| {
            let a = Assignment::new().with(Leaf::var("r"), rat(2, 1)).with(Leaf::var("q"), rat(0, 1));
            Ok(matches!(eval(&ode4("4*r^2/(3*q)")?, &a), Err(EvalError::Pole)))
        }),
        Example::new("symexpr", "eval(f[q]*p, f[q]=7/2, p=2) = 7", Trivial, |_| {
            let f = FuncDecl::new("f", &ODE4_COORDS);
            let fq = JetSymbol::new(&f, &["q"])?;
            let a = Assignment::new().with(Leaf::Jet(fq.clone()), rat(7, 2)).with(Leaf::var("p"), rat(2, 1));
            Ok(eval(&(Expr::jet(fq) * Expr::var("p")), &a)? == rat(7, 1))
        }),
        Example::new("symexpr", "is_zero(q - q)", Trivial, |cfg| z(&(Expr::var("q") - Expr::var("q")), cfg)),
        Example::new("symexpr", "f[r,r,r] is nonzero", Trivial, |cfg| {
            Ok(!z(&ode4_with("f[r,r,r]", &[("f", &ODE4_COORDS)])?, cfg)?)
        }),
        Example::new("symexpr", "c1 of an opaque Euler-Lagrange ODE vanishes", Derived, |cfg| {
            let f = el_ode4(&lag("L[]", &[("L", L_ARGS)])?, cfg)?;
            z(&invariants_ode4(&f).c1, cfg)
        }),
        Example::new("symexpr", "normalize(1*x + 0) = x", Trivial, |_| {
            Ok(normalize(&(Expr::one() * Expr::var("x") + Expr::zero())) == Expr::var("x"))
        }),
        Example::new("symexpr", "normalize((2/4)*q) = q/2", Trivial, |_| {
            Ok(normalize(&(q(2, 4) * Expr::var("q"))).to_string() == "q/2")
        }),
        Example::new("symexpr", "normalize(x*y/x) = y", Trivial, |_| {
            let (x, y) = (Expr::var("x"), Expr::var("y"));
            Ok(normalize(&(&x * &y / &x)) == y)
        }),
        // parsing
        Example::new("frontend", "(4*r^2)/(3*q) parses as a quotient", Trivial, |_| {
            Ok(ode4("(4*r^2)/(3*q)")? == (Expr::int(4) * Expr::var("r").pow(2)) / (Expr::int(3) * Expr::var("q")))
        }),
        Example::new("frontend", "L[z] is rejected", Trivial, |_| Ok(lag("L[z]", &[("L", L_ARGS)]).is_err())),
        Example::new("frontend", "submaximal ODE problem", Paper, |_| {
            Ok(parse_problem("kind = ode4\nf = (4*r^2)/(3*q)").is_ok())
        }),
        Example::new("frontend", "kind = ode4 without f", Trivial, |_| {
            Ok(matches!(parse_problem("kind = ode4"), Err(FrontendError::Schema(SchemaError::MissingKey { .. }))))
        }),
        Example::new("frontend", "Lagrangian problem with a declaration", Trivial, |_| {
            Ok(parse_problem("kind = lagrangian2\ndeclare h1(x,y,p)\nL = h1[]/(q+1)").is_ok())
        }),
        // total derivatives
        Example::new("jetspace", "D y = p, D r = f", Trivial, |_| {
            let f = Expr::var("f0");
            let ctx = JetContext::ode4(&f);
            Ok(ctx.total_derivative(&Expr::var("y")) == Expr::var("p") && ctx.total_derivative(&Expr::var("r")) == f)
        }),
        Example::new("jetspace", "D f_r = 8r^2/(9q^2) for the submaximal ODE", Derived, |cfg| {
            let f = ode4("4*r^2/(3*q)")?;
            let d = JetContext::ode4(&f).total_derivative(&diff(&f, "r"));
            eq(&d, &ode4("8*r^2/(9*q^2)")?, cfg)
        }),
        // coframe
        Example::new("coframe", "f = 0: theta1 row is 6 dr", Derived, |_| {
            let c = adapted_coframe_ode4(&Expr::zero());
            Ok(c.rows[4][..4].iter().all(|e| e.is_zero_const()) && c.rows[4][4] == Expr::int(6))
        }),
        Example::new("coframe", "f = 0: omega0 row is dx/3", Trivial, |_| {
            let c = adapted_coframe_ode4(&Expr::zero());
            Ok(c.rows[3][0] == q(1, 3) && c.rows[3][1..].iter().all(|e| e.is_zero_const()))
        }),
        Example::new("coframe", "omega3 = dy - p dx", Paper, |_| {
            let c = adapted_coframe_ode4(&ode4("x*r^2 + y")?);
            Ok(c.rows[0][0] == -Expr::var("p") && c.rows[0][1].is_one_const())
        }),
        Example::new("coframe", "f = 0: dual of theta1 is d/dr / 6", Derived, |_| {
            let fr = invert_coframe(&adapted_coframe_ode4(&Expr::zero()))?;
            Ok(coframe_derivative(&fr, &Expr::var("r"), Slot::Theta1) == q(1, 6)
                && coframe_derivative(&fr, &Expr::var("q"), Slot::Theta1).is_zero_const())
        }),
        Example::new("coframe", "f = 0: dual of omega0 is 3(d/dx + p d/dy + q d/dp + r d/dq)", Derived, |_| {
            let fr = invert_coframe(&adapted_coframe_ode4(&Expr::zero()))?;
            let want = ["3", "3*p", "3*q", "3*r", "0"];
            Ok(fr.cols[Slot::Omega0.index()].iter().zip(want).all(|(e, w)| e.to_string() == w))
        }),
        Example::new("coframe", "w0;1 = (g_pp p - g_p)/p^2 on f = (q/p) g_p + g_y", Paper, |cfg| {
            let decl: &[(&str, &[&str])] = &[("g", &["y", "p"])];
            let f = type_n(&ode4_with("g[]", decl)?);
            let bars = w0_bar_derivatives(&f, 1)?;
            eq(&bars[1], &ode4_with("(g[p,p]*p - g[p])/p^2", decl)?, cfg)
        }),
        // fourth-order invariants
        Example::new("ode4_invariants", "f = 0 has vanishing invariants", Trivial, |_| {
            Ok(invariants_ode4(&Expr::zero()).named().iter().all(|(_, e)| e.is_zero_const()))
        }),
        Example::new("ode4_invariants", "submaximal ODE: c1 = w1 = w0 = 0, c0 = -160/(81q^2)", Derived, |cfg| {
            let inv = invariants_ode4(&ode4("4*r^2/(3*q)")?);
            Ok(z(&inv.c1, cfg)? && z(&inv.w1, cfg)? && z(&inv.w0, cfg)? && eq(&inv.c0, &ode4("-160/(81*q^2)")?, cfg)?)
        }),
        Example::new("ode4_invariants", "f = 0 is variational", Trivial, |cfg| {
            Ok(is_variational_ode4(&Expr::zero(), cfg)?.is_variational())
        }),
        Example::new("ode4_invariants", "submaximal ODE is variational", Paper, |cfg| {
            Ok(is_variational_ode4(&ode4("4*r^2/(3*q)")?, cfg)?.is_variational())
        }),
        Example::new("ode4_invariants", "f = r^2 is variational (L = exp(-q))", Derived, |cfg| {
            Ok(is_variational_ode4(&ode4("r^2")?, cfg)?.is_variational())
        }),
        Example::new("ode4_invariants", "f = q*r is not variational", Derived, |cfg| {
            Ok(!is_variational_ode4(&ode4("q*r")?, cfg)?.is_variational())
        }),
        Example::new("ode4_invariants", "quartic of f = 0 vanishes", Trivial, |cfg| {
            Ok(cartan_quartic(&Expr::zero(), cfg)?.a.iter().all(|a| a.is_zero_const()))
        }),
        Example::new("ode4_invariants", "quartic of a non-variational ODE is refused", Derived, |cfg| {
            Ok(matches!(cartan_quartic(&ode4("q*r")?, cfg), Err(Ode4Error::NotVariational { .. })))
        }),
        Example::new("ode4_invariants", "w0;11111 = 0 for an opaque Euler-Lagrange ODE", Paper, |cfg| {
            let f = el_ode4(&lag("L[]", &[("L", L_ARGS)])?, cfg)?;
            z(&w0_bar_derivatives(&f, 5)?[5], cfg)
        }),
        Example::new("ode4_invariants", "w0;11 = 0 on f = (q/p) g_p + g_y", Paper, |cfg| {
            let f = type_n(&ode4_with("g[]", &[("g", &["y", "p"])])?);
            z(&w0_bar_derivatives(&f, 2)?[2], cfg)
        }),
        Example::new("ode4_invariants", "multiplicity of the zero quartic is infinite", Trivial, |_| {
            Ok(binary_quartic_multiplicity(&[rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]) == Multiplicity::Infinite)
        }),
        Example::new("ode4_invariants", "t^4 has multiplicity 4", Trivial, |_| {
            Ok(binary_quartic_multiplicity(&[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]) == Multiplicity::Finite(4))
        }),
        Example::new("ode4_invariants", "6t^2 has multiplicity 2", Derived, |_| {
            Ok(binary_quartic_multiplicity(&[rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)]) == Multiplicity::Finite(2))
        }),
        Example::new("ode4_invariants", "null-family Lagrangian gives null_symmetry", Paper, |cfg| {
            let decl: &[(&str, &[&str])] =
                &[("h1", &["x", "y", "p"]), ("h2", &["x", "y", "p"]), ("h3", &["x", "y", "p"]), ("h4", &["x", "y", "p"])];
            let h: Vec<Expr> = ["h1[]", "h2[]", "h3[]", "h4[]"].iter().map(|s| lag(s, decl)).collect::<Result<_, _>>()?;
            let l = null_family_lagrangian(&h[0], &h[1], &h[2], &h[3], cfg)?;
            Ok(classify_235(&el_ode4(&l, cfg)?, cfg)?.null_symmetry)
        }),
        Example::new("ode4_invariants", "generic g(y,p): descends to J2, holonomy not reduced", Paper, |cfg| {
            let f = type_n(&ode4_with("g[]", &[("g", &["y", "p"])])?);
            let c = classify_235(&f, cfg)?;
            Ok(c.descends_to_j2 && !c.holonomy_reduced)
        }),
        Example::new("ode4_invariants", "g = h1(y) p^2 + h2(y): holonomy reduced", Paper, |cfg| {
            let g = ode4_with("h1[]*p^2 + h2[]", &[("h1", &["y"]), ("h2", &["y"])])?;
            let c = classify_235(&type_n(&g), cfg)?;
            Ok(c.holonomy_reduced && c.multiplicities.iter().all(|(_, m)| m.at_least(4)))
        }),
        // pairs
        Example::new("ode3pair_invariants", "trivial pair has vanishing blocks", Trivial, |_| {
            let inv = invariants_pair(&Expr::zero(), &Expr::zero());
            Ok(inv.named().iter().all(|(_, e)| e.is_zero_const()))
        }),
        Example::new("ode3pair_invariants", "f1 = q1^2: only E^1_11 = 2", Trivial, |_| {
            let f1 = parse_expr("q1^2", &Scope::with_coords(&PAIR_COORDS))?;
            let blk = pair_building_blocks(&f1, &Expr::zero());
            let mut ok = true;
            for (r, row) in blk.e.iter().enumerate() {
                for (s, col) in row.iter().enumerate() {
                    for (t, e) in col.iter().enumerate() {
                        ok &= *e == Expr::int(if (r, s, t) == (0, 0, 0) { 2 } else { 0 });
                    }
                }
            }
            Ok(ok)
        }),
        Example::new("ode3pair_invariants", "degenerate Lagrangian pair: b1 = b2 = b3 = 0, b4 != 0", Paper, |cfg| {
            let (f1, f2) = degenerate_pair(cfg)?;
            let inv = invariants_pair(&f1, &f2);
            let mut low = true;
            for (_, e) in inv.variational_part() {
                low &= z(e, cfg)?;
            }
            Ok(low && !(z(&inv.b4[0], cfg)? && z(&inv.b4[1], cfg)? && z(&inv.b4[2], cfg)?))
        }),
        Example::new("ode3pair_invariants", "trivial pair is variational", Paper, |cfg| {
            Ok(is_variational_pair(&Expr::zero(), &Expr::zero(), cfg)?.is_variational())
        }),
        Example::new("ode3pair_invariants", "f1 = q1^3 is not variational", Derived, |cfg| {
            let f1 = parse_expr("q1^3", &Scope::with_coords(&PAIR_COORDS))?;
            Ok(!is_variational_pair(&f1, &Expr::zero(), cfg)?.is_variational())
        }),
        Example::new("ode3pair_invariants", "variational pairs have a null symmetry", Paper, |cfg| {
            let rep = pair_symmetry_nullity(&Expr::zero(), &Expr::zero(), cfg)?;
            Ok(rep.b50_zero && rep.null_symmetry == Some(true))
        }),
        // Euler-Lagrange
        Example::new("euler_lagrange", "L = q^2/2 gives f = 0", Trivial, |cfg| z(&el_ode4(&lag("q^2/2", &[])?, cfg)?, cfg)),
        Example::new("euler_lagrange", "L = q^2/2 + y^2/2 gives f = -y", Derived, |cfg| {
            eq(&el_ode4(&lag("q^2/2 + y^2/2", &[])?, cfg)?, &-Expr::var("y"), cfg)
        }),
        Example::new("euler_lagrange", "opaque L agrees with the closed form", Paper, |cfg| {
            let l = lag("L[]", &[("L", L_ARGS)])?;
            eq(&el_ode4(&l, cfg)?, &el_ode4_closed_form(&l), cfg)
        }),
        Example::new("euler_lagrange", "L = p2 q1 - p1 q2 gives the trivial pair", Paper, |cfg| {
            let (f1, f2) = el_pair3(&Expr::var("p2"), &-Expr::var("p1"), &Expr::zero(), cfg)?;
            Ok(z(&f1, cfg)? && z(&f2, cfg)?)
        }),
        Example::new("euler_lagrange", "opaque degenerate Lagrangians give variational pairs", Derived, |cfg| {
            let decl: Vec<(&str, &[&str])> = vec![("L1", &LAGRANGIAN_PAIR_COORDS), ("L2", &LAGRANGIAN_PAIR_COORDS), ("L0", &LAGRANGIAN_PAIR_COORDS)];
            let mut scope = Scope::with_coords(&LAGRANGIAN_PAIR_COORDS);
            for (n, a) in decl {
                scope.declare(FuncDecl::new(n, a));
            }
            let ls: Vec<Expr> = ["L1[]", "L2[]", "L0[]"].iter().map(|s| parse_expr(s, &scope)).collect::<Result<_, _>>()?;
            let (f1, f2) = el_pair3(&ls[0], &ls[1], &ls[2], cfg)?;
            Ok(is_variational_pair(&f1, &f2, cfg)?.is_variational())
        }),
        // quasi-contactification
        Example::new("quasicontact", "f = 0 has a null symmetry", Trivial, |cfg| Ok(symmetry_norm_ode4(&Expr::zero(), cfg)?.null)),
        Example::new("quasicontact", "submaximal ODE has a non-null symmetry", Derived, |cfg| {
            Ok(!symmetry_norm_ode4(&ode4("4*r^2/(3*q)")?, cfg)?.null)
        }),
        Example::new("quasicontact", "F = q^2/2 has vanishing Monge metric", Trivial, |cfg| {
            z(&monge_metric(&lag("q^2/2", &[])?, cfg)?, cfg)
        }),
        Example::new("quasicontact", "L = 1/q has c0 = 0", Derived, |cfg| {
            let l = null_family_lagrangian(&Expr::one(), &Expr::zero(), &Expr::zero(), &Expr::zero(), cfg)?;
            z(&invariants_ode4(&el_ode4(&l, cfg)?).c0, cfg)
        }),
        Example::new("quasicontact", "h1 = 0 is rejected", Trivial, |cfg| {
            let o = Expr::zero();
            Ok(matches!(null_family_lagrangian(&o, &o, &o, &o, cfg), Err(QuasicontactError::DegenerateFamily)))
        }),
        // orthopath
        Example::new("orthopath", "Riemannian data: (A,T,N,q) = (0,0,0,-1)", Paper, |cfg| {
            let sig = Signature::new(2, 1)?;
            let mut d = FinslerData::zeros(sig.dim());
            for a in 0..sig.dim() {
                d.set_curvature_sym(a, a, Expr::int(5 * sig.eps(a)));
            }
            let inv = orthopath_from_finsler(&d, &sig, cfg)?;
            let flat = inv.a.iter().chain(&inv.t).chain(&inv.n).all(|e| e.is_zero_const() || z(e, cfg).unwrap_or(false));
            Ok(flat && eq(&inv.q, &Expr::int(-1), cfg)?)
        }),
        Example::new("orthopath", "zero data gives q = -1", Trivial, |cfg| {
            let sig = Signature::new(2, 0)?;
            let inv = orthopath_from_finsler(&FinslerData::zeros(2), &sig, cfg)?;
            eq(&inv.q, &Expr::int(-1), cfg)
        }),
        Example::new("orthopath", "Ibar = 0 and |I|^2 = 1/2 give q = 0", Paper, |cfg| {
            // signature (1,1): I_a = (I_a11 - I_a22)/4, so I = (3/4, 1/4) with norm 9/16 - 1/16
            let sig = Signature::new(1, 1)?;
            let mut d = FinslerData::zeros(2);
            d.set_torsion_sym(0, 0, 0, Expr::int(3));
            d.set_torsion_sym(1, 0, 0, Expr::int(1));
            let rep = check_minimal_indicatrix(&d, &sig, cfg)?;
            Ok(rep.minimal && rep.half_norm && rep.q_zero)
        }),
        Example::new("orthopath", "constant curvature is not holonomy reduced", Trivial, |cfg| {
            let sig = Signature::new(2, 0)?;
            let mut d = FinslerData::zeros(2);
            d.set_curvature_sym(0, 0, Expr::int(1));
            d.set_curvature_sym(1, 1, Expr::int(1));
            Ok(!holonomy_reduction_flags(&d, &sig, cfg)?.reduced)
        }),
    ]
}

fn degenerate_pair(cfg: &ZeroTestConfig) -> Result<(Expr, Expr), Box<dyn Error>> {
    let scope = Scope::with_coords(&LAGRANGIAN_PAIR_COORDS)
        .with(FuncDecl::new("g", &["p1", "p2"]))
        .with(FuncDecl::new("h", &["p1", "p2"]));
    Ok(el_pair3(&parse_expr("g[]", &scope)?, &parse_expr("h[]", &scope)?, &Expr::zero(), cfg)?)
}
