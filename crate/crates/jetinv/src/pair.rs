//! Point invariants of pairs of third-order ODEs `y_i''' = f_i(x,y,p,q)`.
//!
//! Index conventions: `A[r][s] = ∂f^r/∂q^s` (upper index first), summation
//! over repeated indices, symmetrization and antisymmetrization with weight 1/2.

use crate::jetspace::JetContext;
use crate::ode4::Variationality;
use crate::symexpr::{diff, is_zero, q, Expr, Verdict, ZeroTestConfig, ZeroTestError};

type Mat = [[Expr; 2]; 2];

fn var(prefix: &str, i: usize) -> String {
    format!("{prefix}{}", i + 1)
}

fn mat(f: impl Fn(usize, usize) -> Expr) -> Mat {
    std::array::from_fn(|r| std::array::from_fn(|s| f(r, s)))
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    mat(|r, s| &a[r][0] * &b[0][s] + &a[r][1] * &b[1][s])
}

fn trace(a: &Mat) -> Expr {
    &a[0][0] + &a[1][1]
}

fn delta(r: usize, s: usize) -> Expr {
    if r == s {
        Expr::one()
    } else {
        Expr::zero()
    }
}

#[derive(Debug, Clone)]
pub struct PairBlocks {
    /// `e[r][s][t] = ∂²f^r/∂q^s∂q^t`
    pub e: [[[Expr; 2]; 2]; 2],
    /// trace-free part of `e`
    pub e_ring: [[[Expr; 2]; 2]; 2],
    pub f: Mat,
    pub g: Mat,
    /// `h[r][s] = H_rs`
    pub h: Mat,
}

pub fn pair_building_blocks(f1: &Expr, f2: &Expr) -> PairBlocks {
    let ctx = JetContext::pair(f1, f2);
    let d = |e: &Expr| ctx.total_derivative(e);
    let fs = [f1, f2];
    let qv: [String; 2] = std::array::from_fn(|i| var("q", i));
    let pv: [String; 2] = std::array::from_fn(|i| var("p", i));
    let yv: [String; 2] = std::array::from_fn(|i| var("y", i));

    let a = mat(|r, s| diff(fs[r], &qv[s]));
    let p = mat(|r, s| diff(fs[r], &pv[s]));
    let y = mat(|r, s| diff(fs[r], &yv[s]));
    let e: [[[Expr; 2]; 2]; 2] =
        std::array::from_fn(|r| std::array::from_fn(|s| std::array::from_fn(|t| diff(&a[r][s], &qv[t]))));
    // e_u = E^v_vu
    let tr_e: [Expr; 2] = std::array::from_fn(|u| &e[0][0][u] + &e[1][1][u]);
    let e_ring = std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            std::array::from_fn(|t| {
                let corr = Expr::sum([&tr_e[s] * delta(r, t), &tr_e[t] * delta(r, s)]);
                &e[r][s][t] - q(1, 3) * corr
            })
        })
    });

    let aa = mul(&a, &a);
    let da = mat(|r, s| d(&a[r][s]));
    let fm = mat(|r, s| Expr::sum([da[r][s].clone(), q(-1, 3) * &aa[r][s], -p[r][s].clone()]));

    let tr_a = trace(&a);
    let quad = trace(&aa) + tr_a.pow(2);
    let daa = mul(&da, &a);
    let ap = mul(&a, &p);
    let pa = mul(&p, &a);
    let g = mat(|r, s| {
        Expr::sum([
            d(&da[r][s]),
            q(-2, 3) * d(&aa[r][s]),
            q(-2, 3) * &daa[r][s],
            q(-3, 1) * d(&p[r][s]),
            q(2, 9) * &a[r][s] * &quad,
            ap[r][s].clone(),
            pa[r][s].clone(),
            q(6, 1) * &y[r][s],
        ])
    });

    let h = mat(|r, s| {
        // Σ_u ∂³f^u/∂q^u∂q^r∂q^s and the mixed ∂³f^u/∂q^u∂q^r∂p^s
        let t3 = Expr::sum((0..2).map(|u| diff(&e[u][u][r], &qv[s])).collect::<Vec<_>>());
        let mixed = Expr::sum((0..2).map(|u| diff(&e[u][u][r], &pv[s])).collect::<Vec<_>>());
        let a_e = Expr::sum((0..2).map(|u| &a[u][s] * &tr_e[u]).collect::<Vec<_>>());
        let a_ee = Expr::sum(
            (0..2).flat_map(|u| (0..2).map(move |v| (u, v))).map(|(u, v)| &a[u][v] * &e[v][u][s]).collect::<Vec<_>>(),
        );
        let e_e = Expr::sum((0..2).map(|u| &e[u][r][s] * &tr_e[u]).collect::<Vec<_>>());
        Expr::sum([
            d(&t3),
            q(32, 5) * mixed,
            q(-27, 5) * &t3,
            q(74, 15) * diff(&a_e, &qv[r]),
            q(-18, 5) * diff(&a_ee, &qv[r]),
            q(29, 15) * e_e,
            q(14, 45) * &tr_e[r] * &tr_e[s],
        ])
    });

    PairBlocks { e, e_ring, f: fm, g, h }
}

#[derive(Debug, Clone)]
pub struct PairInvariants {
    pub b1: [Expr; 4],
    pub b2: [Expr; 3],
    pub b3: Expr,
    pub b4: [Expr; 3],
    /// identically zero for pairs
    pub b5: Expr,
    pub b6: [Expr; 3],
}

impl PairInvariants {
    pub fn named(&self) -> Vec<(&'static str, &Expr)> {
        vec![
            ("b10", &self.b1[0]),
            ("b11", &self.b1[1]),
            ("b12", &self.b1[2]),
            ("b13", &self.b1[3]),
            ("b20", &self.b2[0]),
            ("b21", &self.b2[1]),
            ("b22", &self.b2[2]),
            ("b30", &self.b3),
            ("b40", &self.b4[0]),
            ("b41", &self.b4[1]),
            ("b42", &self.b4[2]),
            ("b50", &self.b5),
            ("b60", &self.b6[0]),
            ("b61", &self.b6[1]),
            ("b62", &self.b6[2]),
        ]
    }

    /// The seven components whose vanishing characterizes variational pairs.
    pub fn variational_part(&self) -> Vec<(&'static str, &Expr)> {
        self.named().into_iter().take(8).collect()
    }
}

pub fn invariants_pair(f1: &Expr, f2: &Expr) -> PairInvariants {
    let blk = pair_building_blocks(f1, f2);
    invariants_from_blocks(&blk, f1, f2)
}

fn invariants_from_blocks(blk: &PairBlocks, f1: &Expr, f2: &Expr) -> PairInvariants {
    let (e, f, g, h) = (&blk.e_ring, &blk.f, &blk.g, &blk.h);
    let half = || q(1, 2);
    let a = mat(|r, s| diff([f1, f2][r], &var("q", s)));
    let tr_a = trace(&a);
    // A^[t_s A^s]_t
    let anti = half() * (trace(&mul(&a, &a)) - tr_a.pow(2));
    PairInvariants {
        b1: [e[1][0][0].clone(), e[1][1][0].clone(), e[1][1][1].clone(), e[0][1][1].clone()],
        b2: [-f[1][0].clone(), half() * (&f[0][0] - &f[1][1]), f[0][1].clone()],
        b3: Expr::sum([g[0][0].clone(), g[1][1].clone(), q(8, 9) * tr_a * anti]),
        b4: [-g[1][0].clone(), half() * (&g[0][0] - &g[1][1]), g[0][1].clone()],
        b5: Expr::zero(),
        b6: [h[0][0].clone(), half() * (&h[0][1] + &h[1][0]), h[1][1].clone()],
    }
}

/// Variational iff `b1`, `b2` and `b3` vanish.
pub fn is_variational_pair(f1: &Expr, f2: &Expr, cfg: &ZeroTestConfig) -> Result<Variationality, ZeroTestError> {
    let inv = invariants_pair(f1, f2);
    for (name, e) in inv.variational_part() {
        if let Verdict::NonZero(w) = is_zero(e, cfg)? {
            return Ok(Variationality::NotVariational { invariant: name, witness: w });
        }
    }
    Ok(Variationality::Variational)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullityReport {
    pub b50_zero: bool,
    /// `None` when the pair is not variational and the statement does not apply.
    pub null_symmetry: Option<bool>,
}

/// Since `b50 = 0` for every pair, the quasi-contactified symmetry of a
/// variational pair is null.
pub fn pair_symmetry_nullity(f1: &Expr, f2: &Expr, cfg: &ZeroTestConfig) -> Result<NullityReport, ZeroTestError> {
    let inv = invariants_pair(f1, f2);
    let b50_zero = is_zero(&inv.b5, cfg)?.is_zero();
    let variational = is_variational_pair(f1, f2, cfg)?.is_variational();
    Ok(NullityReport { b50_zero, null_symmetry: variational.then_some(b50_zero) })
}
