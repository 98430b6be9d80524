mod common;

use common::{cfg, zero};
use jetinv::orthopath::{
    check_minimal_indicatrix, holonomy_reduction_flags, orthopath_from_finsler, FinslerData, OrthopathError,
    OrthopathInvariants, Signature,
};
use jetinv::symexpr::{Expr, ZeroTestConfig};
use proptest::prelude::*;

fn kappa() -> Expr {
    Expr::rational(-3, 7)
}

fn constant_curvature(sig: &Signature) -> FinslerData {
    let mut d = FinslerData::zeros(sig.dim());
    for a in 0..sig.dim() {
        d.set_curvature(a, a, kappa() * Expr::int(sig.eps(a)));
    }
    d
}

fn scaled(d: &FinslerData, lambda: &Expr) -> FinslerData {
    let m = d.dim();
    let mut s = d.clone();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                s.set_torsion(a, b, c, lambda * d.torsion(a, b, c));
            }
            s.set_curvature(a, b, lambda * d.curvature(a, b));
            // derivatives of I scale with I
            s.set_idot(a, b, lambda * d.idot(a, b));
            s.set_ibar(a, b, lambda * d.ibar(a, b));
        }
    }
    s
}

fn pattern(inv: &OrthopathInvariants) -> Vec<bool> {
    inv.a.iter().chain(&inv.t).chain(&inv.n).map(zero).collect()
}


#[test]
fn riemannian_constant_curvature() {
    let sig = Signature::new(2, 0).unwrap();
    let d = constant_curvature(&sig);
    let inv = orthopath_from_finsler(&d, &sig, &cfg()).unwrap();
    assert!(pattern(&inv).into_iter().all(|b| b));
    assert!(zero(&(&inv.q + Expr::one())));
    let hol = holonomy_reduction_flags(&d, &sig, &cfg()).unwrap();
    assert!(hol.mean_torsion_zero && !hol.curvature_trace_zero && !hol.reduced);
}

#[test]
fn all_zero_inputs() {
    let sig = Signature::new(1, 1).unwrap();
    let d = FinslerData::zeros(sig.dim());
    let inv = orthopath_from_finsler(&d, &sig, &cfg()).unwrap();
    assert!(pattern(&inv).into_iter().all(|b| b));
    assert!(zero(&(&inv.q + Expr::one())));
    let m = check_minimal_indicatrix(&d, &sig, &cfg()).unwrap();
    assert!(m.minimal && !m.q_zero);
    assert!(holonomy_reduction_flags(&d, &sig, &cfg()).unwrap().reduced);
}

#[test]
fn trace_free_torsion_gives_q_minus_one() {
    let sig = Signature::new(2, 0).unwrap();
    let mut d = FinslerData::zeros(2);
    // I_111 = a, I_122 = -a; I_112 = b, I_222 = -b: both traces vanish
    d.set_torsion_sym(0, 0, 0, Expr::rational(5, 3));
    d.set_torsion_sym(0, 1, 1, Expr::rational(-5, 3));
    d.set_torsion_sym(0, 0, 1, Expr::rational(2, 9));
    d.set_torsion_sym(1, 1, 1, Expr::rational(-2, 9));
    let inv = orthopath_from_finsler(&d, &sig, &cfg()).unwrap();
    assert!(zero(&(&inv.q + Expr::one())));
    d.set_idot(0, 1, Expr::int(4));
    let hol = holonomy_reduction_flags(&d, &sig, &cfg()).unwrap();
    assert!(hol.mean_torsion_zero && hol.reduced);
}

#[test]
fn minimal_indicatrix_with_half_norm() {
    // I_a = (I_a11 + I_a22)/4, so I_111 = I_112 = 2 gives I_1 = I_2 = 1/2
    let sig = Signature::new(2, 0).unwrap();
    let mut d = FinslerData::zeros(2);
    d.set_torsion_sym(0, 0, 0, Expr::int(2));
    d.set_torsion_sym(0, 0, 1, Expr::int(2));
    let m = check_minimal_indicatrix(&d, &sig, &cfg()).unwrap();
    assert!(m.minimal && m.half_norm && m.q_zero);
    d.set_ibar(0, 0, Expr::int(1));
    assert!(!check_minimal_indicatrix(&d, &sig, &cfg()).unwrap().minimal);
}

#[test]
fn asymmetric_torsion_is_rejected() {
    let sig = Signature::new(1, 1).unwrap();
    let mut d = FinslerData::zeros(2);
    d.set_torsion(0, 0, 1, Expr::one());
    assert!(matches!(orthopath_from_finsler(&d, &sig, &cfg()), Err(OrthopathError::SymmetryViolation { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn output_traces_vanish(dim in 2usize..=4, neg in 0usize..=2, seed in any::<u64>()) {
        let neg = neg.min(dim);
        let sig = Signature::new(dim - neg, neg).unwrap();
        let c = ZeroTestConfig::with_seed(seed);
        let d = FinslerData::random(sig.dim(), &mut c.rng(), &c);
        let inv = orthopath_from_finsler(&d, &sig, &cfg()).unwrap();
        prop_assert!(inv.a_traces(&sig).iter().all(zero));
        prop_assert!(zero(&inv.t_trace(&sig)));
        for a in 0..sig.dim() {
            for b in 0..sig.dim() {
                prop_assert!(zero(&(inv.n(a, b) + inv.n(b, a))));
            }
        }
    }

    #[test]
    fn scaling_preserves_vanishing_pattern(
        seed in any::<u64>(),
        mask in prop::collection::vec(any::<bool>(), 4),
        num in prop_oneof![-9i64..=-1, 1i64..=9],
        den in 1i64..=9,
    ) {
        let sig = Signature::new(1, 1).unwrap();
        let c = ZeroTestConfig::with_seed(seed);
        let mut d = FinslerData::random(2, &mut c.rng(), &c);
        // switch off whole tensors so that patterns other than "all nonzero" occur
        if mask[0] { d = with_zero_torsion(&d); }
        if mask[1] { for a in 0..2 { for b in 0..2 { d.set_curvature(a, b, Expr::zero()); } } }
        if mask[2] { for a in 0..2 { for b in 0..2 { d.set_idot(a, b, d.idot(b, a).clone()); } } }
        if mask[3] { for a in 0..2 { d.set_j(a, Expr::zero()); } }
        let lambda = Expr::rational(num, den);
        let before = pattern(&orthopath_from_finsler(&d, &sig, &cfg()).unwrap());
        let after = pattern(&orthopath_from_finsler(&scaled(&d, &lambda), &sig, &cfg()).unwrap());
        prop_assert_eq!(before, after);
    }
}

fn with_zero_torsion(d: &FinslerData) -> FinslerData {
    let mut z = d.clone();
    for a in 0..d.dim() {
        for b in 0..d.dim() {
            for c in 0..d.dim() {
                z.set_torsion(a, b, c, Expr::zero());
            }
        }
    }
    z
}
