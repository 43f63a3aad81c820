//! Quadrature ratios for the two Gagliardo–Nirenberg type inequalities.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{sample, trapezoid, Member, Sampled};
use super::ledger::Q;
use super::InequalityReport;
use crate::error::{Error, Result};

/// `‖w‖_r` by trapezoid quadrature, scaled by `max|w|` against overflow.
fn norm(s: &Sampled, r: f64) -> f64 {
    let top = s.w.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    top * trapezoid(s.w.iter().map(|v| (v.abs() / top).powf(r)), s.dx).powf(1.0 / r)
}

/// `∫|w|^{p−2}|w_x|^{m+1}`.
fn dissipation(s: &Sampled, p: f64, m: f64) -> f64 {
    trapezoid(s.w.iter().zip(&s.dw).map(|(w, d)| w.abs().powf(p - 2.0) * d.abs().powf(m + 1.0)), s.dx)
}

/// Numerator and denominator of the `(p, m)` ratio on one sampling.
fn parts_103a(s: &Sampled, p: f64, m: f64) -> (f64, f64) {
    let num = trapezoid(s.w.iter().zip(&s.dw).map(|(w, d)| w.abs().powf(p - 1.0) * d * d), s.dx);
    let den = norm(s, (2.0 - m) / (m - 1.0)).powf(2.0 - m) * dissipation(s, p, m);
    (num, den)
}

fn parts_402a(s: &Sampled, p: f64, m: f64, nu: f64) -> (f64, f64) {
    let lp = trapezoid(s.w.iter().map(|w| w.abs().powf(p)), s.dx);
    (lp.powf(nu), dissipation(s, p, m))
}

/// `num/den`, with `0/0 = 0` and `x/0 = ∞` for a counterexample.
fn quotient(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Largest ratio at `points` and `2 points` per extent, and the worst relative
/// change between the two resolutions.
fn sup_with_refinement(
    members: &[Member],
    points: usize,
    parts: impl Fn(&Sampled) -> (f64, f64) + Sync,
) -> (f64, f64) {
    let pairs: Vec<(f64, f64)> = members
        .par_iter()
        .map(|w| {
            let coarse = parts(&sample(w, points));
            let fine = parts(&sample(w, 2 * points));
            (quotient(coarse.0, coarse.1), quotient(fine.0, fine.1))
        })
        .collect();
    let sup = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    let drift = pairs
        .iter()
        .map(|&(c, f)| if f == 0.0 && c == 0.0 { 0.0 } else { ((c - f) / f).abs() })
        .fold(0.0, f64::max);
    (sup, drift)
}

fn check_pm(p: f64, m: f64, m_max: f64) -> Result<()> {
    if !(p >= 2.0) {
        return Err(Error::InvalidParameter { name: "p", value: p, reason: "must be at least 2" });
    }
    if !(m > 1.0 && m <= m_max) {
        return Err(Error::InvalidParameter { name: "m", value: m, reason: "outside the admissible range" });
    }
    Ok(())
}

/// Sup of `∫|w|^{p−1}w_x² / (‖w‖_{(2−m)/(m−1)}^{2−m} ∫|w|^{p−2}|w_x|^{m+1})`.
pub fn verify_interp_103a(members: &[Member], p: f64, m: f64, points: usize) -> Result<InequalityReport> {
    check_pm(p, m, 4.0 / 3.0 + 1e-15)?;
    let (sup, drift) = sup_with_refinement(members, points, |s| parts_103a(s, p, m));
    Ok(InequalityReport {
        prop: "interp_103a".into(),
        params: BTreeMap::from([("p".into(), p), ("m".into(), m), ("points".into(), points as f64)]),
        empirical_constant: sup,
        samples: members.len(),
        refinement_drift: Some(drift),
        pass: sup.is_finite() && drift < 0.02,
    })
}

/// `‖w‖_2` at the finer of the two resolutions used by the verifiers.
pub fn l2_norm(member: &Member, points: usize) -> f64 {
    norm(&sample(member, 2 * points), 2.0)
}

/// `member` rescaled to unit `L^2` norm.
pub fn normalized(member: &Member, points: usize) -> Member {
    let n = l2_norm(member, points);
    if n > 0.0 {
        member.scaled(1.0 / n)
    } else {
        member.clone()
    }
}

/// Sup of `(‖w‖_p^p)^ν / ∫|w|^{p−2}|w_x|^{m+1}` with `ν = 1 + (3m+1)/(p−2)`,
/// over members with `‖w‖_2 ≤ 1`.
pub fn verify_interp_402a(members: &[Member], p: f64, m: f64, points: usize) -> Result<InequalityReport> {
    if !(p > 2.0) {
        return Err(Error::InvalidParameter { name: "p", value: p, reason: "must exceed 2" });
    }
    check_pm(p, m, 2.0 - 1e-15)?;
    for (k, w) in members.iter().enumerate() {
        let n = l2_norm(w, points);
        if n > 1.0 + 1e-12 {
            return Err(Error::Precondition(format!("member {k} has L2 norm {n} > 1")));
        }
    }
    let nu = 1.0 + (3.0 * m + 1.0) / (p - 2.0);
    let (sup, drift) = sup_with_refinement(members, points, |s| parts_402a(s, p, m, nu));
    Ok(InequalityReport {
        prop: "interp_402a".into(),
        params: BTreeMap::from([
            ("p".into(), p),
            ("m".into(), m),
            ("nu_stmt".into(), nu),
            ("nu_proof".into(), (m + p - 1.0) / (m * p + m + p - 1.0)),
            ("points".into(), points as f64),
        ]),
        empirical_constant: sup,
        samples: members.len(),
        refinement_drift: Some(drift),
        pass: sup.is_finite() && drift < 0.02,
    })
}

/// Degrees of a ratio under `w ↦ λ w(·)` and `w ↦ w(·/σ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub amplitude: Q,
    pub stretch: Q,
    /// Degree in `σ` under `w ↦ σ^{−1/2} w(·/σ)`, which keeps `‖w‖_2` fixed.
    pub l2_preserving: Q,
}

impl Homogeneity {
    pub fn scale_invariant(&self) -> bool {
        self.amplitude == Q::from_integer(0) && self.stretch == Q::from_integer(0)
    }
}

fn homogeneity(amplitude: Q, stretch: Q) -> Homogeneity {
    Homogeneity { amplitude, stretch, l2_preserving: stretch - amplitude / Q::from_integer(2) }
}

/// The `(p, m)` ratio of [`verify_interp_103a`]: numerator degree `p + 1` in
/// amplitude and `−1` in stretch against the same for the denominator.
pub fn homogeneity_103a(p: Q, m: Q) -> Homogeneity {
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    let r = (two - m) / (m - one);
    let num = (p + one, -one);
    let den = ((two - m) + (p + m - one), (two - m) / r + (one - (m + one)));
    homogeneity(num.0 - den.0, num.1 - den.1)
}

/// The ratio of [`verify_interp_402a`]; not scale invariant, but of degree 0
/// under the `L^2`-preserving dilation.
pub fn homogeneity_402a(p: Q, m: Q) -> Homogeneity {
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    let nu = one + (Q::from_integer(3) * m + one) / (p - two);
    let num = (p * nu, nu);
    let den = (p + m - one, one - (m + one));
    homogeneity(num.0 - den.0, num.1 - den.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::family::{family, FamilyKind};

    const KINDS: [FamilyKind; 4] = [FamilyKind::Gaussian, FamilyKind::Bump, FamilyKind::Ramp, FamilyKind::RandomSpline];

    #[test]
    fn zero_function_gives_zero() {
        let z = [Member::Gaussian { amplitude: 0.0, width: 1.0 }];
        assert_eq!(verify_interp_103a(&z, 2.0, 1.25, 200).unwrap().empirical_constant, 0.0);
        assert_eq!(verify_interp_402a(&z, 4.0, 1.25, 200).unwrap().empirical_constant, 0.0);
    }

    #[test]
    fn gaussian_103a_is_finite_and_stable() {
        let fam = family(FamilyKind::Gaussian, 20, 1);
        let r = verify_interp_103a(&fam, 2.0, 1.25, 400).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.empirical_constant > 0.0);
    }

    #[test]
    fn all_families_103a() {
        for kind in KINDS {
            for (p, m) in [(2.0, 1.05), (3.0, 1.2), (6.0, 4.0 / 3.0)] {
                let r = verify_interp_103a(&family(kind, 10, 7), p, m, 400).unwrap();
                assert!(r.pass, "{kind:?} p={p} m={m}: {r:?}");
            }
        }
    }

    #[test]
    fn bump_402a() {
        let fam: Vec<Member> = family(FamilyKind::Bump, 20, 4).iter().map(|w| normalized(w, 400)).collect();
        let r = verify_interp_402a(&fam, 4.0, 1.25, 400).unwrap();
        assert_eq!(r.params["nu_stmt"], 3.375);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn all_families_402a() {
        for kind in KINDS {
            let fam: Vec<Member> = family(kind, 10, 11).iter().map(|w| normalized(w, 400)).collect();
            for (p, m) in [(3.0, 1.1), (4.0, 1.5), (8.0, 1.9)] {
                let r = verify_interp_402a(&fam, p, m, 400).unwrap();
                assert!(r.pass, "{kind:?} p={p} m={m}: {r:?}");
            }
        }
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let w = [Member::Gaussian { amplitude: 3.0, width: 2.0 }];
        assert!(matches!(verify_interp_402a(&w, 4.0, 1.25, 200), Err(Error::Precondition(_))));
    }

    #[test]
    fn homogeneity_audits() {
        let h = homogeneity_103a(Q::from_integer(2), Q::new(5, 4));
        assert!(h.scale_invariant(), "{h:?}");
        let h = homogeneity_402a(Q::from_integer(4), Q::new(5, 4));
        assert!(!h.scale_invariant());
        assert_eq!(h.amplitude, Q::new(37, 4));
        assert_eq!(h.l2_preserving, Q::from_integer(0));
    }

    #[test]
    fn numerical_scaling_matches_audit() {
        let w = Member::Gaussian { amplitude: 0.7, width: 1.3 };
        let (p, m) = (4.0, 1.25);
        let base = verify_interp_103a(&[w.clone()], p, m, 800).unwrap().empirical_constant;
        for lambda in [0.1, 10.0] {
            let r = verify_interp_103a(&[w.scaled(lambda)], p, m, 800).unwrap().empirical_constant;
            assert!((r / base - 1.0).abs() < 1e-10, "{lambda}");
            let r = verify_interp_103a(&[w.stretched(lambda)], p, m, 800).unwrap().empirical_constant;
            assert!((r / base - 1.0).abs() < 1e-10, "{lambda}");
        }
        let w = normalized(&w, 800);
        let base = verify_interp_402a(&[w.clone()], p, m, 800).unwrap().empirical_constant;
        let sigma: f64 = 3.0;
        let dilated = w.stretched(sigma).scaled(sigma.powf(-0.5));
        let r = verify_interp_402a(&[dilated], p, m, 800).unwrap().empirical_constant;
        assert!((r / base - 1.0).abs() < 1e-9);
        let shrunk = verify_interp_402a(&[w.scaled(0.5)], p, m, 800).unwrap().empirical_constant;
        assert!((shrunk / base - 0.5f64.powf(37.0 / 4.0)).abs() < 1e-9 * 0.5f64.powf(37.0 / 4.0));
    }
}
