//! The κ relations and the exponent bookkeeping of the interpolation steps.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentLedger {
    pub p: f64,
    pub m: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub nu_stmt: Option<f64>,
    pub nu_proof: f64,
    /// Residuals of the two linear equations after substitution.
    pub kappa2_residual: f64,
    pub kappa3_residual: f64,
    /// Range assertions that failed, verbatim.
    pub violations: Vec<String>,
}

impl ExponentLedger {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn kappa2_terms(p: f64, m: f64, k1: f64) -> (f64, f64) {
    let b = (m - 1.0) / (2.0 - m) * (m + p - 1.0) / (m + 1.0);
    let r = (m + p - 1.0) / (2.0 * k1 * (m + 1.0));
    (b, r)
}

/// Solves `κ2 (1/(m+1) − 1) + (1 − κ2) B = R` and
/// `κ3 (m−1)/(2−m) + (κ1 − κ3)/(2κ1) = 1`; range failures are collected, not fixed.
pub fn exponent_ledger(p: f64, m: f64) -> Result<ExponentLedger> {
    if !(p >= 2.0) {
        return Err(Error::InvalidParameter { name: "p", value: p, reason: "must be at least 2" });
    }
    if !(m > 1.0 && m <= 4.0 / 3.0 + 1e-15) {
        return Err(Error::InvalidParameter { name: "m", value: m, reason: "must lie in (1, 4/3]" });
    }
    let k1 = p - 1.0 + 2.0 / (m - 1.0);
    let (b, r) = kappa2_terms(p, m, k1);
    let k2 = (r - b) / (1.0 / (m + 1.0) - 1.0 - b);
    let k2_res = k2 * (1.0 / (m + 1.0) - 1.0) + (1.0 - k2) * b - r;
    let a = (m - 1.0) / (2.0 - m);
    let k3 = 0.5 / (a - 0.5 / k1);
    let k3_res = k3 * a + (k1 - k3) / (2.0 * k1) - 1.0;

    let mut violations = Vec::new();
    let floor = (2.0 - m) / (m - 1.0);
    if !(k1 > floor) {
        violations.push(format!("kappa1 = {k1} is not above (2-m)/(m-1) = {floor}"));
    }
    if !(floor >= 2.0 - 1e-12) {
        violations.push(format!("(2-m)/(m-1) = {floor} is below 2"));
    }
    if !(k2 > 0.0 && k2 < 1.0) {
        violations.push(format!("kappa2 = {k2} outside (0, 1)"));
    }
    if !(k3 > 0.0 && k3 < k1) {
        violations.push(format!("kappa3 = {k3} outside (0, kappa1 = {k1})"));
    }
    if !(k2_res.abs() <= 1e-12) {
        violations.push(format!("kappa2 residual {k2_res:e}"));
    }
    if !(k3_res.abs() <= 1e-12) {
        violations.push(format!("kappa3 residual {k3_res:e}"));
    }
    Ok(ExponentLedger {
        p,
        m,
        kappa1: k1,
        kappa2: k2,
        kappa3: k3,
        nu_stmt: (p > 2.0).then(|| 1.0 + (3.0 * m + 1.0) / (p - 2.0)),
        nu_proof: (m + p - 1.0) / (m * p + m + p - 1.0),
        kappa2_residual: k2_res,
        kappa3_residual: k3_res,
        violations,
    })
}

pub const SWEEP_M: [(i64, i64); 7] = [(21, 20), (11, 10), (23, 20), (6, 5), (5, 4), (13, 10), (4, 3)];

/// Ledgers for `p = 2..=20` and `m ∈ {1.05, 1.10, …, 1.30, 4/3}`.
pub fn ledger_sweep() -> Result<Vec<ExponentLedger>> {
    let mut out = Vec::new();
    for p in 2..=20 {
        for (a, b) in SWEEP_M {
            out.push(exponent_ledger(p as f64, a as f64 / b as f64)?);
        }
    }
    Ok(out)
}

/// Exact exponent bookkeeping for the `L^p`–`L^∞` chain, over the rationals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuAudit {
    pub p: Q,
    pub m: Q,
    pub nu_stmt: Q,
    pub nu_proof: Q,
    /// Exponent of `∫|w|^{p−2}|w_x|^{m+1}` obtained by chaining the two steps.
    pub nu_derived: Q,
    /// `nu_derived − nu_stmt`.
    pub residual: Q,
    /// Gagliardo–Nirenberg scaling defect of the `L^∞` step with `nu_proof`.
    pub gn_defect: Q,
}

/// `‖w‖_∞^{(m+p−1)/(m+1)} ≤ C I^{ν'/(m+1)} ‖w‖_p^{(m+p−1)(1−ν')/(m+1)}` with
/// `I = ∫|w|^{p−2}|w_x|^{m+1}`, raised to `(p−2)(m+1)/(m+p−1)` and fed into
/// `‖w‖_p^p ≤ C ‖w‖_∞^{p−2}`, then solved for `‖w‖_p^p`.
pub fn nu_audit(p: Q, m: Q) -> Result<NuAudit> {
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    if p <= two {
        return Err(Error::InvalidParameter { name: "p", value: ratio_f64(p), reason: "must exceed 2" });
    }
    if m <= one || m >= two {
        return Err(Error::InvalidParameter { name: "m", value: ratio_f64(m), reason: "must lie in (1, 2)" });
    }
    let nu_stmt = one + (Q::from_integer(3) * m + one) / (p - two);
    let nu_proof = (m + p - one) / (m * p + m + p - one);
    // ‖w‖_p^p ≤ C I^a (‖w‖_p^p)^b
    let a = nu_proof * (p - two) / (m + p - one);
    let b = (one - nu_proof) * (p - two) / p;
    let nu_derived = (one - b) / a;
    // |w|^{(m+p−1)/(m+1)} in L^∞ from its derivative in L^{m+1} and itself in
    // L^s, s = p(m+1)/(m+p−1): θ = (1/s) / (1/s + 1 − 1/(m+1)).
    let inv_s = (m + p - one) / (p * (m + one));
    let theta = inv_s / (inv_s + one - one / (m + one));
    Ok(NuAudit { p, m, nu_stmt, nu_proof, nu_derived, residual: nu_derived - nu_stmt, gn_defect: theta - nu_proof })
}

pub fn ratio_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Exponent audit over `p = 3..=20` and the `m` sweep.
pub fn nu_audit_sweep() -> Result<Vec<NuAudit>> {
    let mut out = Vec::new();
    for p in 3..=20 {
        for (a, b) in SWEEP_M {
            out.push(nu_audit(Q::from_integer(p), Q::new(a, b))?);
        }
    }
    Ok(out)
}
