//! Empirical constants for the elementary and interpolation inequalities,
//! exponent bookkeeping, the decay lemma and the gauge function.

mod family;
mod interp;
mod ledger;
mod lemma;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use family::{family, sample, trapezoid, FamilyKind, Member, Sampled};
pub use interp::{
    homogeneity_103a, homogeneity_402a, l2_norm, normalized, verify_interp_103a, verify_interp_402a, Homogeneity,
};
pub use ledger::{exponent_ledger, ledger_sweep, nu_audit, nu_audit_sweep, ratio_f64, ExponentLedger, NuAudit, Q, SWEEP_M};
pub use lemma::{g_gauge_check, verify_decay_lemma, BumpTrain, GaugeReport, LemmaFunction, PowerDecay, Zero, GAUGE_TOL};

/// Serialized outcome of one verifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub prop: String,
    pub params: BTreeMap<String, f64>,
    pub empirical_constant: f64,
    pub samples: usize,
    pub refinement_drift: Option<f64>,
    pub pass: bool,
}

/// `|a − b|^{μ+1} / ((|a|^{μ−1}a − |b|^{μ−1}b)(a − b))`, 0 for `a = b`.
pub fn ab_ratio(a: f64, b: f64, mu: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let sp = |x: f64| x.abs().powf(mu - 1.0) * x;
    (a - b).abs().powf(mu + 1.0) / ((sp(a) - sp(b)) * (a - b))
}

/// Sup of [`ab_ratio`] over the samples.
pub fn verify_prop_ab(samples: &[(f64, f64)], mu: f64) -> Result<f64> {
    if !(mu >= 1.0) {
        return Err(Error::InvalidParameter { name: "mu", value: mu, reason: "must be at least 1" });
    }
    Ok(samples.iter().map(|&(a, b)| ab_ratio(a, b, mu)).fold(0.0, f64::max))
}

/// `|a^μ − b^μ| / |a − b|^μ`, 0 for `a = b`. Close arguments go through
/// `expm1`/`ln_1p` so the numerator keeps its relative accuracy.
pub fn pow_ratio(a: f64, b: f64, mu: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    let gap = hi - lo;
    let num = if lo > 0.0 && hi <= 2.0 * lo {
        lo.powf(mu) * (mu * (gap / lo).ln_1p()).exp_m1()
    } else {
        hi.powf(mu) - lo.powf(mu)
    };
    num / gap.powf(mu)
}

/// Sup of [`pow_ratio`] over the samples.
pub fn verify_prop_pow(samples: &[(f64, f64)], mu: f64) -> Result<f64> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::InvalidParameter { name: "mu", value: mu, reason: "must lie in (0, 1]" });
    }
    if let Some(k) = samples.iter().position(|&(a, b)| !(a >= 0.0 && b >= 0.0)) {
        return Err(Error::InvalidState { index: k, value: samples[k].0.min(samples[k].1) });
    }
    Ok(samples.iter().map(|&(a, b)| pow_ratio(a, b, mu)).fold(0.0, f64::max))
}

/// `n` uniform pairs from `[lo, hi)²`; a prefix of a longer draw with the
/// same seed, so constants over growing counts are nested.
pub fn sample_pairs(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.gen_range(lo..hi), rng.gen_range(lo..hi))).collect()
}

pub const SAMPLE_DRIFT_TOL: f64 = 0.01;
pub const POW_TOL: f64 = 1e-12;

/// Both ratios are homogeneous of degree 0 in `(a, b)`, so the unit square
/// (`[−1,1]²` or `[0,1]²`) is enough. The constant at `small` samples is
/// compared with the one at `large`.
pub fn prop_ab_report(mu: f64, seed: u64, small: usize, large: usize) -> Result<InequalityReport> {
    let pairs = sample_pairs(seed, large.max(small), -1.0, 1.0);
    let c_small = verify_prop_ab(&pairs[..small], mu)?;
    let c_large = verify_prop_ab(&pairs, mu)?;
    let drift = (c_large - c_small) / c_large;
    Ok(InequalityReport {
        prop: "prop_ab".into(),
        params: BTreeMap::from([("mu".into(), mu), ("constant_small".into(), c_small), ("small".into(), small as f64)]),
        empirical_constant: c_large,
        samples: pairs.len(),
        refinement_drift: Some(drift),
        pass: c_large.is_finite() && c_small <= c_large && drift < SAMPLE_DRIFT_TOL,
    })
}

pub fn prop_pow_report(mu: f64, seed: u64, small: usize, large: usize) -> Result<InequalityReport> {
    let pairs = sample_pairs(seed, large.max(small), 0.0, 1.0);
    let c_small = verify_prop_pow(&pairs[..small], mu)?;
    let c_large = verify_prop_pow(&pairs, mu)?;
    Ok(InequalityReport {
        prop: "prop_pow".into(),
        params: BTreeMap::from([("mu".into(), mu), ("constant_small".into(), c_small), ("small".into(), small as f64)]),
        empirical_constant: c_large,
        samples: pairs.len(),
        refinement_drift: Some(if c_large > 0.0 { (c_large - c_small) / c_large } else { 0.0 }),
        pass: c_small <= 1.0 + POW_TOL && c_large <= 1.0 + POW_TOL,
    })
}

impl ExponentLedger {
    pub fn report(&self) -> InequalityReport {
        let mut params = BTreeMap::from([
            ("p".into(), self.p),
            ("m".into(), self.m),
            ("kappa1".into(), self.kappa1),
            ("kappa2".into(), self.kappa2),
            ("kappa3".into(), self.kappa3),
            ("nu_proof".into(), self.nu_proof),
            ("kappa2_residual".into(), self.kappa2_residual),
            ("kappa3_residual".into(), self.kappa3_residual),
        ]);
        if let Some(nu) = self.nu_stmt {
            params.insert("nu_stmt".into(), nu);
        }
        InequalityReport {
            prop: "exponent_ledger".into(),
            params,
            empirical_constant: self.kappa2_residual.abs().max(self.kappa3_residual.abs()),
            samples: 1,
            refinement_drift: None,
            pass: self.consistent(),
        }
    }
}
