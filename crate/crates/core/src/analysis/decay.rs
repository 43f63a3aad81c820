//! Norm time series of `φ` and `Φ`, power-law fits and the `L^p` energy checks.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::norms::{antiderivative, derivative, h1_norm, lp_norm};
use crate::error::{Error, Result};
use crate::solver::linear_fit;

/// Predicted rate for `‖φ‖_2`: `1 / (4 (11 m + 7))`.
pub fn l2_rate_bound(m: f64) -> f64 {
    1.0 / (4.0 * (11.0 * m + 7.0))
}

/// Rate for `‖φ‖_∞`: two thirds of the `L^2` rate.
pub fn linf_rate_bound(m: f64) -> f64 {
    l2_rate_bound(m) * 2.0 / 3.0
}

/// Rate for `‖Φ‖_p^p`: `(p − 2) / (3m + 1)`.
pub fn phi_lp_rate(p: f64, m: f64) -> f64 {
    (p - 2.0) / (3.0 * m + 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRecord {
    pub t: f64,
    pub l1_phi: f64,
    pub l2_phi: f64,
    pub linf_phi: f64,
    pub linf_dphi: f64,
    pub l2_big_phi: f64,
    pub h1_big_phi: f64,
    /// `‖Φ‖_p` for the configured `p` values.
    pub lp_big_phi: Vec<f64>,
}

impl DecayRecord {
    pub fn of(t: f64, phi: &[f64], dx: f64, ps: &[f64]) -> Result<Self> {
        let big = antiderivative(phi, dx);
        Ok(DecayRecord {
            t,
            l1_phi: lp_norm(phi, dx, 1.0)?,
            l2_phi: lp_norm(phi, dx, 2.0)?,
            linf_phi: lp_norm(phi, dx, f64::INFINITY)?,
            linf_dphi: lp_norm(&derivative(phi, dx), dx, f64::INFINITY)?,
            l2_big_phi: lp_norm(&big, dx, 2.0)?,
            h1_big_phi: h1_norm(&big, dx),
            lp_big_phi: ps.iter().map(|&p| lp_norm(&big, dx, p)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecaySeries {
    pub ps: Vec<f64>,
    pub records: Vec<DecayRecord>,
}

impl DecaySeries {
    pub fn new(ps: Vec<f64>) -> Self {
        DecaySeries { ps, records: Vec::new() }
    }

    pub fn push(&mut self, rec: DecayRecord) -> Result<()> {
        if let Some(last) = self.records.last() {
            if !(rec.t > last.t) {
                return Err(Error::Precondition(format!("record time {} not after {}", rec.t, last.t)));
            }
        }
        self.records.push(rec);
        Ok(())
    }

    pub fn column(&self, f: impl Fn(&DecayRecord) -> f64) -> Vec<(f64, f64)> {
        self.records.iter().map(|r| (r.t, f(r))).collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "t,l1_phi,l2_phi,linf_phi,l2_Phi,h1_Phi")?;
        for p in &self.ps {
            write!(out, ",lp_Phi_{p}")?;
        }
        writeln!(out)?;
        for r in &self.records {
            write!(out, "{:e},{:e},{:e},{:e},{:e},{:e}", r.t, r.l1_phi, r.l2_phi, r.linf_phi, r.l2_big_phi, r.h1_big_phi)?;
            for v in &r.lp_big_phi {
                write!(out, ",{v:e}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Slope of `ln(norm)` against `ln(1 + t)`; negative for decay.
    pub exponent: f64,
    pub stderr: f64,
    pub records: usize,
}

/// Least-squares power law over the records with `t` in `window`.
pub fn decay_fit(series: &[(f64, f64)], window: (f64, f64)) -> Result<DecayFit> {
    let inside: Vec<(f64, f64)> = series.iter().copied().filter(|&(t, _)| t >= window.0 && t <= window.1).collect();
    if inside.len() < 10 {
        return Err(Error::InsufficientRecords { found: inside.len(), required: 10 });
    }
    if let Some(&(t, _)) = inside.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::ZeroNorm(t));
    }
    let xs: Vec<f64> = inside.iter().map(|p| (1.0 + p.0).ln()).collect();
    let ys: Vec<f64> = inside.iter().map(|p| p.1.ln()).collect();
    let (exponent, _, stderr) = linear_fit(&xs, &ys)?;
    Ok(DecayFit { exponent, stderr, records: inside.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub p: f64,
    /// Largest increase of `‖Φ‖_p^p` between records, relative to its initial value.
    pub max_relative_increase: f64,
    /// Fitted exponent of `‖Φ‖_p^p` against `1 + t`.
    pub fit: Option<DecayFit>,
    pub bound_exponent: f64,
    /// Smallest `C` with `‖Φ‖_p^p(t) <= C ‖Φ_0‖_p^p (1+t)^{−(p−2)/(3m+1)}` on the records.
    pub envelope_constant: f64,
    /// `ν = 1 + (3m + 1)/(p − 2)`; `None` for `p = 2`.
    pub nu: Option<f64>,
    /// Smallest `c` with `h′ + c h^ν <= 0` between consecutive records.
    pub ode_constant: Option<f64>,
}

/// `L^p` energy diagnostics from `(t, ‖Φ‖_p)` records.
pub fn phi_lp_energy_check(norms: &[(f64, f64)], p: f64, m: f64, window: (f64, f64)) -> Result<EnergyReport> {
    if !(p >= 2.0) {
        return Err(Error::NormIndex(p));
    }
    let h: Vec<(f64, f64)> = norms.iter().map(|&(t, n)| (t, n.powf(p))).collect();
    let h0 = h.first().map_or(0.0, |r| r.1);
    let bound_exponent = phi_lp_rate(p, m);
    if h0 == 0.0 {
        return Ok(EnergyReport {
            p,
            max_relative_increase: 0.0,
            fit: None,
            bound_exponent,
            envelope_constant: 0.0,
            nu: (p > 2.0).then(|| 1.0 + (3.0 * m + 1.0) / (p - 2.0)),
            ode_constant: None,
        });
    }
    let max_relative_increase = h.windows(2).map(|w| (w[1].1 - w[0].1).max(0.0)).fold(0.0, f64::max) / h0;
    let t0 = h[0].0;
    let envelope_constant = h
        .iter()
        .map(|&(t, v)| v / (h0 * (1.0 + t - t0).powf(-bound_exponent)))
        .fold(0.0, f64::max);
    let nu = (p > 2.0).then(|| 1.0 + (3.0 * m + 1.0) / (p - 2.0));
    let ode_constant = nu.map(|nu| {
        h.windows(2)
            .filter(|w| w[1].1 > 0.0 && w[1].0 > w[0].0)
            .map(|w| {
                let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                let mid = 0.5 * (w[0].1 + w[1].1);
                -slope / mid.powf(nu)
            })
            .fold(f64::INFINITY, f64::min)
    });
    Ok(EnergyReport {
        p,
        max_relative_increase,
        fit: decay_fit(&h, window).ok(),
        bound_exponent,
        envelope_constant,
        nu,
        ode_constant,
    })
}

/// `‖φ‖_∞ / (‖φ_ξ‖_∞^{(p+1)/(2p+1)} ‖Φ‖_p^{p/(2p+1)})` for one record.
pub fn bu3_ratio(linf_phi: f64, linf_dphi: f64, lp_big_phi: f64, p: f64) -> f64 {
    let den = linf_dphi.powf((p + 1.0) / (2.0 * p + 1.0)) * lp_big_phi.powf(p / (2.0 * p + 1.0));
    if den == 0.0 {
        if linf_phi == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        linf_phi / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_bounds() {
        assert!((l2_rate_bound(4.0 / 3.0) - 3.0 / 260.0).abs() < 1e-15);
        assert!((l2_rate_bound(1.2) - 1.0 / 80.8).abs() < 1e-15);
        assert!((phi_lp_rate(4.0, 1.25) - 2.0 / 4.75).abs() < 1e-15);
    }

    #[test]
    fn exact_power_law() {
        let s: Vec<(f64, f64)> = (0..40).map(|k| { let t = 1.2f64.powi(k); (t, 3.0 * (1.0 + t).powf(-0.3)) }).collect();
        let f = decay_fit(&s, (1.0, 200.0)).unwrap();
        assert!((f.exponent + 0.3).abs() < 1e-3);
        assert!(matches!(decay_fit(&s[..5], (0.0, 10.0)), Err(Error::InsufficientRecords { .. })));
        let mut z = s.clone();
        z[20].1 = 0.0;
        assert!(matches!(decay_fit(&z, (1.0, 200.0)), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn energy_check_on_model_decay() {
        let (p, m) = (4.0, 1.25);
        let r = phi_lp_rate(p, m);
        let norms: Vec<(f64, f64)> = (0..60).map(|k| { let t = 0.1 * 1.1f64.powi(k) - 0.1; (t, ((1.0 + t).powf(-r)).powf(1.0 / p)) }).collect();
        let rep = phi_lp_energy_check(&norms, p, m, (1.0, 200.0)).unwrap();
        assert_eq!(rep.max_relative_increase, 0.0);
        assert!((rep.fit.unwrap().exponent + r).abs() < 1e-9);
        assert!((rep.envelope_constant - 1.0).abs() < 1e-12);
        assert!(rep.ode_constant.unwrap() > 0.0);
        let zero = vec![(0.0, 0.0), (1.0, 0.0)];
        let rep = phi_lp_energy_check(&zero, 2.0, m, (0.0, 1.0)).unwrap();
        assert_eq!(rep.max_relative_increase, 0.0);
        assert_eq!(rep.envelope_constant, 0.0);
    }
}
