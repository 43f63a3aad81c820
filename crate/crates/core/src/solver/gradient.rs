//! Gradient and time-regularity diagnostics on recorded snapshots.

use serde::{Deserialize, Serialize};

use super::scheme::FieldState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientRecord {
    pub t: f64,
    /// `sup |Δ(u^m)/Δx|`
    pub sup_dumx: f64,
    /// `sup |Δ(u^{m-1})/Δx|`
    pub sup_dum1x: f64,
    pub sup_dux: f64,
    /// `sup |Δu/Δx|` over cell pairs with a value below `dx^2`.
    pub sup_dux_vacuum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientReport {
    pub records: Vec<GradientRecord>,
    /// `max(K, M^m)` with `K` the initial Lipschitz constant of `u^m`.
    pub bound: f64,
    pub bound_holds: bool,
}

fn sup_diff(u: &[f64], dx: f64, g: impl Fn(f64) -> f64) -> f64 {
    u.windows(2).map(|w| (g(w[1]) - g(w[0])).abs() / dx).fold(0.0, f64::max)
}

pub fn gradient_record(state: &FieldState, dx: f64, m: f64) -> GradientRecord {
    let u = &state.u;
    let vac = dx * dx;
    let sup_dux_vacuum = u
        .windows(2)
        .filter(|w| w[0] < vac || w[1] < vac)
        .map(|w| (w[1] - w[0]).abs() / dx)
        .fold(0.0, f64::max);
    GradientRecord {
        t: state.t,
        sup_dumx: sup_diff(u, dx, |v| v.powf(m)),
        sup_dum1x: sup_diff(u, dx, |v| v.powf(m - 1.0)),
        sup_dux: sup_diff(u, dx, |v| v),
        sup_dux_vacuum,
    }
}

/// Time series over `snapshots` (the first one is the initial state) and the
/// check `sup |Δ(u^m)/Δx| <= max(K, M^m) (1 + tol)`.
pub fn gradient_diagnostics(snapshots: &[FieldState], dx: f64, m: f64, big_m: f64, tol: f64) -> Result<GradientReport> {
    let first = snapshots.first().ok_or(Error::InsufficientRecords { found: 0, required: 1 })?;
    let k = sup_diff(&first.u, dx, |v| v.powf(m));
    let bound = k.max(big_m.powf(m));
    let records: Vec<GradientRecord> = snapshots.iter().map(|s| gradient_record(s, dx, m)).collect();
    let bound_holds = records.iter().all(|r| r.sup_dumx <= bound * (1.0 + tol));
    Ok(GradientReport { records, bound, bound_holds })
}

/// Least-squares slope and its standard error for `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::InsufficientRecords { found: n, required: 3 });
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = (sse / (nf - 2.0) / sxx).sqrt();
    Ok((slope, intercept, stderr))
}

/// Fitted exponent `β` in `sup_x |u(t) - u(s)| ≈ C |t - s|^β`, using the first
/// snapshot as `s` and the later ones as `t`.
pub fn holder_exponent(snapshots: &[FieldState]) -> Result<f64> {
    let s = snapshots.first().ok_or(Error::InsufficientRecords { found: 0, required: 3 })?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for snap in &snapshots[1..] {
        let d = s.u.iter().zip(&snap.u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if d > 0.0 && snap.t > s.t {
            xs.push((snap.t - s.t).ln());
            ys.push(d.ln());
        }
    }
    Ok(linear_fit(&xs, &ys)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Frame;

    #[test]
    fn linear_fit_recovers_line() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 0.25 * v).collect();
        let (s, c, e) = linear_fit(&x, &y).unwrap();
        assert!((s + 0.25).abs() < 1e-14 && (c - 3.0).abs() < 1e-13 && e < 1e-12);
    }

    #[test]
    fn records_of_a_ramp() {
        let st = FieldState::new(0.0, vec![0.0, 0.0, 0.1, 0.2], Frame::Lab);
        let r = gradient_record(&st, 0.1, 2.0);
        assert!((r.sup_dux - 1.0).abs() < 1e-12);
        assert!((r.sup_dumx - 0.3).abs() < 1e-12);
        assert!((r.sup_dux_vacuum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn holder_exponent_of_sqrt_motion() {
        let snaps: Vec<FieldState> =
            (0..8).map(|k| { let t = 0.01 * 2f64.powi(k) - 0.01; FieldState::new(t, vec![t.sqrt(), 0.0], Frame::Lab) }).collect();
        assert!((holder_exponent(&snaps).unwrap() - 0.5).abs() < 1e-12);
    }
}
