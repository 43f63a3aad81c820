//! Uniformly parabolic approximations with floor `1/n` on `v = u^m`.
//!
//! The run lives on `[-n, n]` with Dirichlet value `M^m` for `v` at both ends
//! and initial data `w_n`: `max(u_0^m, 1/n)` for `|x| <= n - 2`, `M^m` for
//! `|x| >= n - 1`, linear in between. It is advanced with the same conservative
//! stepper in `u = v^{1/m}`; the equation for `v` is the same equation.

use serde::{Deserialize, Serialize};

use super::evolve::{evolve_observed, Cadence, EvolveOptions};
use super::grid::Grid1D;
use super::scheme::{FieldState, Frame, NumericalFlux, Scheme};
use crate::error::{Error, Result};
use crate::flux::FluxSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizedRun {
    pub n: u32,
    /// Upper bound `M` of the data; `v` is clamped to `M^m` outside radius `n - 1`.
    pub big_m: f64,
    pub dx: f64,
    pub safety: f64,
}

impl RegularizedRun {
    pub fn floor(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn grid(&self) -> Result<Grid1D> {
        let r = self.n as f64;
        Grid1D::with_spacing(-r, r, self.dx, self.big_m, self.big_m)
    }

    /// `w_n(x)` for the initial profile `u0`.
    pub fn initial_v(&self, m: f64, u0: &dyn Fn(f64) -> f64, x: f64) -> f64 {
        let r = self.n as f64;
        let cap = self.big_m.powf(m);
        let inner = |x: f64| u0(x).powf(m).max(self.floor()).min(cap);
        let ax = x.abs();
        if ax >= r - 1.0 {
            cap
        } else if ax <= r - 2.0 {
            inner(x)
        } else {
            let edge = (r - 2.0).max(0.0).copysign(x);
            let s = ax - (r - 2.0);
            (1.0 - s) * inner(edge) + s * cap
        }
    }
}

#[derive(Debug, Clone)]
pub struct RegularizedOutput {
    pub grid: Grid1D,
    pub state: FieldState,
    /// Smallest `v = u^m` seen at any step.
    pub min_v: f64,
    pub steps: usize,
}

pub fn regularized_solve(
    run: &RegularizedRun,
    flux: &FluxSpec,
    m: f64,
    u0: &dyn Fn(f64) -> f64,
    t_end: f64,
) -> Result<RegularizedOutput> {
    if run.n < 1 {
        return Err(Error::InvalidParameter { name: "n", value: run.n as f64, reason: "n must be at least 1" });
    }
    if !(run.big_m > 0.0) {
        return Err(Error::InvalidParameter { name: "big_m", value: run.big_m, reason: "M must be positive" });
    }
    let grid = run.grid()?;
    let u: Vec<f64> = grid.centers().iter().map(|&x| run.initial_v(m, u0, x).powf(1.0 / m)).collect();
    let mut scheme = Scheme::new(grid.clone(), flux.clone(), m, Frame::Lab, NumericalFlux::Godunov);
    let floor = run.floor() * (1.0 - 1e-12);
    let cap = run.big_m.powf(m) * (1.0 + 1e-12);
    let mut min_v = f64::INFINITY;
    let mut check = |u: &[f64]| -> Result<()> {
        for (index, &x) in u.iter().enumerate() {
            let v = x.powf(m);
            min_v = min_v.min(v);
            if v < floor || v > cap {
                return Err(Error::FloorViolated { index, value: v, floor: run.floor() });
            }
        }
        Ok(())
    };
    check(&u)?;
    // bounds are checked in blocks of 64 steps
    let opts = EvolveOptions { safety: run.safety, cadence: Cadence::Endpoints, keep_snapshots: false, guard: None };
    let mut state = FieldState::new(0.0, u, Frame::Lab);
    let mut steps = 0;
    while state.t < t_end {
        let dt = scheme.cfl_dt(&state.u, run.safety);
        let target = (state.t + 64.0 * dt).min(t_end);
        let traj = evolve_observed(&mut scheme, state, target, &opts, &mut |_| Ok(()))?;
        steps += traj.steps;
        state = traj.state;
        check(&state.u)?;
    }
    Ok(RegularizedOutput { grid, state, min_v, steps })
}

/// One level of the cascade against the direct degenerate run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeRecord {
    pub n: u32,
    /// `sup |u_n − u|` over cells centered in `[-window, window]`.
    pub sup_distance: f64,
    pub min_v: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeSpec {
    pub ns: Vec<u32>,
    pub big_m: f64,
    pub dx: f64,
    pub safety: f64,
    pub window: f64,
    /// The direct run lives on `[-half_width, half_width]` with zero far field.
    pub half_width: f64,
    pub t_end: f64,
}

impl Default for CascadeSpec {
    fn default() -> Self {
        CascadeSpec { ns: vec![10, 40, 160], big_m: 1.0, dx: 0.05, safety: 0.9, window: 4.0, half_width: 20.0, t_end: 1.0 }
    }
}

/// Regularized runs for each `n` compared with the degenerate scheme from the
/// same data, on a common window. All grids share the cell alignment of `dx`.
pub fn regularized_cascade(spec: &CascadeSpec, flux: &FluxSpec, m: f64, u0: &dyn Fn(f64) -> f64) -> Result<Vec<CascadeRecord>> {
    let grid = Grid1D::with_spacing(-spec.half_width, spec.half_width, spec.dx, 0.0, 0.0)?;
    let mut scheme = Scheme::new(grid.clone(), flux.clone(), m, Frame::Lab, NumericalFlux::Godunov);
    let init: Vec<f64> = grid.centers().iter().map(|&x| u0(x)).collect();
    let opts = EvolveOptions { safety: spec.safety, ..Default::default() };
    let direct = evolve_observed(&mut scheme, FieldState::new(0.0, init, Frame::Lab), spec.t_end, &opts, &mut |_| Ok(()))?;
    let window = |g: &Grid1D, u: &[f64]| -> Vec<(f64, f64)> {
        g.centers().into_iter().zip(u.iter().copied()).filter(|(x, _)| x.abs() <= spec.window).collect()
    };
    let reference = window(&grid, &direct.state.u);
    spec.ns
        .iter()
        .map(|&n| {
            let run = RegularizedRun { n, big_m: spec.big_m, dx: spec.dx, safety: spec.safety };
            let out = regularized_solve(&run, flux, m, u0, spec.t_end)?;
            let cells = window(&out.grid, &out.state.u);
            if cells.len() != reference.len() || cells.iter().zip(&reference).any(|(a, b)| (a.0 - b.0).abs() > 1e-9 * spec.dx) {
                return Err(Error::Alignment { shift: n as f64, dx: spec.dx });
            }
            let sup_distance = cells.iter().zip(&reference).map(|(a, b)| (a.1 - b.1).abs()).fold(0.0, f64::max);
            Ok(CascadeRecord { n, sup_distance, min_v: out.min_v, steps: out.steps })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_data_is_unchanged() {
        let run = RegularizedRun { n: 1, big_m: 1.3, dx: 0.05, safety: 0.9 };
        let out = regularized_solve(&run, &FluxSpec::Burgers, 1.5, &|_| 0.2, 0.5).unwrap();
        assert!(out.state.u.iter().all(|&u| (u - 1.3).abs() < 1e-14));
    }

    #[test]
    fn floor_and_cap_hold() {
        let run = RegularizedRun { n: 10, big_m: 1.0, dx: 0.1, safety: 0.9 };
        let bump = |x: f64| if x.abs() < 1.0 { (1.0 - x * x).powi(2) } else { 0.0 };
        let out = regularized_solve(&run, &FluxSpec::Burgers, 1.25, &bump, 1.0).unwrap();
        assert!(out.min_v >= 0.1 * (1.0 - 1e-12));
        assert!(out.state.u.iter().all(|&u| u <= 1.0 + 1e-12));
    }

    #[test]
    fn truncation_profile() {
        let run = RegularizedRun { n: 5, big_m: 2.0, dx: 0.1, safety: 0.9 };
        let m = 1.5;
        let u0 = |_: f64| 0.0;
        assert_eq!(run.initial_v(m, &u0, 0.0), 0.2);
        assert_eq!(run.initial_v(m, &u0, 4.5), 2f64.powf(m));
        let mid = run.initial_v(m, &u0, -3.5);
        assert!((mid - 0.5 * (0.2 + 2f64.powf(m))).abs() < 1e-14);
    }
}
