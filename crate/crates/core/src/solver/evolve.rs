use std::io::Write;

use serde::{Deserialize, Serialize};

use super::scheme::{FieldState, Scheme};
use crate::error::{Error, Result};

/// When observers fire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Cadence {
    /// Initial and final state only.
    #[default]
    Endpoints,
    /// `t0, t0 + every, t0 + 2 every, ...` up to `t_end`.
    Every { every: f64 },
    /// `t0`, then `first * ratio^k`, then `t_end`.
    Geometric { first: f64, ratio: f64 },
    /// Explicit times inside `[t0, t_end]`.
    Times { times: Vec<f64> },
}

impl Cadence {
    /// Sorted, de-duplicated record times in `[t0, t_end]`.
    pub fn times(&self, t0: f64, t_end: f64) -> Vec<f64> {
        let eps = 1e-12 * t_end.abs().max(1.0);
        let mut out = vec![t0];
        match self {
            Cadence::Endpoints => out.push(t_end),
            Cadence::Every { every } => {
                let mut k = 1u64;
                loop {
                    let t = t0 + k as f64 * every;
                    if t > t_end + eps {
                        break;
                    }
                    out.push(t.min(t_end));
                    k += 1;
                }
            }
            Cadence::Geometric { first, ratio } => {
                let mut t = *first;
                while t < t_end - eps {
                    if t > t0 {
                        out.push(t);
                    }
                    t *= ratio;
                }
                out.push(t_end);
            }
            Cadence::Times { times } => out.extend(times.iter().copied().filter(|&t| t >= t0 && t <= t_end)),
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= eps);
        out
    }
}

/// Abort when the solution departs from the far field near a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryGuard {
    pub cells: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    pub safety: f64,
    pub cadence: Cadence,
    pub keep_snapshots: bool,
    pub guard: Option<BoundaryGuard>,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { safety: 0.9, cadence: Cadence::Endpoints, keep_snapshots: false, guard: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormRecord {
    pub t: f64,
    pub mass: f64,
    pub min_u: f64,
    pub max_u: f64,
    pub sup_dux: f64,
    /// `sup |Δ(u^m)/Δx|`
    pub sup_dumx: f64,
}

impl NormRecord {
    pub fn of(t: f64, u: &[f64], dx: f64, m: f64) -> Self {
        let (min_u, max_u) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let sup_dux = u.windows(2).map(|w| (w[1] - w[0]).abs() / dx).fold(0.0, f64::max);
        let sup_dumx = u
            .windows(2)
            .map(|w| (w[1].powf(m) - w[0].powf(m)).abs() / dx)
            .fold(0.0, f64::max);
        NormRecord { t, mass: u.iter().sum::<f64>() * dx, min_u, max_u, sup_dux, sup_dumx }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub state: FieldState,
    pub steps: usize,
    pub initial_mass: f64,
    /// `∫ (H_{1/2} - H_{N+1/2}) dt`, the net inflow through the ghosts.
    pub boundary_inflow: f64,
    pub records: Vec<NormRecord>,
    pub snapshots: Vec<FieldState>,
}

impl Trajectory {
    /// `|Δ mass − boundary inflow|`.
    pub fn mass_drift(&self, dx: f64) -> f64 {
        (self.state.mass(dx) - self.initial_mass - self.boundary_inflow).abs()
    }

    pub fn write_norms_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,mass,min_u,max_u,sup_dux,sup_dumx")?;
        for r in &self.records {
            writeln!(out, "{:e},{:e},{:e},{:e},{:e},{:e}", r.t, r.mass, r.min_u, r.max_u, r.sup_dux, r.sup_dumx)?;
        }
        Ok(())
    }
}

/// Steps `state` to `t_end`, landing exactly on every record time. `observer`
/// sees the state at each record time.
pub fn evolve_observed(
    scheme: &mut Scheme,
    mut state: FieldState,
    t_end: f64,
    opts: &EvolveOptions,
    observer: &mut dyn FnMut(&FieldState) -> Result<()>,
) -> Result<Trajectory> {
    if t_end < state.t {
        return Err(Error::TimeReversed { t: state.t, t_end });
    }
    state.validate()?;
    let dx = scheme.grid().dx();
    let m = scheme.m();
    let initial_mass = state.mass(dx);
    let mut traj = Trajectory {
        state: state.clone(),
        steps: 0,
        initial_mass,
        boundary_inflow: 0.0,
        records: Vec::new(),
        snapshots: Vec::new(),
    };
    let times = opts.cadence.times(state.t, t_end);
    let mut record = |st: &FieldState, traj: &mut Trajectory| -> Result<()> {
        traj.records.push(NormRecord::of(st.t, &st.u, dx, m));
        if opts.keep_snapshots {
            traj.snapshots.push(st.clone());
        }
        observer(st)
    };
    for &target in &times {
        while state.t < target {
            let mut dt = scheme.cfl_dt(&state.u, opts.safety);
            let last = state.t + dt >= target;
            if last {
                dt = target - state.t;
            }
            let f = scheme.step(&mut state.u, dt)?;
            traj.boundary_inflow += dt * (f.left - f.right);
            state.t = if last { target } else { state.t + dt };
            traj.steps += 1;
            if let Some(g) = opts.guard {
                scheme.grid().check_far_field(&state.u, g.cells, g.tol)?;
            }
        }
        record(&state, &mut traj)?;
    }
    traj.state = state;
    Ok(traj)
}

pub fn evolve(scheme: &mut Scheme, state: FieldState, t_end: f64, opts: &EvolveOptions) -> Result<Trajectory> {
    evolve_observed(scheme, state, t_end, opts, &mut |_| Ok(()))
}

/// Evolves several fields on one grid with a common time step (the minimum of
/// their CFL steps), so that pairwise comparisons see identical `dt` sequences.
/// `on_step` receives the time and all fields after every step.
pub fn evolve_ensemble(
    scheme: &mut Scheme,
    fields: &mut [Vec<f64>],
    t0: f64,
    t_end: f64,
    safety: f64,
    on_step: &mut dyn FnMut(f64, &[Vec<f64>]) -> Result<()>,
) -> Result<usize> {
    if t_end < t0 {
        return Err(Error::TimeReversed { t: t0, t_end });
    }
    let mut t = t0;
    let mut steps = 0;
    while t < t_end {
        let mut dt = fields.iter().map(|u| scheme.cfl_dt(u, safety)).fold(f64::INFINITY, f64::min);
        let last = t + dt >= t_end;
        if last {
            dt = t_end - t;
        }
        for u in fields.iter_mut() {
            scheme.step(u, dt)?;
        }
        t = if last { t_end } else { t + dt };
        steps += 1;
        on_step(t, fields)?;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flux::FluxSpec;
    use crate::solver::{Frame, Grid1D, NumericalFlux};

    #[test]
    fn cadence_times() {
        assert_eq!(Cadence::Every { every: 0.5 }.times(0.0, 2.0), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(Cadence::Endpoints.times(1.0, 1.0), vec![1.0]);
        let g = Cadence::Geometric { first: 1.0, ratio: 2.0 }.times(0.0, 10.0);
        assert_eq!(g, vec![0.0, 1.0, 2.0, 4.0, 8.0, 10.0]);
    }

    fn setup() -> (Scheme, FieldState) {
        let grid = Grid1D::with_spacing(-10.0, 10.0, 0.1, 1.0, 0.0).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|&x| 0.5 * (1.0 - (x / 1.5).tanh())).collect();
        let s = Scheme::new(grid, FluxSpec::Burgers, 1.5, Frame::Lab, NumericalFlux::Godunov);
        (s, FieldState::new(0.0, u, Frame::Lab))
    }

    #[test]
    fn evolve_records_on_cadence() {
        let (mut s, st) = setup();
        let opts = EvolveOptions { cadence: Cadence::Every { every: 0.5 }, ..Default::default() };
        let traj = evolve(&mut s, st, 2.0, &opts).unwrap();
        let ts: Vec<f64> = traj.records.iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(traj.state.t, 2.0);
        assert!(traj.mass_drift(s.grid().dx()) < 1e-10 * traj.initial_mass);
    }

    #[test]
    fn zero_length_and_reversed_runs() {
        let (mut s, st) = setup();
        let traj = evolve(&mut s, st.clone(), 0.0, &EvolveOptions::default()).unwrap();
        assert_eq!(traj.steps, 0);
        assert_eq!(traj.state.u, st.u);
        assert!(matches!(
            evolve(&mut s, st, -1.0, &EvolveOptions::default()),
            Err(Error::TimeReversed { .. })
        ));
    }

    #[test]
    fn guard_aborts_when_boundary_is_disturbed() {
        let grid = Grid1D::with_spacing(-2.0, 2.0, 0.1, 1.0, 0.0).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|&x| if x < 1.5 { 1.0 } else { 0.0 }).collect();
        let mut s = Scheme::new(grid, FluxSpec::Burgers, 1.5, Frame::Lab, NumericalFlux::Godunov);
        let opts = EvolveOptions { guard: Some(BoundaryGuard { cells: 10, tol: 1e-6 }), ..Default::default() };
        let r = evolve(&mut s, FieldState::new(0.0, u, Frame::Lab), 5.0, &opts);
        assert!(matches!(r, Err(Error::RunInvalid(_))));
    }
}
