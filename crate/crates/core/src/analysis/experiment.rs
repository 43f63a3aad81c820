//! The small-bump decay experiment in co-moving coordinates.
//!
//! `u0` is the profile's cell averages plus `ε B′` for a compact bump `B`, so
//! the perturbation has zero mass and `Φ_0 = ε B`. Rates are measured against
//! the discrete traveling wave of the same mass (the state the scheme actually
//! relaxes to); the mass identity and the region study use the continuous
//! profile, shifted to be mass-neutral.

use serde::{Deserialize, Serialize};

use super::decay::{
    bu3_ratio, decay_fit, l2_rate_bound, linf_rate_bound, phi_lp_energy_check, DecayFit, DecayRecord, DecaySeries,
    EnergyReport,
};
use super::norms::derivative;
use super::perturbation::{compute_shift, perturbation, ReferenceWave};
use super::regions::{b1_integrals, RegionDiagConfig, RegionReport};
use crate::error::{Error, Result};
use crate::flux::{rh_speed, FluxSpec};
use crate::perturb::Bump;
use crate::profile::solve_profile;
use crate::solver::{
    discrete_wave, evolve_observed, BoundaryGuard, Cadence, EvolveOptions, FieldState, Frame, Grid1D, NumericalFlux,
    Scheme,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayConfig {
    pub flux: FluxSpec,
    pub u_minus: f64,
    pub m: f64,
    pub dx: f64,
    pub x_left: f64,
    pub x_right: f64,
    /// `Φ_0 = epsilon * B`.
    pub bump: Bump,
    pub epsilon: f64,
    pub t_end: f64,
    /// Geometric record times `first * ratio^k`.
    pub first_record: f64,
    pub record_ratio: f64,
    pub fit_window: (f64, f64),
    pub ps: Vec<f64>,
    pub region: RegionDiagConfig,
    pub region_times: Vec<f64>,
    pub safety: f64,
    pub numerical_flux: NumericalFlux,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig {
            flux: FluxSpec::Burgers,
            u_minus: 1.0,
            m: 4.0 / 3.0,
            dx: 0.1,
            x_left: -80.0,
            x_right: 20.0,
            bump: Bump { center: -4.0, half_width: 2.0, amplitude: 1.0 },
            epsilon: 0.05,
            t_end: 200.0,
            first_record: 1.0,
            record_ratio: 1.1,
            fit_window: (1.0, 200.0),
            ps: vec![2.0, 4.0, 8.0],
            region: RegionDiagConfig::default(),
            region_times: vec![1.0, 5.0, 20.0, 50.0],
            safety: 0.9,
            numerical_flux: NumericalFlux::Godunov,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayOutcome {
    pub m: f64,
    pub gamma: f64,
    pub shift: f64,
    pub steps: usize,
    pub series: DecaySeries,
    /// `(t, ∫ (u − U(· + x_0)) dξ)` against the continuous profile.
    pub mass_identity: Vec<(f64, f64)>,
    pub regions: Vec<RegionReport>,
    pub l2_fit: DecayFit,
    pub linf_fit: DecayFit,
    pub l2_bound: f64,
    pub linf_bound: f64,
    pub energy: Vec<EnergyReport>,
    /// Largest interpolation ratio per `p`, excluding `p = 2`.
    pub bu3_constants: Vec<(f64, f64)>,
    pub initial_h1_big_phi: f64,
}

impl DecayOutcome {
    pub fn max_mass_identity(&self) -> f64 {
        self.mass_identity.iter().map(|p| p.1.abs()).fold(0.0, f64::max)
    }

    pub fn energy_for(&self, p: f64) -> Option<&EnergyReport> {
        self.energy.iter().find(|e| e.p == p)
    }
}

pub fn run_decay(cfg: &DecayConfig) -> Result<DecayOutcome> {
    cfg.flux.validate(cfg.u_minus)?;
    let gamma = rh_speed(&cfg.flux, cfg.u_minus, 0.0)?;
    let profile = solve_profile(&cfg.flux, cfg.u_minus, cfg.m, (cfg.x_left, cfg.x_right), 1e-10)?;
    let grid = Grid1D::with_spacing(cfg.x_left, cfg.x_right, cfg.dx, cfg.u_minus, 0.0)?;
    let dx = grid.dx();
    let base = profile.cell_averages(grid.x_left, dx, grid.n_cells);
    let u0: Vec<f64> = (0..grid.n_cells)
        .map(|i| base[i] + cfg.epsilon * (cfg.bump.value(grid.edge(i + 1)) - cfg.bump.value(grid.edge(i))) / dx)
        .collect();
    if let Some((index, &value)) = u0.iter().enumerate().find(|(_, v)| **v < 0.0) {
        return Err(Error::InvalidState { index, value });
    }
    let shift = compute_shift(&u0, &grid, &profile)?;
    let continuous = ReferenceWave::from_profile(&profile.shifted(shift), &grid);
    let frame = Frame::Traveling { speed: gamma };
    let mut scheme = Scheme::new(grid.clone(), cfg.flux.clone(), cfg.m, frame, cfg.numerical_flux);
    let mass0 = u0.iter().sum::<f64>() * dx;
    let pin = ((-shift - grid.x_left) / dx).floor().clamp(0.0, (grid.n_cells - 1) as f64) as usize;
    let discrete = ReferenceWave::from_cells(&grid, discrete_wave(&scheme, mass0, pin)?);
    let continuous_mass = profile.shifted(shift).integral(grid.x_left, grid.x_right);

    let mut times = Cadence::Geometric { first: cfg.first_record, ratio: cfg.record_ratio }.times(0.0, cfg.t_end);
    times.extend(cfg.region_times.iter().copied().filter(|&t| t <= cfg.t_end));
    let opts = EvolveOptions {
        safety: cfg.safety,
        cadence: Cadence::Times { times },
        keep_snapshots: false,
        guard: Some(BoundaryGuard { cells: 10, tol: 1e-8 * cfg.u_minus }),
    };
    let mut series = DecaySeries::new(cfg.ps.clone());
    let mut mass_identity = Vec::new();
    let mut regions = Vec::new();
    let traj = evolve_observed(&mut scheme, FieldState::new(0.0, u0, frame), cfg.t_end, &opts, &mut |st| {
        let phi = perturbation(st, &grid, &discrete, gamma)?;
        series.push(DecayRecord::of(st.t, &phi, dx, &cfg.ps)?)?;
        mass_identity.push((st.t, st.u.iter().sum::<f64>() * dx - continuous_mass));
        if cfg.region_times.iter().any(|&t| (t - st.t).abs() <= 1e-12 * t.max(1.0)) {
            let phi_c = perturbation(st, &grid, &continuous, gamma)?;
            let dphi = derivative(&phi_c, dx);
            regions.push(b1_integrals(st.t, &continuous, &phi_c, &dphi, cfg.m, &cfg.region)?);
        }
        Ok(())
    })?;

    let l2_fit = decay_fit(&series.column(|r| r.l2_phi), cfg.fit_window)?;
    let linf_fit = decay_fit(&series.column(|r| r.linf_phi), cfg.fit_window)?;
    let energy = cfg
        .ps
        .iter()
        .enumerate()
        .map(|(k, &p)| phi_lp_energy_check(&series.column(|r| r.lp_big_phi[k]), p, cfg.m, cfg.fit_window))
        .collect::<Result<Vec<_>>>()?;
    let bu3_constants = cfg
        .ps
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 2.0)
        .map(|(k, &p)| {
            let c = series
                .records
                .iter()
                .map(|r| bu3_ratio(r.linf_phi, r.linf_dphi, r.lp_big_phi[k], p))
                .fold(0.0, f64::max);
            (p, c)
        })
        .collect();
    let initial_h1_big_phi = series.records.first().map_or(0.0, |r| r.h1_big_phi);
    Ok(DecayOutcome {
        m: cfg.m,
        gamma,
        shift,
        steps: traj.steps,
        series,
        mass_identity,
        regions,
        l2_fit,
        linf_fit,
        l2_bound: l2_rate_bound(cfg.m),
        linf_bound: linf_rate_bound(cfg.m),
        energy,
        bu3_constants,
        initial_h1_big_phi,
    })
}
