//! Explicit monotone finite-volume update
//!
//! ```text
//! u_i <- u_i - dt/dx (H_{i+1/2} - H_{i-1/2}),
//! H_{i+1/2} = F(u_i, u_{i+1}) - ((u^m)_{i+1} - (u^m)_i) / dx
//! ```
//!
//! with a monotone two-point flux `F` for the frame flux `f(u) - s u`
//! (`s = 0` in the lab frame, `s = gamma` in the co-moving frame).

use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use crate::error::{Error, Result};
use crate::flux::FluxSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericalFlux {
    #[default]
    Godunov,
    EngquistOsher,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "frame", rename_all = "kebab-case")]
pub enum Frame {
    #[default]
    Lab,
    /// Co-moving coordinates `xi = x - speed * t`.
    Traveling { speed: f64 },
}

impl Frame {
    pub fn speed(&self) -> f64 {
        match self {
            Frame::Lab => 0.0,
            Frame::Traveling { speed } => *speed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    pub t: f64,
    pub u: Vec<f64>,
    pub frame: Frame,
}

impl FieldState {
    pub fn new(t: f64, u: Vec<f64>, frame: Frame) -> Self {
        FieldState { t, u, frame }
    }

    /// First negative or non-finite cell, if any.
    pub fn validate(&self) -> Result<()> {
        match self.u.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            Some((index, &value)) => Err(Error::InvalidState { index, value }),
            None => Ok(()),
        }
    }

    pub fn mass(&self, dx: f64) -> f64 {
        self.u.iter().sum::<f64>() * dx
    }
}

/// Boundary fluxes of one step: `H_{1/2}` (into the domain) and `H_{N+1/2}` (out of it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFluxes {
    pub left: f64,
    pub right: f64,
}

/// Stepper for one grid, flux, exponent and frame. Owns its scratch buffers.
#[derive(Debug, Clone)]
pub struct Scheme {
    grid: Grid1D,
    flux: FluxSpec,
    m: f64,
    frame: Frame,
    numerical_flux: NumericalFlux,
    sonic: f64,
    diffusive: Vec<f64>,
    interface: Vec<f64>,
}

impl Scheme {
    pub fn new(grid: Grid1D, flux: FluxSpec, m: f64, frame: Frame, numerical_flux: NumericalFlux) -> Self {
        let sonic = flux.sonic_point(frame.speed());
        let n = grid.n_cells;
        Scheme {
            grid,
            flux,
            m,
            frame,
            numerical_flux,
            sonic,
            diffusive: vec![0.0; n + 2],
            interface: vec![0.0; n + 1],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }
    pub fn flux(&self) -> &FluxSpec {
        &self.flux
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn frame(&self) -> Frame {
        self.frame
    }
    pub fn numerical_flux(&self) -> NumericalFlux {
        self.numerical_flux
    }

    /// Flux in the scheme's frame: `f(u) - s u`.
    pub fn frame_flux(&self, u: f64) -> f64 {
        self.flux.eval(u) - self.frame.speed() * u
    }

    pub fn diffusion(&self, u: f64) -> f64 {
        if self.m == 1.0 {
            u
        } else {
            u.max(0.0).powf(self.m)
        }
    }

    /// Two-point monotone flux for the convex frame flux.
    pub fn numerical(&self, a: f64, b: f64) -> f64 {
        let g = |u: f64| self.frame_flux(u);
        match self.numerical_flux {
            NumericalFlux::Godunov => {
                if a <= b {
                    g(self.sonic.clamp(a, b))
                } else {
                    g(a).max(g(b))
                }
            }
            // g(max(a, u*)) + g(min(b, u*)) - g(u*), without the cancellation
            NumericalFlux::EngquistOsher => match (a <= self.sonic, b <= self.sonic) {
                (true, true) => g(b),
                (false, false) => g(a),
                (true, false) => g(self.sonic),
                (false, true) => g(a) + g(b) - g(self.sonic),
            },
        }
    }

    /// Largest monotone time step:
    /// `dt = safety / (max|f' - s| / dx + 2 m max(u)^{m-1} / dx^2)`, maxima over
    /// the range spanned by the state and both far-field values.
    pub fn cfl_dt(&self, u: &[f64], safety: f64) -> f64 {
        let (lo, hi) = u.iter().fold(
            (self.grid.left_value.min(self.grid.right_value), self.grid.left_value.max(self.grid.right_value)),
            |(lo, hi), &v| (lo.min(v), hi.max(v)),
        );
        let lo = lo.max(0.0);
        let dx = self.grid.dx();
        let speed = self.flux.max_wave_speed(lo, hi, self.frame.speed());
        let diff = 2.0 * self.m * hi.powf(self.m - 1.0);
        let rate = speed / dx + diff / (dx * dx);
        if rate == 0.0 {
            f64::INFINITY
        } else {
            safety / rate
        }
    }

    /// One checked step: rejects `dt` above the `safety = 1` limit and invalid input.
    pub fn step(&mut self, u: &mut [f64], dt: f64) -> Result<BoundaryFluxes> {
        if let Some((index, &value)) = u.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidState { index, value });
        }
        let limit = self.cfl_dt(u, 1.0);
        if dt > limit * (1.0 + 1e-12) {
            return Err(Error::StepRejected { dt, limit });
        }
        let fluxes = self.step_unchecked(u, dt);
        for v in u.iter_mut() {
            // roundoff below an exactly-zero update
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(fluxes)
    }

    /// The raw update without CFL or sign checks.
    pub fn step_unchecked(&mut self, u: &mut [f64], dt: f64) -> BoundaryFluxes {
        let n = self.grid.n_cells;
        assert_eq!(u.len(), n, "state length does not match grid");
        let dx = self.grid.dx();
        let (left, right) = (self.grid.left_value, self.grid.right_value);
        let mut diffusive = std::mem::take(&mut self.diffusive);
        let mut interface = std::mem::take(&mut self.interface);

        diffusive[0] = self.diffusion(left);
        for (d, &v) in diffusive[1..=n].iter_mut().zip(u.iter()) {
            *d = self.diffusion(v);
        }
        diffusive[n + 1] = self.diffusion(right);

        let value = |j: usize| -> f64 {
            match j {
                0 => left,
                j if j == n + 1 => right,
                j => u[j - 1],
            }
        };
        for (j, h) in interface.iter_mut().enumerate() {
            *h = self.numerical(value(j), value(j + 1)) - (diffusive[j + 1] - diffusive[j]) / dx;
        }
        let lambda = dt / dx;
        for (i, v) in u.iter_mut().enumerate() {
            *v += lambda * (interface[i] - interface[i + 1]);
        }
        let fluxes = BoundaryFluxes { left: interface[0], right: interface[n] };
        self.diffusive = diffusive;
        self.interface = interface;
        fluxes
    }

    /// Total flux `H_{i+1/2}` through interface `i` (`0..=n`) of a given state.
    pub fn interface_flux(&self, u: &[f64], i: usize) -> f64 {
        let n = self.grid.n_cells;
        let at = |j: usize| match j {
            0 => self.grid.left_value,
            j if j == n + 1 => self.grid.right_value,
            j => u[j - 1],
        };
        let (a, b) = (at(i), at(i + 1));
        self.numerical(a, b) - (self.diffusion(b) - self.diffusion(a)) / self.grid.dx()
    }
}

/// Lab-frame CFL step with the default Godunov flux.
pub fn cfl_dt(state: &FieldState, grid: &Grid1D, flux: &FluxSpec, m: f64, safety: f64) -> f64 {
    Scheme::new(grid.clone(), flux.clone(), m, state.frame, NumericalFlux::Godunov).cfl_dt(&state.u, safety)
}

/// One checked step of the Godunov scheme in the state's frame.
pub fn step(state: &FieldState, dt: f64, grid: &Grid1D, flux: &FluxSpec, m: f64) -> Result<FieldState> {
    let mut scheme = Scheme::new(grid.clone(), flux.clone(), m, state.frame, NumericalFlux::Godunov);
    let mut u = state.u.clone();
    scheme.step(&mut u, dt)?;
    Ok(FieldState { t: state.t + dt, u, frame: state.frame })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Grid1D {
        Grid1D::with_spacing(-5.0, 5.0, 0.1, 1.0, 0.0).unwrap()
    }

    #[test]
    fn cfl_formula() {
        let g = Grid1D::with_spacing(-5.0, 5.0, 0.1, 1.0, 0.0).unwrap();
        let state = FieldState::new(0.0, vec![1.0; g.n_cells], Frame::Lab);
        let dt = cfl_dt(&state, &g, &FluxSpec::Burgers, 1.5, 0.4);
        assert!((dt - 0.4 / (1.0 / 0.1 + 3.0 / 0.01)).abs() < 1e-15);
        let dt1 = cfl_dt(&state, &g, &FluxSpec::Burgers, 1.5, 1.0);
        let dt05 = cfl_dt(&state, &g, &FluxSpec::Burgers, 1.5, 0.5);
        assert!((dt1 - 2.0 * dt05).abs() < 1e-15);
        let fine = Grid1D::with_spacing(-5.0, 5.0, 0.05, 1.0, 0.0).unwrap();
        let state_fine = FieldState::new(0.0, vec![1.0; fine.n_cells], Frame::Lab);
        let dt_fine = cfl_dt(&state_fine, &fine, &FluxSpec::Burgers, 1.5, 0.4);
        assert!(dt / dt_fine >= 3.9);
    }

    #[test]
    fn zero_state_uses_convective_bound() {
        let g = Grid1D::with_spacing(0.0, 1.0, 0.1, 0.0, 0.0).unwrap();
        let state = FieldState::new(0.0, vec![0.0; g.n_cells], Frame::Lab);
        let f = FluxSpec::Polynomial { coeffs: vec![0.0, 0.5, 1.0] };
        let dt = cfl_dt(&state, &g, &f, 1.5, 1.0);
        assert!((dt - 0.1 / 0.5).abs() < 1e-14);
    }

    #[test]
    fn constant_state_is_stationary() {
        let g = Grid1D::with_spacing(-5.0, 5.0, 0.1, 0.7, 0.7).unwrap();
        let state = FieldState::new(0.0, vec![0.7; g.n_cells], Frame::Lab);
        let dt = cfl_dt(&state, &g, &FluxSpec::Burgers, 1.25, 0.9);
        let next = step(&state, dt, &g, &FluxSpec::Burgers, 1.25).unwrap();
        assert_eq!(next.u, state.u);
    }

    #[test]
    fn rejects_over_cfl_and_negative_input() {
        let g = grid();
        let state = FieldState::new(0.0, vec![0.5; g.n_cells], Frame::Lab);
        let dt = cfl_dt(&state, &g, &FluxSpec::Burgers, 1.5, 1.0);
        assert!(matches!(
            step(&state, 1.5 * dt, &g, &FluxSpec::Burgers, 1.5),
            Err(Error::StepRejected { .. })
        ));
        let mut bad = state.clone();
        bad.u[3] = -0.1;
        assert!(matches!(
            step(&bad, dt, &g, &FluxSpec::Burgers, 1.5),
            Err(Error::InvalidState { index: 3, .. })
        ));
    }

    #[test]
    fn random_states_stay_non_negative() {
        let g = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for flux_kind in [NumericalFlux::Godunov, NumericalFlux::EngquistOsher] {
            for _ in 0..100 {
                let u: Vec<f64> = (0..g.n_cells)
                    .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) })
                    .collect();
                let mut s = Scheme::new(g.clone(), FluxSpec::Burgers, 1.25, Frame::Lab, flux_kind);
                let dt = s.cfl_dt(&u, 1.0);
                let (lo, hi) = u.iter().fold((1.0f64, 1.0f64), |(a, b), &v| (a.min(v), b.max(v)));
                let mut v = u.clone();
                s.step(&mut v, dt).unwrap();
                assert!(v.iter().all(|&x| x >= 0.0));
                assert!(v.iter().all(|&x| x >= lo - 1e-14 && x <= hi + 1e-14));
            }
        }
    }

    #[test]
    fn mass_change_equals_boundary_flux() {
        let g = grid();
        let u0: Vec<f64> = g.centers().iter().map(|&x| if x < 0.0 { 1.0 } else { 0.2 * (-x * x).exp() }).collect();
        let mut s = Scheme::new(g.clone(), FluxSpec::Burgers, 1.5, Frame::Lab, NumericalFlux::Godunov);
        let mut u = u0.clone();
        let mut inflow = 0.0;
        for _ in 0..200 {
            let dt = s.cfl_dt(&u, 0.9);
            let f = s.step(&mut u, dt).unwrap();
            inflow += dt * (f.left - f.right);
        }
        let dm = (u.iter().sum::<f64>() - u0.iter().sum::<f64>()) * g.dx();
        assert!((dm - inflow).abs() < 1e-13, "{dm} vs {inflow}");
    }

    #[test]
    fn numerical_fluxes_are_consistent_and_monotone() {
        let g = grid();
        for kind in [NumericalFlux::Godunov, NumericalFlux::EngquistOsher] {
            let s = Scheme::new(g.clone(), FluxSpec::Burgers, 1.5, Frame::Traveling { speed: 0.5 }, kind);
            for i in 0..=20 {
                let a = i as f64 * 0.1;
                assert!((s.numerical(a, a) - s.frame_flux(a)).abs() < 1e-15);
                for j in 0..20 {
                    let b = j as f64 * 0.1;
                    assert!(s.numerical(a + 0.05, b) >= s.numerical(a, b) - 1e-15);
                    assert!(s.numerical(a, b + 0.05) <= s.numerical(a, b) + 1e-15);
                }
            }
        }
    }

    fn state(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..2.0], n)
    }

    fn numerical_flux() -> impl Strategy<Value = NumericalFlux> {
        prop_oneof![Just(NumericalFlux::Godunov), Just(NumericalFlux::EngquistOsher)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn step_preserves_order(
            u in state(100),
            bumps in prop::collection::vec(0.0f64..0.5, 100),
            m in 1.05f64..1.9,
            speed in -1.0f64..1.0,
            nf in numerical_flux(),
        ) {
            let v: Vec<f64> = u.iter().zip(&bumps).map(|(a, b)| a + b).collect();
            let mut s = Scheme::new(grid(), FluxSpec::Burgers, m, Frame::Traveling { speed }, nf);
            let dt = s.cfl_dt(&u, 1.0).min(s.cfl_dt(&v, 1.0));
            let (mut su, mut sv) = (u.clone(), v.clone());
            s.step(&mut su, dt).unwrap();
            s.step(&mut sv, dt).unwrap();
            for (a, b) in su.iter().zip(&sv) {
                prop_assert!(*a <= *b + 1e-13);
            }
        }

        #[test]
        fn step_is_conservative(u in state(100), m in 1.05f64..1.9, nf in numerical_flux()) {
            let g = grid();
            let mut s = Scheme::new(g.clone(), FluxSpec::Burgers, m, Frame::Lab, nf);
            let dt = s.cfl_dt(&u, 0.9);
            let mut v = u.clone();
            let f = s.step(&mut v, dt).unwrap();
            let dm = (v.iter().sum::<f64>() - u.iter().sum::<f64>()) * g.dx();
            prop_assert!((dm - dt * (f.left - f.right)).abs() < 1e-12);
        }

        #[test]
        fn numerical_flux_is_consistent(a in 0.0f64..3.0, speed in -2.0f64..2.0, nf in numerical_flux()) {
            let s = Scheme::new(grid(), FluxSpec::Burgers, 1.5, Frame::Traveling { speed }, nf);
            prop_assert!((s.numerical(a, a) - s.frame_flux(a)).abs() <= 1e-14 * (1.0 + a * a));
        }
    }
}
