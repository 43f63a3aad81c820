//! Shared fixtures for the benchmarks.

use pmshock_core::{solve_profile, FluxSpec, Frame, Grid1D, NumericalFlux, Scheme};

/// A Burgers shock profile sampled on `[-80, 20]` with spacing `dx`, and a
/// scheme in the traveling frame ready to step it.
pub fn shock_fixture(m: f64, dx: f64, numerical_flux: NumericalFlux) -> (Scheme, Vec<f64>) {
    let flux = FluxSpec::Burgers;
    let p = solve_profile(&flux, 1.0, m, (-80.0, 20.0), 1e-10).expect("profile");
    let grid = Grid1D::with_spacing(-80.0, 20.0, dx, 1.0, 0.0).expect("grid");
    let u = p.cell_averages(grid.x_left, grid.dx(), grid.n_cells);
    let scheme = Scheme::new(grid, flux, m, Frame::Traveling { speed: p.gamma() }, numerical_flux);
    (scheme, u)
}
