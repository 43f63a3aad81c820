use pmshock_core::analysis::compute_shift;
use pmshock_core::solver::discrete_wave;
use pmshock_core::{rh_speed, solve_profile, FluxSpec, Frame, Grid1D, NumericalFlux, Scheme};

/// L1 distance between the discrete traveling wave and the mass-matched
/// continuous profile.
fn wave_error(m: f64, dx: f64, nf: NumericalFlux) -> f64 {
    let flux = FluxSpec::Burgers;
    let gamma = rh_speed(&flux, 1.0, 0.0).unwrap();
    let profile = solve_profile(&flux, 1.0, m, (-90.0, 40.0), 1e-12).unwrap();
    let grid = Grid1D::with_spacing(-90.0, 20.0, dx, 1.0, 0.0).unwrap();
    let scheme = Scheme::new(grid.clone(), flux, m, Frame::Traveling { speed: gamma }, nf);
    let base = profile.cell_averages(grid.x_left, dx, grid.n_cells);
    let mass = base.iter().sum::<f64>() * dx;
    let pin = (90.0 / dx) as usize;
    let wave = discrete_wave(&scheme, mass, pin).unwrap();
    let x0 = compute_shift(&wave, &grid, &profile).unwrap();
    let reference = profile.shifted(x0).cell_averages(grid.x_left, dx, grid.n_cells);
    wave.iter().zip(&reference).map(|(a, b)| (a - b).abs()).sum::<f64>() * dx
}

#[test]
fn discrete_wave_converges_to_the_profile() {
    for nf in [NumericalFlux::Godunov, NumericalFlux::EngquistOsher] {
        for m in [1.25, 1.5] {
            let errs: Vec<f64> = [0.2, 0.1, 0.05].iter().map(|&dx| wave_error(m, dx, nf)).collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "{nf:?} m={m}: {errs:?}");
            let order = (errs[1] / errs[2]).log2();
            assert!(order > 0.8, "{nf:?} m={m}: order {order}, {errs:?}");
        }
    }
}
