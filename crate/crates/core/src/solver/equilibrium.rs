//! Stationary states of the co-moving scheme: the discrete traveling wave.
//!
//! With the frame speed equal to the shock speed every interface flux of a
//! stationary state vanishes, so neighbouring cells satisfy
//! `F(a, b) - (b^m - a^m) / dx = 0`. Given one pinned cell the rest follows by
//! marching outwards; the pin value is then tuned to a prescribed mass.

use super::scheme::Scheme;
use crate::error::{Error, Result};

/// Root of a monotone function on `[lo, hi]` (`0 <= lo <= hi`) by bisection on
/// the bit patterns, so the result is exact to one ulp.
fn bisect_bits(lo: f64, hi: f64, increasing: bool, f: impl Fn(f64) -> f64) -> f64 {
    let (mut a, mut b) = (lo.to_bits(), hi.to_bits());
    let sign = if increasing { 1.0 } else { -1.0 };
    if sign * f(lo) >= 0.0 {
        return lo;
    }
    if sign * f(hi) <= 0.0 {
        return hi;
    }
    while b - a > 1 {
        let mid = a + (b - a) / 2;
        if sign * f(f64::from_bits(mid)) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (fa, fb) = (f(f64::from_bits(a)).abs(), f(f64::from_bits(b)).abs());
    f64::from_bits(if fa <= fb { a } else { b })
}

/// Cell values of the stationary state through `u[pin] = value`.
pub fn march_from_pin(scheme: &Scheme, pin: usize, value: f64) -> Vec<f64> {
    let grid = scheme.grid();
    let n = grid.n_cells;
    let (top, dx) = (grid.left_value, grid.dx());
    let balance = |a: f64, b: f64| scheme.numerical(a, b) - (scheme.diffusion(b) - scheme.diffusion(a)) / dx;
    let mut u = vec![0.0; n];
    u[pin] = value;
    for i in pin + 1..n {
        let a = u[i - 1];
        u[i] = if a == 0.0 { 0.0 } else { bisect_bits(0.0, a, false, |b| balance(a, b)) };
    }
    for i in (0..pin).rev() {
        let b = u[i + 1];
        u[i] = bisect_bits(b, top, true, |a| balance(a, b));
    }
    u
}

/// The discrete traveling wave of total mass `dx * sum(u) = mass`, pinned at
/// cell `pin`. The scheme must be co-moving at the shock speed with far-field
/// values `u_-` and `0`.
pub fn discrete_wave(scheme: &Scheme, mass: f64, pin: usize) -> Result<Vec<f64>> {
    let grid = scheme.grid();
    let top = grid.left_value;
    if grid.right_value != 0.0 || !(top > 0.0) {
        return Err(Error::Precondition("discrete wave needs far-field values u_- > 0 and 0".into()));
    }
    if pin >= grid.n_cells {
        return Err(Error::Precondition(format!("pin cell {pin} outside grid")));
    }
    let residual = scheme.frame_flux(top);
    if residual.abs() > 1e-12 * scheme.flux().eval(top).abs().max(1.0) {
        return Err(Error::Precondition(format!(
            "frame speed is not the shock speed (f(u_-) - s u_- = {residual})"
        )));
    }
    let dx = grid.dx();
    let mass_of = |v: f64| march_from_pin(scheme, pin, v).iter().sum::<f64>() * dx;
    let (lo, hi) = (mass_of(0.0), mass_of(top));
    if !(mass >= lo && mass <= hi) {
        return Err(Error::Precondition(format!("mass {mass} outside attainable range [{lo}, {hi}]")));
    }
    let v = bisect_bits(0.0, top, true, |v| mass_of(v) - mass);
    Ok(march_from_pin(scheme, pin, v))
}
