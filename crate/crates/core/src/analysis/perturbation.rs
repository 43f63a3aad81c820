//! Mass-neutral shift and the perturbation `φ = u − U` on the co-moving grid.

use crate::error::{Error, Result};
use crate::profile::ShockProfile;
use crate::solver::{FieldState, Frame, Grid1D};

/// `x_0` with `∫ (u0(x) − U(x + x_0)) dx = 0` over the grid. The constraint is
/// affine in `x_0` with slope `−u_-` once both domain ends sit in the far field,
/// so `x_0 = −(dx Σ u0 − ∫ U) / u_-`.
pub fn compute_shift(u0: &[f64], grid: &Grid1D, profile: &ShockProfile) -> Result<f64> {
    if profile.u_minus() == 0.0 {
        return Err(Error::DegenerateShift);
    }
    if u0.len() != grid.n_cells {
        return Err(Error::LengthMismatch(u0.len(), grid.n_cells));
    }
    let mass = u0.iter().sum::<f64>() * grid.dx();
    let defect = mass - profile.integral(grid.x_left, grid.x_right);
    Ok(-defect / profile.u_minus())
}

/// Reference wave sampled on a grid: cell values, derivatives at the cell
/// centers, and the first cell where the wave vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceWave {
    pub grid: Grid1D,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    pub x_r: f64,
    pub u_minus: f64,
}

impl ReferenceWave {
    /// Cell averages and center derivatives of a continuous profile.
    pub fn from_profile(profile: &ShockProfile, grid: &Grid1D) -> Self {
        let u = profile.cell_averages(grid.x_left, grid.dx(), grid.n_cells);
        let du = grid.centers().iter().map(|&x| profile.derivative(x)).collect();
        ReferenceWave { grid: grid.clone(), u, du, x_r: profile.x_r(), u_minus: profile.u_minus() }
    }

    /// A stationary discrete state; derivatives by centered differences and
    /// `x_R` at the left edge of the first cell of the zero tail.
    pub fn from_cells(grid: &Grid1D, cells: Vec<f64>) -> Self {
        let du = super::norms::derivative(&cells, grid.dx());
        let tail = cells.iter().rposition(|&v| v > 0.0).map_or(0, |i| i + 1);
        let x_r = if tail == cells.len() { f64::INFINITY } else { grid.edge(tail) };
        ReferenceWave { grid: grid.clone(), u: cells, du, x_r, u_minus: grid.left_value }
    }

    /// Cells where the wave vanishes identically.
    pub fn is_vacuum(&self, i: usize) -> bool {
        self.u[i] == 0.0 && self.grid.edge(i) >= self.x_r
    }
}

/// `φ(ξ) = u(t, ξ + γt) − U(ξ)` on the reference grid. Co-moving states are
/// differenced directly; lab-frame states are resampled linearly at `ξ + γt`.
pub fn perturbation(state: &FieldState, state_grid: &Grid1D, reference: &ReferenceWave, gamma: f64) -> Result<Vec<f64>> {
    match state.frame {
        Frame::Traveling { .. } => {
            if state.u.len() != reference.u.len() {
                return Err(Error::LengthMismatch(state.u.len(), reference.u.len()));
            }
            Ok(state.u.iter().zip(&reference.u).map(|(a, b)| a - b).collect())
        }
        Frame::Lab => {
            let offset = gamma * state.t;
            let xs = reference.grid.centers();
            xs.iter()
                .zip(&reference.u)
                .map(|(&xi, &ub)| {
                    state_grid.interpolate(&state.u, xi + offset).map(|v| v - ub).ok_or(Error::Window {
                        lo: reference.grid.x_left + offset,
                        hi: reference.grid.x_right + offset,
                    })
                })
                .collect()
        }
    }
}
