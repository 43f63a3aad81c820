use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1-D cell grid with Dirichlet far-field ghost values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    /// Ghost value left of the first cell (`u_-`).
    pub left_value: f64,
    /// Ghost value right of the last cell (`u_+ = 0` for shock runs).
    pub right_value: f64,
}

impl Grid1D {
    pub const MIN_CELLS: usize = 8;

    pub fn new(x_left: f64, x_right: f64, n_cells: usize, left_value: f64, right_value: f64) -> Result<Self> {
        if n_cells < Self::MIN_CELLS {
            return Err(Error::InvalidParameter {
                name: "n_cells",
                value: n_cells as f64,
                reason: "grid needs at least 8 cells",
            });
        }
        if !(x_right > x_left) {
            return Err(Error::InvalidParameter {
                name: "x_right",
                value: x_right,
                reason: "domain must have positive length",
            });
        }
        if !(left_value >= 0.0 && right_value >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "boundary",
                value: left_value.min(right_value),
                reason: "far-field values must be non-negative",
            });
        }
        Ok(Grid1D { x_left, x_right, n_cells, left_value, right_value })
    }

    /// Grid of spacing `dx` on `[x_left, x_right]`; the length is rounded to whole cells.
    pub fn with_spacing(x_left: f64, x_right: f64, dx: f64, left_value: f64, right_value: f64) -> Result<Self> {
        if !(dx > 0.0) {
            return Err(Error::InvalidParameter { name: "dx", value: dx, reason: "dx must be positive" });
        }
        let n = ((x_right - x_left) / dx).round() as usize;
        Self::new(x_left, x_left + n as f64 * dx, n, left_value, right_value)
    }

    pub fn dx(&self) -> f64 {
        (self.x_right - self.x_left) / self.n_cells as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }

    pub fn edge(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx()
    }

    /// Linear interpolation between cell centers; `None` outside `[center(0), center(n-1)]`.
    pub fn interpolate(&self, u: &[f64], x: f64) -> Option<f64> {
        let dx = self.dx();
        let s = (x - self.center(0)) / dx;
        let last = (self.n_cells - 1) as f64;
        if !(s >= -1e-12 && s <= last + 1e-12) {
            return None;
        }
        let s = s.clamp(0.0, last);
        let i = (s.floor() as usize).min(self.n_cells - 2);
        let frac = s - i as f64;
        Some(u[i] + frac * (u[i + 1] - u[i]))
    }

    /// Checks that the `cells` cells next to each boundary hold the far-field
    /// values within `tol`, i.e. that nothing but the far field touches the ghosts.
    pub fn check_far_field(&self, u: &[f64], cells: usize, tol: f64) -> Result<()> {
        let cells = cells.min(self.n_cells / 2);
        if let Some((i, v)) = u[..cells]
            .iter()
            .enumerate()
            .find(|(_, &v)| (v - self.left_value).abs() > tol)
        {
            return Err(Error::RunInvalid(format!(
                "left boundary zone disturbed: u[{i}] = {v}, far field {}",
                self.left_value
            )));
        }
        let n = self.n_cells;
        if let Some((i, v)) = u[n - cells..]
            .iter()
            .enumerate()
            .find(|(_, &v)| (v - self.right_value).abs() > tol)
        {
            return Err(Error::RunInvalid(format!(
                "right boundary zone disturbed: u[{}] = {v}, far field {}",
                n - cells + i,
                self.right_value
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        let g = Grid1D::with_spacing(-1.0, 1.0, 0.1, 1.0, 0.0).unwrap();
        assert_eq!(g.n_cells, 20);
        assert!((g.dx() - 0.1).abs() < 1e-15);
        assert!((g.center(0) + 0.95).abs() < 1e-15);
        assert!(Grid1D::new(0.0, 1.0, 4, 1.0, 0.0).is_err());
        assert!(Grid1D::new(1.0, 0.0, 10, 1.0, 0.0).is_err());
    }

    #[test]
    fn interpolation_is_exact_for_linear_data() {
        let g = Grid1D::new(0.0, 1.0, 10, 0.0, 0.0).unwrap();
        let u: Vec<f64> = g.centers().iter().map(|x| 2.0 * x + 1.0).collect();
        assert!((g.interpolate(&u, 0.33).unwrap() - 1.66).abs() < 1e-14);
        assert!(g.interpolate(&u, 0.99).is_none());
    }
}
