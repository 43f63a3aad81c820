//! Scheme-level checks of the solution semigroup: translation invariance,
//! order preservation, L^1 contraction and conservation.
//!
//! Every check evolves its fields together with a common time step so that
//! the compared evolutions see identical `dt` sequences.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux::FluxSpec;
use crate::perturb::{random_bumps, split_seed, Bump};
use crate::solver::{evolve_ensemble, Frame, Grid1D, NumericalFlux, Scheme};

/// Cells at each end that must agree between paired runs.
pub const BOUNDARY_CELLS: usize = 10;

pub fn l1_distance(u: &[f64], v: &[f64], dx: f64) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum::<f64>() * dx
}

fn sup_distance(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Shifts a field by `k` cells to the right (`k < 0`: left), filling with the far-field values.
pub fn shift_cells(u: &[f64], k: isize, left: f64, right: f64) -> Vec<f64> {
    let n = u.len() as isize;
    (0..n)
        .map(|i| {
            let j = i - k;
            if j < 0 {
                left
            } else if j >= n {
                right
            } else {
                u[j as usize]
            }
        })
        .collect()
}

/// Whole number of cells in `y`, or an alignment error.
pub fn aligned_cells(y: f64, dx: f64) -> Result<isize> {
    let k = (y / dx).round();
    if (y - k * dx).abs() > 1e-9 * dx {
        return Err(Error::Alignment { shift: y, dx });
    }
    Ok(k as isize)
}

fn boundary_gap(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len();
    let c = BOUNDARY_CELLS.min(n / 2);
    sup_distance(&u[..c], &v[..c]).max(sup_distance(&u[n - c..], &v[n - c..]))
}

/// Paired runs are valid while the boundary zones agree to `1e-13 ‖u0 − v0‖_∞`.
fn check_pair_support(u: &[f64], v: &[f64], scale: f64) -> Result<()> {
    let gap = boundary_gap(u, v);
    if gap > 1e-13 * scale {
        return Err(Error::RunInvalid(format!("paired fields differ by {gap:e} in the boundary zone")));
    }
    Ok(())
}

/// `max_i |T(t)(u0 shifted by y) − (T(t)u0) shifted by y|` at `t_end`.
pub fn check_translation(scheme: &mut Scheme, u0: &[f64], y: f64, t_end: f64, safety: f64) -> Result<f64> {
    let g = scheme.grid().clone();
    let k = aligned_cells(y, g.dx())?;
    let mut fields = vec![u0.to_vec(), shift_cells(u0, k, g.left_value, g.right_value)];
    evolve_ensemble(scheme, &mut fields, 0.0, t_end, safety, &mut |_, _| Ok(()))?;
    let shifted = shift_cells(&fields[0], k, g.left_value, g.right_value);
    Ok(sup_distance(&shifted, &fields[1]))
}

/// Worst `max(0, (T(t)u0)_i − (T(t)v0)_i)` over all steps; needs `u0 <= v0`.
pub fn check_monotone(scheme: &mut Scheme, u0: &[f64], v0: &[f64], t_end: f64, safety: f64) -> Result<f64> {
    if let Some(index) = u0.iter().zip(v0).position(|(a, b)| a > b) {
        return Err(Error::Unordered { index });
    }
    let mut worst = 0.0f64;
    let mut fields = vec![u0.to_vec(), v0.to_vec()];
    evolve_ensemble(scheme, &mut fields, 0.0, t_end, safety, &mut |_, f| {
        worst = worst.max(f[0].iter().zip(&f[1]).map(|(a, b)| a - b).fold(0.0, f64::max));
        Ok(())
    })?;
    Ok(worst)
}

/// `(t, ‖T(t)u0 − T(t)v0‖_1)` after every step, starting at `t = 0`.
pub fn check_l1_contraction(
    scheme: &mut Scheme,
    u0: &[f64],
    v0: &[f64],
    t_end: f64,
    safety: f64,
) -> Result<Vec<(f64, f64)>> {
    let dx = scheme.grid().dx();
    let scale = sup_distance(u0, v0);
    let mut series = vec![(0.0, l1_distance(u0, v0, dx))];
    let mut fields = vec![u0.to_vec(), v0.to_vec()];
    evolve_ensemble(scheme, &mut fields, 0.0, t_end, safety, &mut |t, f| {
        check_pair_support(&f[0], &f[1], scale)?;
        series.push((t, l1_distance(&f[0], &f[1], dx)));
        Ok(())
    })?;
    Ok(series)
}

/// Largest step-to-step increase of a series, relative to its first value.
pub fn max_relative_increase(series: &[(f64, f64)]) -> f64 {
    let first = series.first().map_or(0.0, |s| s.1);
    if first == 0.0 {
        return series.iter().map(|s| s.1).fold(0.0, f64::max);
    }
    series.windows(2).map(|w| (w[1].1 - w[0].1).max(0.0)).fold(0.0, f64::max) / first
}

/// Largest `|∫(T(t)u0 − T(t)v0) − ∫(u0 − v0)|` over the run.
pub fn check_conservation(scheme: &mut Scheme, u0: &[f64], v0: &[f64], t_end: f64, safety: f64) -> Result<f64> {
    let dx = scheme.grid().dx();
    let scale = sup_distance(u0, v0);
    let diff = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a - b).sum::<f64>() * dx;
    let start = diff(u0, v0);
    let mut worst = 0.0f64;
    let mut fields = vec![u0.to_vec(), v0.to_vec()];
    evolve_ensemble(scheme, &mut fields, 0.0, t_end, safety, &mut |_, f| {
        check_pair_support(&f[0], &f[1], scale)?;
        worst = worst.max((diff(&f[0], &f[1]) - start).abs());
        Ok(())
    })?;
    Ok(worst)
}

/// One line of the semigroup report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemigroupRecord {
    pub check: String,
    pub m: f64,
    pub dx: f64,
    pub seed: u64,
    pub worst_violation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seeds: u64,
    pub base_seed: u64,
    pub ms: Vec<f64>,
    pub dxs: Vec<f64>,
    pub flux: FluxSpec,
    pub u_minus: f64,
    pub half_width: f64,
    pub t_end: f64,
    pub safety: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seeds: 50,
            base_seed: 2024,
            ms: vec![1.1, 1.25, 4.0 / 3.0],
            dxs: vec![0.05, 0.1],
            flux: FluxSpec::Burgers,
            u_minus: 1.0,
            half_width: 15.0,
            t_end: 0.5,
            safety: 0.9,
        }
    }
}

/// Tolerances of the suite.
pub const TRANSLATION_TOL: f64 = 1e-12;
pub const MONOTONE_TOL: f64 = 1e-12;
pub const CONTRACTION_TOL: f64 = 1e-10;
pub const CONSERVATION_TOL: f64 = 1e-10;

/// `C^∞` step from `1` (left of `-a`) to `0` (right of `a`), exact outside `[-a, a]`.
pub fn smooth_step(x: f64, a: f64) -> f64 {
    let h = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    let (l, r) = (h(a - x), h(x + a));
    l / (l + r)
}

/// Initial data of one suite case: a smooth shock-like step carrying random
/// bumps, an ordered companion, an unordered companion, and a shift in cells.
pub struct SuiteCase {
    pub grid: Grid1D,
    pub u0: Vec<f64>,
    pub v0: Vec<f64>,
    pub w0: Vec<f64>,
    pub shift: isize,
}

pub fn suite_case(cfg: &SuiteConfig, dx: f64, seed: u64) -> Result<SuiteCase> {
    let grid = Grid1D::with_spacing(-cfg.half_width, cfg.half_width, dx, cfg.u_minus, 0.0)?;
    let lo = -4.0;
    let hi = 4.0;
    let base = random_bumps(split_seed(seed, 0), lo, hi, 0.3 * cfg.u_minus);
    let up = random_bumps(split_seed(seed, 1), lo, hi, 0.2 * cfg.u_minus);
    let down = random_bumps(split_seed(seed, 2), lo, hi, 0.5);
    let sum = |bs: &[Bump], x: f64| bs.iter().map(|b| b.value(x)).sum::<f64>();
    let xs = grid.centers();
    let u0: Vec<f64> = xs.iter().map(|&x| cfg.u_minus * smooth_step(x, 2.0) + sum(&base, x)).collect();
    let v0: Vec<f64> = xs.iter().zip(&u0).map(|(&x, &u)| u + sum(&up, x)).collect();
    // the downward part never takes more than half of u0, so w0 stays non-negative
    let w0: Vec<f64> = xs
        .iter()
        .zip(&u0)
        .map(|(&x, &u)| u * (1.0 - sum(&down, x).min(1.0)) + sum(&up, x))
        .collect();
    let shift = 1 + (split_seed(seed, 3) % 5) as isize;
    Ok(SuiteCase { grid, u0, v0, w0, shift })
}

/// All four checks for one `(m, dx, seed)`, from a single four-field ensemble.
pub fn run_case(cfg: &SuiteConfig, m: f64, dx: f64, seed: u64) -> Result<Vec<SemigroupRecord>> {
    let case = suite_case(cfg, dx, seed)?;
    let g = case.grid.clone();
    let mut scheme = Scheme::new(g.clone(), cfg.flux.clone(), m, Frame::Lab, NumericalFlux::Godunov);
    let h = g.dx();
    let shifted0 = shift_cells(&case.u0, case.shift, g.left_value, g.right_value);
    let mut fields = vec![case.u0.clone(), case.v0.clone(), case.w0.clone(), shifted0];

    let scale_v = sup_distance(&case.u0, &case.v0);
    let scale_w = sup_distance(&case.u0, &case.w0);
    let diff = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a - b).sum::<f64>() * h;
    let start_uv = diff(&case.u0, &case.v0);
    let start_uw = diff(&case.u0, &case.w0);
    let l1_uv0 = l1_distance(&case.u0, &case.v0, h);
    let mut l1_uw = vec![(0.0, l1_distance(&case.u0, &case.w0, h))];
    let mass_scale = case.u0.iter().chain(&case.v0).map(|v| v.abs()).sum::<f64>() * h;
    let (mut mono, mut drift, mut ordered_drift) = (0.0f64, 0.0f64, 0.0f64);

    evolve_ensemble(&mut scheme, &mut fields, 0.0, cfg.t_end, cfg.safety, &mut |t, f| {
        check_pair_support(&f[0], &f[1], scale_v)?;
        check_pair_support(&f[0], &f[2], scale_w)?;
        mono = mono.max(f[0].iter().zip(&f[1]).map(|(a, b)| a - b).fold(0.0, f64::max));
        drift = drift
            .max((diff(&f[0], &f[1]) - start_uv).abs())
            .max((diff(&f[0], &f[2]) - start_uw).abs());
        ordered_drift = ordered_drift.max((l1_distance(&f[0], &f[1], h) - l1_uv0).abs());
        l1_uw.push((t, l1_distance(&f[0], &f[2], h)));
        Ok(())
    })?;
    let translated = shift_cells(&fields[0], case.shift, g.left_value, g.right_value);
    let translation = sup_distance(&translated, &fields[3]);
    let contraction = max_relative_increase(&l1_uw);
    let conservation = drift / mass_scale;
    let ordered = ordered_drift / l1_uv0.max(f64::MIN_POSITIVE);

    let rec = |check: &str, worst: f64, tol: f64| SemigroupRecord {
        check: check.into(),
        m,
        dx,
        seed,
        worst_violation: worst,
        pass: worst < tol,
    };
    Ok(vec![
        rec("translation", translation, TRANSLATION_TOL),
        rec("monotone", mono, MONOTONE_TOL),
        rec("l1-contraction", contraction, CONTRACTION_TOL),
        rec("conservation", conservation, CONSERVATION_TOL),
        rec("ordered-l1-constancy", ordered, CONTRACTION_TOL),
    ])
}

/// Runs every `(seed, m, dx)` case in parallel. A case whose run is invalid
/// yields failing records carrying an infinite violation.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<SemigroupRecord> {
    let cases: Vec<(u64, f64, f64)> = (0..cfg.seeds)
        .flat_map(|s| {
            cfg.ms
                .iter()
                .flat_map(move |&m| cfg.dxs.iter().map(move |&dx| (split_seed(cfg.base_seed, s), m, dx)))
        })
        .collect();
    cases
        .par_iter()
        .flat_map_iter(|&(seed, m, dx)| {
            run_case(cfg, m, dx, seed).unwrap_or_else(|_| {
                ["translation", "monotone", "l1-contraction", "conservation", "ordered-l1-constancy"]
                    .iter()
                    .map(|c| SemigroupRecord {
                        check: c.to_string(),
                        m,
                        dx,
                        seed,
                        worst_violation: f64::INFINITY,
                        pass: false,
                    })
                    .collect()
            })
        })
        .collect()
}
