//! Viscous shock profiles `U(xi)` of `u_t + f(u)_x = (u^m)_xx` connecting
//! `u_- > 0` on the left to `u_+ = 0` on the right.
//!
//! The profile solves `m U^{m-1} U' = f(U) - f(u_-) - gamma (U - u_-)`. For
//! `m > 1` the equation is singular where `U = 0`, so it is integrated in
//! `w = U^{m-1}`:
//!
//! ```text
//! w' = (m - 1)/m * (f(U)/U - gamma),    U = w^{1/(m-1)}
//! ```
//!
//! which reaches `w = 0` with the finite slope `(m-1)(f'(0) - gamma)/m`. That
//! root is the free boundary `x_R`. For `m = 1` the profile is integrated in `U`
//! directly and stays positive. The translation is pinned by `U(0) = u_-/2`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux::{rh_speed, FluxSpec};
use crate::ode::{dp5_step, StepControl};

/// Largest step of the profile integrator; keeps the knot table dense enough
/// for cubic interpolation to stay well below the integration tolerance.
pub const MAX_KNOT_SPACING: f64 = 0.1;

/// Hard cap on the distance marched away from the pin.
const MAX_EXTENT: f64 = 1.0e4;

/// A knot in the integration variable: `y = U^{m-1}` for `m > 1`, `y = U` for `m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub xi: f64,
    pub y: f64,
    pub dy: f64,
}

/// Immutable traveling-wave table with monotone cubic interpolation.
#[derive(Debug, Clone)]
pub struct ShockProfile {
    gamma: f64,
    u_minus: f64,
    m: f64,
    x_r: f64,
    tol: f64,
    knots: Vec<Knot>,
    /// `prefix[i] = int_{xi_0}^{xi_i} U`.
    prefix: Vec<f64>,
}

/// Right-hand side of the profile ODE in the integration variable.
pub fn profile_rhs(flux: &FluxSpec, gamma: f64, m: f64, y: f64) -> f64 {
    if m == 1.0 {
        y * (flux.secant_from_zero(y) - gamma)
    } else {
        let u = y.max(0.0).powf(1.0 / (m - 1.0));
        (m - 1.0) / m * (flux.secant_from_zero(u) - gamma)
    }
}

/// Builds the viscous shock profile with `u_+ = 0`, pinned at `U(0) = u_-/2`.
///
/// The table covers at least `xi_span` and extends left until
/// `|U - u_-| < tol * u_-`. For `m > 1` it ends at `x_R`, which must lie
/// inside `xi_span`; for `m = 1` it extends right until `U < tol * u_-`.
pub fn solve_profile(
    flux: &FluxSpec,
    u_minus: f64,
    m: f64,
    xi_span: (f64, f64),
    tol: f64,
) -> Result<ShockProfile> {
    if !(1.0..2.0).contains(&m) {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m,
            reason: "diffusion exponent must lie in [1, 2)",
        });
    }
    if !(u_minus > 0.0) {
        return Err(Error::InvalidParameter {
            name: "u_minus",
            value: u_minus,
            reason: "left state must be positive",
        });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must lie in (0, 1)",
        });
    }
    if !(xi_span.0 < 0.0 && xi_span.1 > 0.0) {
        return Err(Error::SpanTooSmall { lo: xi_span.0, hi: xi_span.1 });
    }
    flux.validate(u_minus)?;
    let gamma = rh_speed(flux, u_minus, 0.0)?;

    let to_y = |u: f64| if m == 1.0 { u } else { u.powf(m - 1.0) };
    let to_u = |y: f64| if m == 1.0 { y } else { y.max(0.0).powf(1.0 / (m - 1.0)) };
    let rhs = |y: f64| profile_rhs(flux, gamma, m, y);
    let y_scale = to_y(u_minus);
    let ctl = StepControl {
        rtol: tol,
        atol: tol * y_scale,
        h_max: MAX_KNOT_SPACING,
    };
    let y0 = to_y(0.5 * u_minus);

    // March left towards the far field u_-.
    let mut left = vec![Knot { xi: 0.0, y: y0, dy: rhs(y0) }];
    let (mut xi, mut y, mut h) = (0.0, y0, -0.01);
    loop {
        let done = (to_u(y) - u_minus).abs() < tol * u_minus && xi <= xi_span.0;
        if done {
            break;
        }
        if xi < -MAX_EXTENT {
            return Err(Error::Precondition(format!(
                "left far field not reached within {MAX_EXTENT}; U = {}",
                to_u(y)
            )));
        }
        let (y_new, err) = dp5_step(&rhs, y, h);
        let ratio = ctl.error_ratio(y, y_new, err);
        if ratio <= 1.0 {
            xi += h;
            y = y_new;
            left.push(Knot { xi, y, dy: rhs(y) });
        }
        h = ctl.next_h(h, ratio);
    }

    // March right towards the vacuum state.
    let mut right = Vec::new();
    let (mut xi, mut y, mut h) = (0.0, y0, 0.01);
    let x_r;
    loop {
        if m == 1.0 {
            if xi >= xi_span.1 && y < tol * u_minus {
                x_r = f64::INFINITY;
                break;
            }
            if xi > MAX_EXTENT {
                return Err(Error::Precondition("right tail not resolved".into()));
            }
        } else if xi > xi_span.1 {
            return Err(Error::SpanTooSmall { lo: xi_span.0, hi: xi_span.1 });
        }
        let (y_new, err) = dp5_step(&rhs, y, h);
        let ratio = ctl.error_ratio(y, y_new, err);
        if ratio > 1.0 {
            h = ctl.next_h(h, ratio);
            continue;
        }
        if m > 1.0 && y_new <= 0.0 {
            // bisect the step length until w sits just above zero
            let (mut lo, mut hi) = (0.0, h);
            let mut y_lo = y;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let y_mid = dp5_step(&rhs, y, mid).0;
                if y_mid > 0.0 {
                    lo = mid;
                    y_lo = y_mid;
                } else {
                    hi = mid;
                }
                if y_lo < 1e-14 * y_scale {
                    break;
                }
            }
            if lo > 0.0 {
                right.push(Knot { xi: xi + lo, y: y_lo, dy: rhs(y_lo) });
            }
            // finite slope at w = 0 makes linear extrapolation accurate
            let slope = rhs(y_lo);
            let root = xi + lo + y_lo / slope.abs();
            right.push(Knot { xi: root, y: 0.0, dy: rhs(0.0) });
            x_r = root;
            break;
        }
        xi += h;
        y = y_new;
        right.push(Knot { xi, y, dy: rhs(y) });
        h = ctl.next_h(h, ratio);
    }

    left.reverse();
    left.extend(right);
    ShockProfile::from_knots(gamma, u_minus, m, x_r, tol, left)
}

impl ShockProfile {
    /// Assembles a profile from a knot table sorted by strictly increasing `xi`.
    pub fn from_knots(
        gamma: f64,
        u_minus: f64,
        m: f64,
        x_r: f64,
        tol: f64,
        knots: Vec<Knot>,
    ) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Precondition("profile needs at least two knots".into()));
        }
        if let Some(w) = knots.windows(2).find(|w| !(w[1].xi > w[0].xi)) {
            return Err(Error::Precondition(format!(
                "knots not strictly increasing at xi = {}",
                w[1].xi
            )));
        }
        let mut profile = ShockProfile {
            gamma,
            u_minus,
            m,
            x_r,
            tol,
            knots,
            prefix: Vec::new(),
        };
        let mut prefix = Vec::with_capacity(profile.knots.len());
        prefix.push(0.0);
        for i in 0..profile.knots.len() - 1 {
            let seg = profile.segment_integral(i, profile.knots[i + 1].xi);
            prefix.push(prefix[i] + seg);
        }
        profile.prefix = prefix;
        Ok(profile)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn u_minus(&self) -> f64 {
        self.u_minus
    }
    pub fn u_plus(&self) -> f64 {
        0.0
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    /// Free boundary; `+inf` when `m = 1`.
    pub fn x_r(&self) -> f64 {
        self.x_r
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }
    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }
    pub fn xi_min(&self) -> f64 {
        self.knots[0].xi
    }
    pub fn xi_max(&self) -> f64 {
        self.knots[self.knots.len() - 1].xi
    }

    fn y_to_u(&self, y: f64) -> f64 {
        if self.m == 1.0 {
            y
        } else {
            y.max(0.0).powf(1.0 / (self.m - 1.0))
        }
    }

    /// `dU/dxi` from the integration variable and its derivative.
    fn du_from(&self, y: f64, dy: f64) -> f64 {
        if self.m == 1.0 {
            dy
        } else {
            let u = self.y_to_u(y);
            u.powf(2.0 - self.m) * dy / (self.m - 1.0)
        }
    }

    /// Knot values as `(xi, U, dU)` triples.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.knots
            .iter()
            .map(move |k| (k.xi, self.y_to_u(k.y), self.du_from(k.y, k.dy)))
    }

    fn locate(&self, xi: f64) -> usize {
        let idx = self.knots.partition_point(|k| k.xi <= xi);
        idx.clamp(1, self.knots.len() - 1) - 1
    }

    /// Fritsch-Carlson limited end slopes of segment `i`.
    fn limited_slopes(&self, i: usize) -> (f64, f64) {
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        let delta = (b.y - a.y) / (b.xi - a.xi);
        if delta == 0.0 {
            return (0.0, 0.0);
        }
        let mut alpha = a.dy / delta;
        let mut beta = b.dy / delta;
        if alpha < 0.0 {
            alpha = 0.0;
        }
        if beta < 0.0 {
            beta = 0.0;
        }
        let r2 = alpha * alpha + beta * beta;
        if r2 > 9.0 {
            let s = 3.0 / r2.sqrt();
            alpha *= s;
            beta *= s;
        }
        (alpha * delta, beta * delta)
    }

    /// Interpolated integration variable and its derivative on segment `i`.
    fn hermite(&self, i: usize, xi: f64) -> (f64, f64) {
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        let h = b.xi - a.xi;
        let (d0, d1) = self.limited_slopes(i);
        let t = (xi - a.xi) / h;
        let (t2, t3) = (t * t, t * t * t);
        let y = (2.0 * t3 - 3.0 * t2 + 1.0) * a.y
            + (t3 - 2.0 * t2 + t) * h * d0
            + (-2.0 * t3 + 3.0 * t2) * b.y
            + (t3 - t2) * h * d1;
        let dy = (6.0 * t2 - 6.0 * t) / h * a.y
            + (3.0 * t2 - 4.0 * t + 1.0) * d0
            + (-6.0 * t2 + 6.0 * t) / h * b.y
            + (3.0 * t2 - 2.0 * t) * d1;
        (y, dy)
    }

    /// `U(xi)`; exactly `u_-` left of the table and exactly 0 right of `x_R`.
    pub fn value(&self, xi: f64) -> f64 {
        if xi <= self.xi_min() {
            return self.u_minus;
        }
        if xi >= self.x_r {
            return 0.0;
        }
        if xi >= self.xi_max() {
            return self.y_to_u(self.knots[self.knots.len() - 1].y);
        }
        let (y, _) = self.hermite(self.locate(xi), xi);
        self.y_to_u(y).clamp(0.0, self.u_minus)
    }

    /// `U'(xi)`, zero outside the table.
    pub fn derivative(&self, xi: f64) -> f64 {
        if xi <= self.xi_min() || xi >= self.xi_max() {
            return 0.0;
        }
        let (y, dy) = self.hermite(self.locate(xi), xi);
        self.du_from(y, dy)
    }

    fn segment_integral(&self, i: usize, upto: f64) -> f64 {
        let a = self.knots[i].xi;
        let len = upto - a;
        if len <= 0.0 {
            return 0.0;
        }
        if self.m == 1.0 && upto == self.knots[i + 1].xi {
            let (d0, d1) = self.limited_slopes(i);
            let (y0, y1) = (self.knots[i].y, self.knots[i + 1].y);
            return len * 0.5 * (y0 + y1) + len * len * (d0 - d1) / 12.0;
        }
        gauss_legendre(a, upto, |x| self.y_to_u(self.hermite(i, x).0))
    }

    /// `int_{xi_min}^{xi} U`, continued by `u_-` to the left and by the
    /// last value (zero for `m > 1`) to the right.
    pub fn antiderivative(&self, xi: f64) -> f64 {
        if xi <= self.xi_min() {
            return -(self.xi_min() - xi) * self.u_minus;
        }
        let last = self.knots.len() - 1;
        if xi >= self.xi_max() {
            let tail = self.y_to_u(self.knots[last].y);
            return self.prefix[last] + (xi - self.xi_max()) * tail;
        }
        let i = self.locate(xi);
        self.prefix[i] + self.segment_integral(i, xi)
    }

    /// `int_a^b U`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.antiderivative(b) - self.antiderivative(a)
    }

    /// Cell averages of `U` on the uniform cells `[x_left + i dx, x_left + (i+1) dx]`.
    pub fn cell_averages(&self, x_left: f64, dx: f64, n_cells: usize) -> Vec<f64> {
        let edges: Vec<f64> = (0..=n_cells)
            .map(|i| self.antiderivative(x_left + i as f64 * dx))
            .collect();
        edges
            .windows(2)
            .map(|w| ((w[1] - w[0]) / dx).clamp(0.0, self.u_minus))
            .collect()
    }

    /// The translate `xi -> U(xi + x0)`.
    pub fn shifted(&self, x0: f64) -> ShockProfile {
        let knots = self
            .knots
            .iter()
            .map(|k| Knot { xi: k.xi - x0, ..*k })
            .collect();
        ShockProfile::from_knots(self.gamma, self.u_minus, self.m, self.x_r - x0, self.tol, knots)
            .expect("translation preserves knot ordering")
    }

    /// Secant slope of `w = U^{m-1}` over the stretch left of `x_R` where
    /// `U <= 1e-3 u_-`; `None` when `m = 1`.
    pub fn free_boundary_slope(&self) -> Option<f64> {
        if self.m == 1.0 {
            return None;
        }
        let threshold = (1e-3 * self.u_minus).powf(self.m - 1.0);
        let last = self.knots.len() - 1;
        let start = self.knots[..last].iter().find(|k| k.y <= threshold)?;
        let end = &self.knots[last];
        Some((end.y - start.y) / (end.xi - start.xi))
    }

    pub fn sidecar(&self) -> ProfileSidecar {
        ProfileSidecar {
            gamma: self.gamma,
            u_minus: self.u_minus,
            m: self.m,
            x_r: self.x_r.is_finite().then_some(self.x_r),
            tol: self.tol,
        }
    }

    /// Writes the knot table as CSV with header `xi,U,dU`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "xi,U,dU")?;
        for (xi, u, du) in self.samples() {
            writeln!(out, "{xi:e},{u:e},{du:e}")?;
        }
        Ok(())
    }

    /// CSV table plus its JSON sidecar next to it (`<stem>.json`).
    pub fn export(&self, csv_path: &Path) -> Result<()> {
        let file = std::fs::File::create(csv_path)?;
        self.write_csv(std::io::BufWriter::new(file))?;
        let sidecar = csv_path.with_extension("json");
        std::fs::write(sidecar, serde_json::to_string_pretty(&self.sidecar())?)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSidecar {
    pub gamma: f64,
    pub u_minus: f64,
    pub m: f64,
    #[serde(rename = "x_R")]
    pub x_r: Option<f64>,
    pub tol: f64,
}

/// 8-point Gauss-Legendre rule on `[a, b]`.
fn gauss_legendre<F: Fn(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    const NODES: [(f64, f64); 4] = [
        (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
        (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
        (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
        (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
    ];
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    half * NODES
        .iter()
        .map(|&(x, w)| w * (f(mid - half * x) + f(mid + half * x)))
        .sum::<f64>()
}

/// Violations found by [`verify_profile`]; all zero for a valid profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    /// Largest `|y' - rhs(y)|` at interior knots, `y'` from a five-point
    /// finite difference of the knot values.
    pub max_ode_residual: f64,
    /// Largest `U_{i+1} - U_i` over knot pairs, clipped at zero.
    pub max_monotonicity_violation: f64,
    /// Largest excursion of `dU/dxi` outside `[f'(0) - gamma, 0]` over knot pairs.
    pub max_derivative_bound_violation: f64,
    pub knots: usize,
}

impl ProfileReport {
    pub fn passes(&self, residual_tol: f64, violation_tol: f64) -> bool {
        self.max_ode_residual < residual_tol
            && self.max_monotonicity_violation <= violation_tol
            && self.max_derivative_bound_violation <= violation_tol
    }
}

pub fn verify_profile(profile: &ShockProfile, flux: &FluxSpec) -> ProfileReport {
    let knots = profile.knots();
    let values: Vec<f64> = knots.iter().map(|k| profile.y_to_u(k.y)).collect();
    let lower = flux.deriv(0.0) - profile.gamma();

    let mut mono: f64 = 0.0;
    let mut bound: f64 = 0.0;
    for i in 0..knots.len() - 1 {
        let du = values[i + 1] - values[i];
        mono = mono.max(du);
        let slope = du / (knots[i + 1].xi - knots[i].xi);
        bound = bound.max(lower - slope).max(slope);
    }

    let mut residual: f64 = 0.0;
    for i in 2..knots.len().saturating_sub(2) {
        let stencil = &knots[i - 2..=i + 2];
        let gaps: Vec<f64> = stencil.windows(2).map(|w| w[1].xi - w[0].xi).collect();
        let (lo, hi) = gaps
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &g| (lo.min(g), hi.max(g)));
        if lo < 1e-3 * hi {
            continue;
        }
        let fd = lagrange_derivative(stencil, 2);
        let exact = profile_rhs(flux, profile.gamma(), profile.m(), knots[i].y);
        residual = residual.max((fd - exact).abs());
    }

    ProfileReport {
        max_ode_residual: residual,
        max_monotonicity_violation: mono,
        max_derivative_bound_violation: bound,
        knots: knots.len(),
    }
}

/// Derivative at `pts[at].xi` of the interpolating polynomial through `pts`.
fn lagrange_derivative(pts: &[Knot], at: usize) -> f64 {
    let x = pts[at].xi;
    let mut total = 0.0;
    for (j, pj) in pts.iter().enumerate() {
        let weight = if j == at {
            pts.iter()
                .enumerate()
                .filter(|&(k, _)| k != at)
                .map(|(_, pk)| 1.0 / (x - pk.xi))
                .sum::<f64>()
        } else {
            let num: f64 = pts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != at && k != j)
                .map(|(_, pk)| x - pk.xi)
                .product();
            let den: f64 = pts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, pk)| pj.xi - pk.xi)
                .product();
            num / den
        };
        total += weight * pj.y;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logistic(xi: f64) -> f64 {
        1.0 / (1.0 + (xi / 2.0).exp())
    }

    #[test]
    fn m1_matches_logistic() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.0, (-30.0, 30.0), 1e-10).unwrap();
        assert!(p.x_r().is_infinite());
        let err = (0..=6000)
            .map(|i| -30.0 + i as f64 * 0.01)
            .map(|xi| (p.value(xi) - logistic(xi)).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "L_inf error {err}");
        assert!(p.samples().all(|(_, u, _)| u > 0.0));
    }

    #[test]
    fn value_clamps_and_pin() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.5, (-60.0, 30.0), 1e-10).unwrap();
        assert_eq!(p.value(p.x_r() + 5.0), 0.0);
        assert_eq!(p.value(p.xi_min() - 10.0), 1.0);
        assert!((p.value(0.0) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn free_boundary_quadratic_touchdown() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.5, (-60.0, 30.0), 1e-10).unwrap();
        let slope = p.free_boundary_slope().unwrap();
        assert!((slope + 1.0 / 6.0).abs() < 1e-3 / 6.0, "slope {slope}");
        // U ~ (x_R - xi)^2 / 36 just left of the free boundary
        let d = 0.05;
        let u = p.value(p.x_r() - d);
        assert!((u / (d * d / 36.0) - 1.0).abs() < 0.02, "ratio {}", u / (d * d / 36.0));
    }

    #[test]
    fn span_too_small_is_reported() {
        let r = solve_profile(&FluxSpec::Burgers, 1.0, 1.25, (-60.0, 0.5), 1e-10);
        assert!(matches!(r, Err(Error::SpanTooSmall { .. })));
    }

    #[test]
    fn invalid_inputs() {
        assert!(solve_profile(&FluxSpec::Burgers, 1.0, 2.0, (-10.0, 10.0), 1e-8).is_err());
        assert!(solve_profile(&FluxSpec::Burgers, 0.0, 1.5, (-10.0, 10.0), 1e-8).is_err());
        let concave = FluxSpec::Polynomial { coeffs: vec![0.0, 0.0, 1.0, -2.0] };
        assert!(matches!(
            solve_profile(&concave, 1.0, 1.5, (-10.0, 10.0), 1e-8),
            Err(Error::InvalidFlux(_))
        ));
    }

    #[test]
    fn verify_logistic_profile() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.0, (-30.0, 30.0), 1e-10).unwrap();
        let r = verify_profile(&p, &FluxSpec::Burgers);
        assert!(r.max_monotonicity_violation < 1e-8);
        assert!(r.max_derivative_bound_violation < 1e-8);
        assert!(r.max_ode_residual < 1e-6, "{r:?}");
    }

    #[test]
    fn verify_flags_injected_bump() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.5, (-60.0, 30.0), 1e-10).unwrap();
        let mut knots = p.knots().to_vec();
        let i = knots.len() / 2;
        let u = knots[i].y.powf(2.0) + 0.1;
        knots[i].y = u.sqrt();
        let bad = ShockProfile::from_knots(p.gamma(), 1.0, 1.5, p.x_r(), p.tol(), knots).unwrap();
        let r = verify_profile(&bad, &FluxSpec::Burgers);
        assert!(r.max_monotonicity_violation > 0.0);
        assert!(r.max_ode_residual > 1e-3);
    }

    #[test]
    fn derivative_bound_for_m_three_halves() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.5, (-60.0, 30.0), 1e-10).unwrap();
        // f'(0) - gamma = -1/2 for Burgers with u_- = 1
        let r = verify_profile(&p, &FluxSpec::Burgers);
        assert_eq!(r.max_derivative_bound_violation, 0.0);
        assert_eq!(r.max_monotonicity_violation, 0.0);
        assert!(p.samples().all(|(_, _, du)| (-0.5..=0.0).contains(&du)));
    }

    #[test]
    fn integral_matches_quadrature_and_shift() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.25, (-80.0, 30.0), 1e-10).unwrap();
        let (a, b) = (-20.0, 15.0);
        let n = 200_000;
        let h = (b - a) / n as f64;
        let mid: f64 = (0..n).map(|i| p.value(a + (i as f64 + 0.5) * h)).sum::<f64>() * h;
        assert!((p.integral(a, b) - mid).abs() < 1e-8);
        let s = p.shifted(0.7);
        assert!((s.value(1.3) - p.value(2.0)).abs() < 1e-15);
        assert!((s.x_r() - (p.x_r() - 0.7)).abs() < 1e-15);
    }

    #[test]
    fn csv_and_sidecar() {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.5, (-60.0, 30.0), 1e-8).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("xi,U,dU\n"));
        assert_eq!(text.lines().count(), p.knots().len() + 1);
        let json = serde_json::to_value(p.sidecar()).unwrap();
        assert!(json.get("x_R").unwrap().is_f64());
    }
}
