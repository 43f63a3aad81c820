//! Convex flux laws `f` with `f(0) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of sample points used when checking convexity on a working range.
const CONVEXITY_SAMPLES: usize = 257;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FluxSpec {
    /// `f(u) = u^2 / 2`
    Burgers,
    /// `f(u) = coef * u^2`
    Quadratic { coef: f64 },
    /// `f(u) = sum_k coeffs[k] * u^k`; `coeffs[0]` must be zero.
    Polynomial { coeffs: Vec<f64> },
}

impl FluxSpec {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            FluxSpec::Burgers => 0.5 * u * u,
            FluxSpec::Quadratic { coef } => coef * u * u,
            FluxSpec::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c),
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        match self {
            FluxSpec::Burgers => u,
            FluxSpec::Quadratic { coef } => 2.0 * coef * u,
            FluxSpec::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, c)| acc * u + k as f64 * c),
        }
    }

    pub fn deriv2(&self, u: f64) -> f64 {
        match self {
            FluxSpec::Burgers => 1.0,
            FluxSpec::Quadratic { coef } => 2.0 * coef,
            FluxSpec::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(2)
                .rev()
                .fold(0.0, |acc, (k, c)| acc * u + (k * (k - 1)) as f64 * c),
        }
    }

    /// `f(u) / u`, continuously extended by `f'(0)` at `u = 0`. Evaluated
    /// without the cancellation of the raw quotient.
    pub fn secant_from_zero(&self, u: f64) -> f64 {
        match self {
            FluxSpec::Burgers => 0.5 * u,
            FluxSpec::Quadratic { coef } => coef * u,
            FluxSpec::Polynomial { coeffs } => coeffs
                .iter()
                .skip(1)
                .rev()
                .fold(0.0, |acc, c| acc * u + c),
        }
    }

    /// Smallest sampled `f''` on `[0, u_max]`.
    pub fn convexity_floor(&self, u_max: f64) -> f64 {
        (0..CONVEXITY_SAMPLES)
            .map(|i| self.deriv2(u_max * i as f64 / (CONVEXITY_SAMPLES - 1) as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks `f(0) = 0` and `f'' >= C_f > 0` on `[0, u_max]`; returns `C_f`.
    pub fn validate(&self, u_max: f64) -> Result<f64> {
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidFlux(format!("f(0) = {} != 0", self.eval(0.0))));
        }
        if let FluxSpec::Polynomial { coeffs } = self {
            if coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidFlux("non-finite coefficient".into()));
            }
        }
        let floor = self.convexity_floor(u_max);
        if !(floor > 0.0) {
            return Err(Error::InvalidFlux(format!(
                "f'' sample minimum {floor} on [0, {u_max}] is not positive"
            )));
        }
        Ok(floor)
    }

    /// The point `u >= 0` where `f'(u) = s`, i.e. the minimiser over `u >= 0`
    /// of the frame flux `f(u) - s u`. Returns 0 when `f'(0) >= s`.
    pub fn sonic_point(&self, s: f64) -> f64 {
        match self {
            FluxSpec::Burgers => s.max(0.0),
            FluxSpec::Quadratic { coef } => (s / (2.0 * coef)).max(0.0),
            FluxSpec::Polynomial { .. } => {
                if self.deriv(0.0) >= s {
                    return 0.0;
                }
                let mut hi = 1.0;
                let mut guard = 0;
                while self.deriv(hi) < s && guard < 200 {
                    hi *= 2.0;
                    guard += 1;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.deriv(mid) < s {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// Largest `|f'(u) - s|` over `u` in `[lo, hi]` (extremes sit at the ends for convex `f`).
    pub fn max_wave_speed(&self, lo: f64, hi: f64, s: f64) -> f64 {
        (self.deriv(lo) - s).abs().max((self.deriv(hi) - s).abs())
    }
}

/// Rankine-Hugoniot speed of the jump between `u_minus` and `u_plus`.
pub fn rh_speed(flux: &FluxSpec, u_minus: f64, u_plus: f64) -> Result<f64> {
    if u_minus == u_plus {
        return Err(Error::DegenerateJump(u_minus));
    }
    Ok((flux.eval(u_plus) - flux.eval(u_minus)) / (u_plus - u_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rh_speed_examples() {
        assert_eq!(rh_speed(&FluxSpec::Burgers, 1.0, 0.0).unwrap(), 0.5);
        assert_eq!(rh_speed(&FluxSpec::Quadratic { coef: 1.0 }, 2.0, 0.0).unwrap(), 2.0);
        assert!(matches!(
            rh_speed(&FluxSpec::Burgers, 1.0, 1.0),
            Err(Error::DegenerateJump(_))
        ));
    }

    #[test]
    fn polynomial_matches_closed_forms() {
        let p = FluxSpec::Polynomial { coeffs: vec![0.0, 0.3, 0.5, 0.1] };
        for &u in &[0.0, 0.25, 1.0, 1.7] {
            assert!((p.eval(u) - (0.3 * u + 0.5 * u * u + 0.1 * u * u * u)).abs() < 1e-14);
            assert!((p.deriv(u) - (0.3 + u + 0.3 * u * u)).abs() < 1e-14);
            assert!((p.deriv2(u) - (1.0 + 0.6 * u)).abs() < 1e-14);
            if u > 0.0 {
                assert!((p.secant_from_zero(u) - p.eval(u) / u).abs() < 1e-14);
            }
        }
        assert_eq!(p.secant_from_zero(0.0), 0.3);
    }

    #[test]
    fn validation_rejects_bad_fluxes() {
        assert_eq!(FluxSpec::Burgers.validate(1.0).unwrap(), 1.0);
        let offset = FluxSpec::Polynomial { coeffs: vec![0.1, 0.0, 1.0] };
        assert!(matches!(offset.validate(1.0), Err(Error::InvalidFlux(_))));
        // f'' = 2 - 6u changes sign at 1/3
        let concave = FluxSpec::Polynomial { coeffs: vec![0.0, 0.0, 1.0, -1.0] };
        assert!(matches!(concave.validate(1.0), Err(Error::InvalidFlux(_))));
    }

    #[test]
    fn sonic_point_of_polynomial() {
        let p = FluxSpec::Polynomial { coeffs: vec![0.0, -0.2, 0.5, 0.2] };
        let s = 0.3;
        let u = p.sonic_point(s);
        assert!((p.deriv(u) - s).abs() < 1e-12);
        assert_eq!(FluxSpec::Burgers.sonic_point(-1.0), 0.0);
    }

    proptest! {
        #[test]
        fn rh_speed_is_symmetric(a in 0.0f64..3.0, b in 0.0f64..3.0, c in 0.1f64..2.0) {
            prop_assume!((a - b).abs() > 1e-6);
            let f = FluxSpec::Polynomial { coeffs: vec![0.0, 0.1, c, 0.05] };
            let ab = rh_speed(&f, a, b).unwrap();
            let ba = rh_speed(&f, b, a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab.abs()));
        }
    }
}
