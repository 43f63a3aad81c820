//! Test-function families with analytic derivatives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Gaussian,
    Bump,
    Ramp,
    RandomSpline,
}

/// One member `w`, scaled by `amplitude` and stretched by `width`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Member {
    Gaussian { amplitude: f64, width: f64 },
    Bump { amplitude: f64, width: f64 },
    /// Hat `amplitude (1 − |x|/width)_+`.
    Ramp { amplitude: f64, width: f64 },
    /// `Σ c_k B_3(x/h − k)` for `k = −K..=K` with the cubic B-spline `B_3`.
    Spline { h: f64, coeffs: Vec<f64> },
}

fn bspline(s: f64) -> (f64, f64) {
    let a = s.abs();
    let sign = s.signum();
    if a >= 2.0 {
        (0.0, 0.0)
    } else if a >= 1.0 {
        let r = 2.0 - a;
        (r * r * r / 6.0, -sign * r * r / 2.0)
    } else {
        (2.0 / 3.0 - a * a + a * a * a / 2.0, sign * (-2.0 * a + 1.5 * a * a))
    }
}

impl Member {
    /// `(w(x), w'(x))`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        match self {
            Member::Gaussian { amplitude, width } => {
                let s = x / width;
                let v = amplitude * (-s * s).exp();
                (v, -2.0 * s / width * v)
            }
            Member::Bump { amplitude, width } => {
                let s = x / width;
                if s.abs() >= 1.0 {
                    return (0.0, 0.0);
                }
                let q = 1.0 - s * s;
                let v = amplitude * (1.0 - 1.0 / q).exp();
                (v, v * (-2.0 * s / (q * q)) / width)
            }
            Member::Ramp { amplitude, width } => {
                let s = x / width;
                if s.abs() >= 1.0 {
                    (0.0, 0.0)
                } else {
                    (amplitude * (1.0 - s.abs()), -amplitude * s.signum() / width)
                }
            }
            Member::Spline { h, coeffs } => {
                let k0 = (coeffs.len() / 2) as f64;
                coeffs.iter().enumerate().fold((0.0, 0.0), |(v, d), (k, c)| {
                    let (b, db) = bspline(x / h - (k as f64 - k0));
                    (v + c * b, d + c * db / h)
                })
            }
        }
    }

    /// Half-length of an interval outside which `|w| < 1e-12 max|w|`.
    pub fn extent(&self) -> f64 {
        match self {
            Member::Gaussian { width, .. } => width * (12.0 * 10f64.ln()).sqrt(),
            Member::Bump { width, .. } | Member::Ramp { width, .. } => *width,
            Member::Spline { h, coeffs } => h * ((coeffs.len() / 2) as f64 + 2.0),
        }
    }

    /// Same shape with values multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Member {
        match self.clone() {
            Member::Gaussian { amplitude, width } => Member::Gaussian { amplitude: lambda * amplitude, width },
            Member::Bump { amplitude, width } => Member::Bump { amplitude: lambda * amplitude, width },
            Member::Ramp { amplitude, width } => Member::Ramp { amplitude: lambda * amplitude, width },
            Member::Spline { h, coeffs } => Member::Spline { h, coeffs: coeffs.iter().map(|c| lambda * c).collect() },
        }
    }

    /// Same shape stretched in `x` by `sigma`.
    pub fn stretched(&self, sigma: f64) -> Member {
        match self.clone() {
            Member::Gaussian { amplitude, width } => Member::Gaussian { amplitude, width: sigma * width },
            Member::Bump { amplitude, width } => Member::Bump { amplitude, width: sigma * width },
            Member::Ramp { amplitude, width } => Member::Ramp { amplitude, width: sigma * width },
            Member::Spline { h, coeffs } => Member::Spline { h: sigma * h, coeffs },
        }
    }
}

/// Grid samples `(w, w_x)` on `[-L, L]` with `L` from [`Member::extent`], at
/// `n` intervals per unit of the extent.
pub struct Sampled {
    pub dx: f64,
    pub w: Vec<f64>,
    pub dw: Vec<f64>,
}

pub fn sample(member: &Member, points_per_extent: usize) -> Sampled {
    let l = member.extent();
    let n = 2 * points_per_extent;
    let dx = 2.0 * l / n as f64;
    let (w, dw) = (0..=n).map(|i| member.eval(-l + i as f64 * dx)).unzip();
    Sampled { dx, w, dw }
}

/// Composite trapezoid rule on node values.
pub fn trapezoid(values: impl Iterator<Item = f64>, dx: f64) -> f64 {
    let v: Vec<f64> = values.collect();
    if v.len() < 2 {
        return 0.0;
    }
    dx * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[v.len() - 1]))
}

/// `count` members of one kind, deterministic in `seed`.
pub fn family(kind: FamilyKind, count: usize, seed: u64) -> Vec<Member> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let amplitude = rng.gen_range(0.2..2.0);
            let width = rng.gen_range(0.5..3.0);
            match kind {
                FamilyKind::Gaussian => Member::Gaussian { amplitude, width },
                FamilyKind::Bump => Member::Bump { amplitude, width },
                FamilyKind::Ramp => Member::Ramp { amplitude, width },
                FamilyKind::RandomSpline => {
                    let k = rng.gen_range(2..6);
                    let coeffs = (0..2 * k + 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    Member::Spline { h: width / 2.0, coeffs }
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-6;
        for kind in [FamilyKind::Gaussian, FamilyKind::Bump, FamilyKind::Ramp, FamilyKind::RandomSpline] {
            for m in family(kind, 5, 3) {
                for i in 0..50 {
                    let x = -m.extent() + (i as f64 + 0.37) * 2.0 * m.extent() / 50.0;
                    let fd = (m.eval(x + h).0 - m.eval(x - h).0) / (2.0 * h);
                    assert!((fd - m.eval(x).1).abs() < 1e-5 * (1.0 + fd.abs()), "{m:?} at {x}");
                }
            }
        }
    }

    #[test]
    fn samples_vanish_at_the_ends() {
        for kind in [FamilyKind::Gaussian, FamilyKind::Bump, FamilyKind::Ramp, FamilyKind::RandomSpline] {
            for m in family(kind, 5, 9) {
                let s = sample(&m, 200);
                let top = s.w.iter().map(|v| v.abs()).fold(0.0, f64::max);
                assert!(s.w[0].abs() <= 1e-12 * top && s.w.last().unwrap().abs() <= 1e-12 * top);
            }
        }
    }

    #[test]
    fn spline_partition_of_unity() {
        let m = Member::Spline { h: 1.0, coeffs: vec![1.0; 21] };
        for x in [-3.3, 0.0, 1.7] {
            assert!((m.eval(x).0 - 1.0).abs() < 1e-14);
        }
    }
}
