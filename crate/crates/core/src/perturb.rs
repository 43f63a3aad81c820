//! Smooth compactly supported perturbations and seeded random families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// `B(x) = exp(1 - 1/(1 - r^2))` with `r = (x - center)/half_width`, zero for `|r| >= 1`. Peak value 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: f64,
    pub half_width: f64,
    pub amplitude: f64,
}

impl Bump {
    pub fn value(&self, x: f64) -> f64 {
        let r = (x - self.center) / self.half_width;
        if r.abs() >= 1.0 {
            0.0
        } else {
            self.amplitude * (1.0 - 1.0 / (1.0 - r * r)).exp()
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let r = (x - self.center) / self.half_width;
        if r.abs() >= 1.0 {
            return 0.0;
        }
        let q = 1.0 - r * r;
        self.value(x) * (-2.0 * r / (q * q)) / self.half_width
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    /// Exact cell average over `[a, b]` up to 16-point Gauss per sub-cell.
    pub fn cell_average(&self, a: f64, b: f64) -> f64 {
        gauss_average(|x| self.value(x), a, b)
    }
}

/// Average of `g` over `[a, b]` with composite 4-panel, 4-point Gauss-Legendre.
pub fn gauss_average(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
    const W: [f64; 4] = [0.347_854_845_137_453_85, 0.652_145_154_862_546_2, 0.652_145_154_862_546_2, 0.347_854_845_137_453_85];
    let panels = 4;
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            s += w * g(mid + 0.5 * h * x);
        }
    }
    s * 0.5 / panels as f64
}

/// Independent sub-seed for task `index` of an experiment seeded with `seed`.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.gen()
}

/// A sum of 1 to 3 non-negative bumps with centers in `[lo, hi]`.
pub fn random_bumps(seed: u64, lo: f64, hi: f64, max_amplitude: f64) -> Vec<Bump> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let half_width = rng.gen_range(0.5..2.0f64).min(0.5 * (hi - lo));
            Bump {
                center: rng.gen_range(lo + half_width..=hi - half_width),
                half_width,
                amplitude: rng.gen_range(0.1..1.0) * max_amplitude,
            }
        })
        .collect()
}
