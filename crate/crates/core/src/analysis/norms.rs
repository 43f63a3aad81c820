use crate::error::{Error, Result};

/// `(dx Σ |v|^p)^{1/p}`, or `max |v|` for `p = ∞`.
pub fn lp_norm(v: &[f64], dx: f64, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::NormIndex(p));
    }
    if p.is_infinite() {
        return Ok(v.iter().map(|x| x.abs()).fold(0.0, f64::max));
    }
    if p == 1.0 {
        return Ok(v.iter().map(|x| x.abs()).sum::<f64>() * dx);
    }
    if p == 2.0 {
        return Ok((v.iter().map(|x| x * x).sum::<f64>() * dx).sqrt());
    }
    // scale by the maximum so that high powers of small fields do not underflow
    let top = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = v.iter().map(|x| (x.abs() / top).powf(p)).sum();
    Ok(top * (s * dx).powf(1.0 / p))
}

/// `∫ |v|^p` on the grid (`p < ∞`).
pub fn lp_power(v: &[f64], dx: f64, p: f64) -> Result<f64> {
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::NormIndex(p));
    }
    Ok(v.iter().map(|x| x.abs().powf(p)).sum::<f64>() * dx)
}

/// Centered differences inside, one-sided at the ends.
pub fn derivative(v: &[f64], dx: f64) -> Vec<f64> {
    let n = v.len();
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|i| match i {
            0 => (v[1] - v[0]) / dx,
            i if i == n - 1 => (v[n - 1] - v[n - 2]) / dx,
            i => (v[i + 1] - v[i - 1]) / (2.0 * dx),
        })
        .collect()
}

/// `(‖v‖_2^2 + ‖v_x‖_2^2)^{1/2}` with the derivative from [`derivative`].
pub fn h1_norm(v: &[f64], dx: f64) -> f64 {
    let d = derivative(v, dx);
    let s: f64 = v.iter().chain(&d).map(|x| x * x).sum();
    (s * dx).sqrt()
}

/// Trapezoid cumulative integral of point samples from the left end.
pub fn antiderivative(phi: &[f64], dx: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(phi.len());
    let mut acc = 0.0;
    for (i, &v) in phi.iter().enumerate() {
        if i > 0 {
            acc += 0.5 * dx * (phi[i - 1] + v);
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn indicator_norms() {
        let dx = 0.01;
        let v: Vec<f64> = (0..1000)
            .map(|i| if ((i as f64 + 0.5) * dx - 5.0).abs() < 1.0 { 1.0 } else { 0.0 })
            .collect();
        assert!((lp_norm(&v, dx, 1.0).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(lp_norm(&v, dx, f64::INFINITY).unwrap(), 1.0);
        assert!(matches!(lp_norm(&v, dx, 0.5), Err(Error::NormIndex(_))));
    }

    #[test]
    fn gaussian_l2() {
        let dx = 0.01;
        let v: Vec<f64> = (0..2000).map(|i| { let x = -10.0 + (i as f64 + 0.5) * dx; (-x * x).exp() }).collect();
        let exact = (std::f64::consts::PI / 2.0).powf(0.25);
        assert!((lp_norm(&v, dx, 2.0).unwrap() - exact).abs() < 1e-12);
        let p3 = lp_norm(&v, dx, 3.0).unwrap();
        let oracle = (std::f64::consts::PI / 3.0).sqrt().powf(1.0 / 3.0);
        assert!((p3 - oracle).abs() < 1e-12);
    }

    #[test]
    fn antiderivative_of_bump_derivative() {
        let b = crate::perturb::Bump { center: 0.0, half_width: 2.0, amplitude: 1.0 };
        let mut errs = Vec::new();
        for dx in [0.02, 0.01] {
            let n = (8.0 / dx) as usize;
            let xs: Vec<f64> = (0..n).map(|i| -4.0 + (i as f64 + 0.5) * dx).collect();
            let phi: Vec<f64> = xs.iter().map(|&x| b.derivative(x)).collect();
            let big = antiderivative(&phi, dx);
            errs.push(xs.iter().zip(&big).map(|(&x, v)| (v - b.value(x)).abs()).fold(0.0, f64::max));
            assert!(big.last().unwrap().abs() < 1e-8);
        }
        assert!(errs[0] / errs[1] > 3.5, "{errs:?}");
        assert!(antiderivative(&[0.0; 5], 0.1).iter().all(|&v| v == 0.0));
    }

    proptest! {
        #[test]
        fn norms_are_homogeneous(v in proptest::collection::vec(-3.0f64..3.0, 4..40), p in 1.0f64..9.0, s in 0.1f64..5.0) {
            let w: Vec<f64> = v.iter().map(|x| s * x).collect();
            let a = lp_norm(&v, 0.1, p).unwrap();
            let b = lp_norm(&w, 0.1, p).unwrap();
            prop_assert!((b - s * a).abs() <= 1e-12 * (1.0 + b));
            prop_assert!((h1_norm(&w, 0.1) - s * h1_norm(&v, 0.1)).abs() <= 1e-12 * (1.0 + b));
        }

        #[test]
        fn norms_are_ordered(v in proptest::collection::vec(-3.0f64..3.0, 4..40)) {
            // on a grid of total length 1 the Lp norms increase with p
            let dx = 1.0 / v.len() as f64;
            let n1 = lp_norm(&v, dx, 1.0).unwrap();
            let n2 = lp_norm(&v, dx, 2.0).unwrap();
            let n4 = lp_norm(&v, dx, 4.0).unwrap();
            let ninf = lp_norm(&v, dx, f64::INFINITY).unwrap();
            prop_assert!(n1 <= n2 * (1.0 + 1e-12) && n2 <= n4 * (1.0 + 1e-12) && n4 <= ninf * (1.0 + 1e-12));
        }
    }
}
