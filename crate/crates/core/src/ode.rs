//! Dormand-Prince 5(4) for autonomous scalar ODEs `y' = F(y)`.

const C: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One trial step: returns the 5th-order value and the embedded error estimate.
pub(crate) fn dp5_step<F: Fn(f64) -> f64>(rhs: &F, y: f64, h: f64) -> (f64, f64) {
    let mut k = [0.0; 7];
    k[0] = rhs(y);
    for s in 0..6 {
        let incr: f64 = (0..=s).map(|j| C[s][j] * k[j]).sum();
        k[s + 1] = rhs(y + h * incr);
    }
    // FSAL: the last stage is evaluated at the 5th-order solution
    let y5 = y + h * (0..6).map(|j| C[5][j] * k[j]).sum::<f64>();
    let y4 = y + h * (0..7).map(|j| B4[j] * k[j]).sum::<f64>();
    (y5, (y5 - y4).abs())
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    pub h_max: f64,
}

impl StepControl {
    pub fn error_ratio(&self, y_old: f64, y_new: f64, err: f64) -> f64 {
        err / (self.atol + self.rtol * y_old.abs().max(y_new.abs()))
    }

    pub fn next_h(&self, h: f64, ratio: f64) -> f64 {
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        let next = h.abs() * factor;
        next.min(self.h_max).copysign(h)
    }
}
