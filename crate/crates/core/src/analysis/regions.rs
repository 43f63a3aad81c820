//! Sign-based partition of the line and the cellwise `B_1` integrand.

use serde::{Deserialize, Serialize};

use super::perturbation::ReferenceWave;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `U ≡ 0`, right of the free boundary.
    D0,
    /// `φ >= 0`
    D1,
    /// `φ < 0`, `φ_ξ < 0`
    D2,
    /// `φ < 0`, `φ_ξ >= 0`
    D3,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::D0, Region::D1, Region::D2, Region::D3];

    pub fn label(&self) -> &'static str {
        match self {
            Region::D0 => "D0",
            Region::D1 => "D1",
            Region::D2 => "D2",
            Region::D3 => "D3",
        }
    }
}

/// One region per cell. `vacuum[i]` marks cells where the reference wave is
/// identically zero.
pub fn region_partition(phi: &[f64], phi_xi: &[f64], vacuum: &[bool]) -> Vec<Region> {
    phi.iter()
        .zip(phi_xi)
        .zip(vacuum)
        .map(|((&p, &d), &vac)| {
            if vac {
                Region::D0
            } else if p >= 0.0 {
                Region::D1
            } else if d < 0.0 {
                Region::D2
            } else {
                Region::D3
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionDiagConfig {
    pub c1: f64,
    pub q: f64,
}

impl Default for RegionDiagConfig {
    fn default() -> Self {
        RegionDiagConfig { c1: 0.05, q: 4.0 }
    }
}

impl RegionDiagConfig {
    /// `1 − C_2` where `C_1 = (1 − C_2)^{m−1} / (1 − (1 − C_2)^{m−1})`, i.e.
    /// `(C_1/(1 + C_1))^{1/(m−1)}`. Kept in this form because `C_2` is within
    /// rounding of 1 for small `m − 1`.
    pub fn one_minus_c2(&self, m: f64) -> f64 {
        (self.c1 / (1.0 + self.c1)).powf(1.0 / (m - 1.0))
    }

    pub fn c2(&self, m: f64) -> f64 {
        1.0 - self.one_minus_c2(m)
    }

    /// Relative residual of the defining relation.
    pub fn c2_residual(&self, m: f64) -> f64 {
        let s = self.one_minus_c2(m).powf(m - 1.0);
        (s / (1.0 - s) - self.c1).abs() / self.c1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub region: Region,
    pub cells: usize,
    pub measure: f64,
    pub b1_integral: f64,
    /// Measure of cells in the configurations the energy argument rules out.
    pub flagged_measure: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub t: f64,
    pub regions: Vec<RegionSummary>,
    /// Smallest `B_1` over `D_0` cells (non-negative by construction).
    pub d0_min_integrand: f64,
    /// `C` in `∫_{D1} B_1 >= c ∫ φ^{m+q−3} φ_ξ² − C ∫ φ^{m+q−3}` with `c = 2^{m−2}/2`.
    pub d1_constant: f64,
    pub partition_ok: bool,
}

/// `B_1 = ((U + φ)^{m−1}(U′ + φ_ξ) − U^{m−1}U′) |φ|^{q−2} φ_ξ`.
pub fn b1(u_ref: f64, du_ref: f64, phi: f64, phi_xi: f64, m: f64, q: f64) -> f64 {
    let first = (u_ref + phi).max(0.0).powf(m - 1.0) * (du_ref + phi_xi) - u_ref.powf(m - 1.0) * du_ref;
    first * (phi.abs().powf(q - 2.0) * phi_xi)
}

/// Per-region `B_1` integrals and "impossible" cells for `u = U + φ`.
pub fn b1_integrals(
    t: f64,
    reference: &ReferenceWave,
    phi: &[f64],
    phi_xi: &[f64],
    m: f64,
    cfg: &RegionDiagConfig,
) -> Result<RegionReport> {
    let n = reference.u.len();
    if phi.len() != n || phi_xi.len() != n {
        return Err(Error::LengthMismatch(phi.len(), n));
    }
    let dx = reference.grid.dx();
    let q = cfg.q;
    let gap = cfg.one_minus_c2(m);
    let vacuum: Vec<bool> = (0..n).map(|i| reference.is_vacuum(i)).collect();
    let regions = region_partition(phi, phi_xi, &vacuum);
    let mut sums = [(0usize, 0.0f64, 0.0f64); 4];
    let mut d0_min = f64::INFINITY;
    let (mut d1_grad, mut d1_mass) = (0.0, 0.0);
    for i in 0..n {
        let total = reference.u[i] + phi[i];
        if total < 0.0 {
            return Err(Error::InvalidState { index: i, value: total });
        }
        let region = regions[i];
        let (uu, du) = if region == Region::D0 { (0.0, 0.0) } else { (reference.u[i], reference.du[i]) };
        let val = b1(uu, du, phi[i], phi_xi[i], m, q);
        let mut flagged = false;
        match region {
            Region::D0 => d0_min = d0_min.min(val),
            Region::D1 => {
                let w = phi[i].powf(m + q - 3.0);
                d1_grad += w * phi_xi[i] * phi_xi[i] * dx;
                d1_mass += w * dx;
            }
            Region::D2 | Region::D3 => {
                if uu > 0.0 {
                    // φ < 0 here, so 1 − |d| = (U + φ)/U; C_2 < |d| <= 1 reads 0 <= 1 − |d| < 1 − C_2
                    let rest = total / uu;
                    let ratio = (du / phi_xi[i]).abs();
                    let close = if region == Region::D2 { ratio <= cfg.c1 / 2.0 } else { ratio < cfg.c1 };
                    flagged = rest < gap && close;
                }
            }
        }
        let slot = &mut sums[region as usize];
        slot.0 += 1;
        slot.1 += val * dx;
        if flagged {
            slot.2 += dx;
        }
    }
    let d1_integral = sums[Region::D1 as usize].1;
    let c = 2f64.powf(m - 2.0) / 2.0;
    let d1_constant = if d1_mass > 0.0 { ((c * d1_grad - d1_integral) / d1_mass).max(0.0) } else { 0.0 };
    let regions: Vec<RegionSummary> = Region::ALL
        .iter()
        .map(|&r| {
            let (cells, b1_integral, flagged_measure) = sums[r as usize];
            RegionSummary { region: r, cells, measure: cells as f64 * dx, b1_integral, flagged_measure }
        })
        .collect();
    let partition_ok = regions.iter().map(|r| r.cells).sum::<usize>() == n;
    Ok(RegionReport {
        t,
        regions,
        d0_min_integrand: if d0_min.is_finite() { d0_min } else { 0.0 },
        d1_constant,
        partition_ok,
    })
}

impl RegionReport {
    pub fn flagged_measure(&self) -> f64 {
        self.regions.iter().map(|r| r.flagged_measure).sum()
    }

    pub fn region(&self, r: Region) -> &RegionSummary {
        &self.regions[r as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::norms::derivative;
    use crate::flux::FluxSpec;
    use crate::profile::solve_profile;
    use crate::solver::Grid1D;
    use proptest::prelude::*;

    fn reference() -> ReferenceWave {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.25, (-40.0, 40.0), 1e-10).unwrap();
        let g = Grid1D::with_spacing(-30.0, 20.0, 0.1, 1.0, 0.0).unwrap();
        ReferenceWave::from_profile(&p, &g)
    }

    #[test]
    fn c2_solves_its_relation() {
        let cfg = RegionDiagConfig::default();
        for m in [1.05, 1.1, 1.2, 1.25, 4.0 / 3.0, 1.5] {
            let gap = cfg.one_minus_c2(m);
            assert!(gap > 0.0 && gap < 1.0);
            assert!(cfg.c2_residual(m) < 1e-12, "m={m}");
        }
    }

    #[test]
    fn zero_perturbation() {
        let r = reference();
        let z = vec![0.0; r.u.len()];
        let rep = b1_integrals(0.0, &r, &z, &z, 1.25, &RegionDiagConfig::default()).unwrap();
        assert!(rep.partition_ok);
        assert!(rep.regions.iter().all(|s| s.b1_integral == 0.0 && s.flagged_measure == 0.0));
        assert_eq!(rep.region(Region::D2).cells + rep.region(Region::D3).cells, 0);
    }

    #[test]
    fn d0_supported_perturbation() {
        let r = reference();
        let g = &r.grid;
        let dx = g.dx();
        let phi: Vec<f64> = g.centers().iter().map(|&x| { let s = x - r.x_r - 4.0; if s.abs() < 2.0 { 0.1 * (1.0 - s * s / 4.0).powi(3) } else { 0.0 } }).collect();
        let dphi = derivative(&phi, dx);
        let m = 1.25;
        let rep = b1_integrals(0.0, &r, &phi, &dphi, m, &RegionDiagConfig::default()).unwrap();
        let oracle: f64 = phi.iter().zip(&dphi).map(|(p, d)| p.powf(m + 1.0) * d * d).sum::<f64>() * dx;
        assert!((rep.region(Region::D0).b1_integral - oracle).abs() < 1e-15);
        assert!(rep.d0_min_integrand >= 0.0);
    }

    #[test]
    fn negative_half_profile_covers_the_support() {
        let r = reference();
        let phi: Vec<f64> = r.u.iter().map(|u| -0.5 * u).collect();
        let dphi = derivative(&phi, r.grid.dx());
        let vac: Vec<bool> = (0..phi.len()).map(|i| r.is_vacuum(i)).collect();
        let regions = region_partition(&phi, &dphi, &vac);
        for (i, reg) in regions.iter().enumerate() {
            if r.u[i] > 0.0 {
                assert!(matches!(reg, Region::D2 | Region::D3), "cell {i}");
            }
        }
    }

    #[test]
    fn negative_total_is_rejected() {
        let r = reference();
        let phi: Vec<f64> = r.u.iter().map(|u| -1.5 * u).collect();
        let dphi = derivative(&phi, r.grid.dx());
        assert!(matches!(
            b1_integrals(0.0, &r, &phi, &dphi, 1.25, &RegionDiagConfig::default()),
            Err(Error::InvalidState { .. })
        ));
    }

    proptest! {
        #[test]
        fn partition_is_exhaustive(v in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0, any::<bool>()), 1..200)) {
            let phi: Vec<f64> = v.iter().map(|t| t.0).collect();
            let dphi: Vec<f64> = v.iter().map(|t| t.1).collect();
            let vac: Vec<bool> = v.iter().map(|t| t.2).collect();
            let regions = region_partition(&phi, &dphi, &vac);
            let mut counts = [0usize; 4];
            for r in &regions { counts[*r as usize] += 1; }
            prop_assert_eq!(counts.iter().sum::<usize>(), phi.len());
            for (i, r) in regions.iter().enumerate() {
                if !vac[i] && phi[i] >= 0.0 { prop_assert_eq!(*r, Region::D1); }
                if !vac[i] && phi[i] < 0.0 && dphi[i] == 0.0 { prop_assert_eq!(*r, Region::D3); }
            }
        }

        #[test]
        fn d0_integrand_is_non_negative(phi in 0.0f64..2.0, dphi in -5.0f64..5.0, m in 1.01f64..1.99, q in 4.0f64..12.0) {
            prop_assert!(b1(0.0, 0.0, phi, dphi, m, q) >= 0.0);
        }
    }
}
