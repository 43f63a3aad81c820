//! Perturbation diagnostics against the traveling wave.

pub mod decay;
pub mod experiment;
pub mod norms;
pub mod perturbation;
pub mod regions;

pub use decay::{bu3_ratio, decay_fit, phi_lp_rate, l2_rate_bound, linf_rate_bound, phi_lp_energy_check, DecayFit, DecayRecord, DecaySeries, EnergyReport};
pub use experiment::{run_decay, DecayConfig, DecayOutcome};
pub use norms::{antiderivative, derivative, h1_norm, lp_norm};
pub use perturbation::{compute_shift, perturbation, ReferenceWave};
pub use regions::{b1_integrals, region_partition, Region, RegionDiagConfig, RegionReport};
