//! Monotone conservative finite-volume evolution.

pub mod equilibrium;
pub mod evolve;
pub mod gradient;
pub mod grid;
pub mod regularized;
pub mod scheme;

pub use equilibrium::discrete_wave;
pub use evolve::{evolve, evolve_ensemble, evolve_observed, BoundaryGuard, Cadence, EvolveOptions, NormRecord, Trajectory};
pub use gradient::{gradient_diagnostics, holder_exponent, linear_fit, GradientRecord, GradientReport};
pub use grid::Grid1D;
pub use regularized::{regularized_cascade, regularized_solve, CascadeRecord, CascadeSpec, RegularizedOutput, RegularizedRun};
pub use scheme::{cfl_dt, step, BoundaryFluxes, FieldState, Frame, NumericalFlux, Scheme};
