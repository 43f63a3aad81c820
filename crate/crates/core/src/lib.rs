pub mod analysis;
pub mod error;
pub mod flux;
pub mod inequalities;
mod ode;
pub mod perturb;
pub mod profile;
pub mod semigroup;
pub mod solver;

pub use error::{Error, Result};
pub use flux::{rh_speed, FluxSpec};
pub use profile::{solve_profile, verify_profile, ProfileReport, ShockProfile};
pub use solver::{FieldState, Frame, Grid1D, NumericalFlux, Scheme};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
