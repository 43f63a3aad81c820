use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate jump: left and right states are both {0}")]
    DegenerateJump(f64),
    #[error("invalid flux: {0}")]
    InvalidFlux(String),
    #[error("xi span [{lo}, {hi}] too small to capture the free boundary")]
    SpanTooSmall { lo: f64, hi: f64 },
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("step rejected: dt = {dt} exceeds CFL limit {limit}")]
    StepRejected { dt: f64, limit: f64 },
    #[error("invalid state: u[{index}] = {value}")]
    InvalidState { index: usize, value: f64 },
    #[error("end time {t_end} precedes current time {t}")]
    TimeReversed { t: f64, t_end: f64 },
    #[error("floor violated: v = {value} < 1/n = {floor} at cell {index}")]
    FloorViolated { index: usize, value: f64, floor: f64 },
    #[error("shift {shift} is not an integer multiple of dx = {dx}")]
    Alignment { shift: f64, dx: f64 },
    #[error("initial data not ordered: u0[{index}] > v0[{index}]")]
    Unordered { index: usize },
    #[error("run invalid: {0}")]
    RunInvalid(String),
    #[error("degenerate shift: left state is zero")]
    DegenerateShift,
    #[error("resample window [{lo}, {hi}] exceeds the domain")]
    Window { lo: f64, hi: f64 },
    #[error("norm index p = {0} must be >= 1")]
    NormIndex(f64),
    #[error("too few records in fit window: {found} < {required}")]
    InsufficientRecords { found: usize, required: usize },
    #[error("zero norm at t = {0} inside the fit window")]
    ZeroNorm(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
