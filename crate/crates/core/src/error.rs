use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate metric: psi_bar2 = {value} at (x2 = {x2}, x3 = {x3})")]
    DegenerateMetric { x2: f64, x3: f64, value: f64 },

    #[error("elliptic integral undefined: integrand imaginary for x2 = {x2}, e2 = {e2}")]
    EllipticDomain { x2: f64, e2: f64 },

    #[error("shell assumption violated: {0}")]
    ShellAssumption(String),

    #[error("grid needs at least 5 points in x2, got {0}")]
    GridTooSmall(usize),

    #[error("field shape mismatch: expected {expected:?}, got {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("vector length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("point ({i}, {j}) is not valid for {what}")]
    InvalidPoint { i: usize, j: usize, what: &'static str },

    #[error("solver diverged at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("singular system: zero pivot in column {0}")]
    Singular(usize),

    #[error("curve has no valid samples")]
    EmptyCurve,

    #[error("checkpoint format: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
