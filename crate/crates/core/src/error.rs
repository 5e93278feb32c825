use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point (x = {x}, y = {y}) is outside the simplex: {reason}")]
    Domain { x: f64, y: f64, reason: &'static str },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("expected {expected} amplitudes/entries, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("degenerate contraction at site {site}: orthogonal start")]
    DegenerateContraction { site: usize },

    #[error("all polynomial coefficients vanish")]
    DegeneratePolynomial,

    #[error("cubic has no non-negative real root at (x = {x}, y = {y})")]
    NoNonnegativeRoot { x: f64, y: f64 },

    #[error("invalid party index {party} for a {n_qubits}-qubit state")]
    InvalidParty { party: usize, n_qubits: usize },

    #[error("grid resolution must be at least {min}, got {got}")]
    Resolution { min: usize, got: usize },

    #[error("surface parametrization mismatch: {0}")]
    Parametrization(&'static str),

    #[error("degenerate hull input: {0}")]
    DegenerateHull(&'static str),

    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
