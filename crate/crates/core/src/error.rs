use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("both polynomials are zero")]
    BothZero,

    #[error("operation requires a polynomial of degree >= {min}, got {got}")]
    DegreeTooSmall { min: usize, got: String },

    #[error("indistinguishable roots at precision {precision}: cluster {cluster:?}")]
    IndistinguishableRoots { precision: u32, cluster: Vec<usize> },

    #[error("root {index} has no different root (r = 1)")]
    NoDifferentRoot { index: usize },

    #[error("index {index} out of range for {len} roots")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("jensen oracle unavailable: root within {tol:e} of the unit circle")]
    JensenUnavailable { tol: f64 },

    #[error("divided difference nodes {i} and {j} are not certifiably distinct")]
    DuplicateNodes { i: usize, j: usize },

    #[error("ragged input: row {row} has length {got}, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },

    #[error("length mismatch: {values} values for {nodes} nodes")]
    LengthMismatch { values: usize, nodes: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid cluster hint: {0}")]
    InvalidHint(String),

    #[error("certificate inconclusive at precision {precision}")]
    CertificateInconclusive { precision: u32 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
