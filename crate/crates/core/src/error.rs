use thiserror::Error;

use crate::hypergraph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The interchange document could not be read.
    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("edge {edge} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: usize, vertex: String },

    #[error("sign outside alphabet {{-1, +1}}: vertex {vertex:?} in edge {edge} has sign {sign}")]
    SignOutsideAlphabet { edge: usize, vertex: String, sign: i64 },

    #[error("invalid hypergraph: {0}")]
    Invalid(ValidationReport),

    #[error("bad family spec {spec:?}: {reason}")]
    FamilySpec { spec: String, reason: String },

    #[error("mode not applicable: {0}")]
    ModeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("zero function has no Rayleigh quotient")]
    ZeroFunction,

    #[error("matrix is not symmetric: |S[{row}][{col}] - S[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// A bound formula was evaluated outside its domain.
    #[error("bound undefined: {0}")]
    BoundDomain(String),

    #[error("class index {index} out of range 1..={k}")]
    ClassOutOfRange { index: usize, k: usize },

    #[error("class indices must differ (got {0} twice)")]
    EqualClasses(usize),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("brute-force oracle limited to {cap} items, got {items}")]
    OracleCapExceeded { cap: usize, items: usize },

    #[error("random generator: {0}")]
    Generator(String),
}
