use num::BigRational;
use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curve classes live on different surfaces")]
    SurfaceMismatch,
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { got: usize, expected: usize },
    #[error("operation requires a surface with boundary")]
    ClosedSurface,
    #[error("operation requires at least two boundary components")]
    NotEnoughBoundary,
    #[error("matrix does not antisymmetrize to the intersection form")]
    InvalidSeifertForm,
    #[error("linking matrix must be symmetric")]
    AsymmetricLinking,
    #[error("attaching matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    AttachShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("fiber boundary has {0} components; connect it first")]
    DisconnectedFiberBoundary(u32),
    #[error("boundary plane field has nonzero first Chern class")]
    ChernClassNonzero,
    #[error("class is not in the image of the intersection pairing")]
    NotInPairingImage,
    #[error("Chern class is not an even combination of the cocore images")]
    NotAnEvenCombination,
    #[error("three-dimensional invariants differ by the non-integer {0}")]
    NonIntegerGap(BigRational),
    #[error("invalid cycle index {0}")]
    InvalidCycleIndex(usize),
    #[error("double point {index} references an invalid {what}")]
    InvalidDoublePoint { index: usize, what: &'static str },
    #[error("bridge number was not declared")]
    MissingBridgeNumber,
    #[error("closed-manifold input must have exactly one 4-handle, got {0}")]
    NotClosed(usize),
    #[error("internal integrity failure: {0}")]
    Integrity(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
