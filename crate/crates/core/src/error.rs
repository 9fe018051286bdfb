use thiserror::Error;

use crate::subresultant::DeltaIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("cofactor expansion is capped at {cap}x{cap}, got {size}x{size}")]
    CofactorCap { size: usize, cap: usize },

    #[error("matrix is tall ({rows}x{cols}); a determinant polynomial needs rows <= cols")]
    TallMatrix { rows: usize, cols: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("polynomial list is empty")]
    EmptyList,

    #[error("polynomial at position {index} is zero")]
    ZeroInList { index: usize },

    #[error("block lemma precondition violated: {0}")]
    LemmaPrecondition(String),

    #[error("invalid polynomial system: {0}")]
    InvalidSystem(String),

    #[error("index {delta} has length {got}, expected {expected}")]
    DeltaLength {
        delta: DeltaIndex,
        expected: usize,
        got: usize,
    },

    #[error("index {delta} has weight {weight} > d0 = {d0}")]
    DeltaOutOfRange {
        delta: DeltaIndex,
        weight: usize,
        d0: usize,
    },

    #[error("invalid two-polynomial subresultant request: {0}")]
    InvalidTwoPoly(String),

    #[error("identity parameters inapplicable: {0}")]
    ParamsInapplicable(String),

    #[error("principal coefficient vanished (degree drop) at {}", fmt_indices(.0))]
    DegreeDrop(Vec<DeltaIndex>),

    #[error("reduction step producing {produces} is degenerate: {reason}")]
    DegenerateStep {
        produces: DeltaIndex,
        reason: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn fmt_indices(indices: &[DeltaIndex]) -> String {
    indices
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
