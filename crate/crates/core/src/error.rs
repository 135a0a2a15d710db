use thiserror::Error;

use crate::cheb2d::MultiIndex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("transform size must be at least 1, got {0}")]
    InvalidSize(usize),

    #[error("shift direction must be 1 or 2, got {0}")]
    InvalidDirection(u8),

    #[error("index folding of {0} did not terminate")]
    FoldingDiverged(MultiIndex),

    #[error("recurrence for {index} produced folded index {folded} outside degrees {lo}..={hi}")]
    RecurrenceDegree {
        index: MultiIndex,
        folded: MultiIndex,
        lo: i64,
        hi: i64,
    },

    #[error("points coincide in coordinate x{direction} (|Δ| = {gap:e}); use the direct kernel sum")]
    NearDegenerate { direction: u8, gap: f64 },

    #[error("diagonal entry {index} of FᵀH⊕F is {value:e}, expected nonvanishing")]
    VanishingDiagonal { index: usize, value: f64 },

    #[error("FᵀH⊕F is not diagonal: relative off-diagonal {ratio:e} exceeds {tol:e}")]
    NotDiagonal { ratio: f64, tol: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("D entry {index} is {value:e}; its square root is not real")]
    NegativeWeight { index: usize, value: f64 },

    #[error("filter coefficient {0} lies outside the basis k + l < n")]
    FilterSupport(MultiIndex),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
