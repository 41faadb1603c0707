use thiserror::Error;

use crate::algebra::{Blade, Signature};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): need p + q between 1 and 16")]
    InvalidSignature { p: usize, q: usize },

    #[error("invalid blade: {0}")]
    InvalidBlade(String),

    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("blade {blade} is not supported on the generator subset {members:?}")]
    NotInSubalgebra { blade: Blade, members: Vec<usize> },

    #[error("invalid generator subset: {0}")]
    InvalidSubset(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("invalid generator set: {0}")]
    InvalidGeneratorSet(String),

    #[error("unsupported signature {sig}: {reason}")]
    UnsupportedSignature { sig: Signature, reason: String },

    #[error("generator search exhausted: needed {needed} commuting involutions, best set found has {} ({})", .found.len(), crate::algebra::format_blades(.found))]
    SearchExhausted { needed: usize, found: Vec<Blade> },

    #[error("not a Kahler idempotent: {0}")]
    NotAKahlerIdempotent(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
