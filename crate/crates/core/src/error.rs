use thiserror::Error;

use crate::linalg::VecTuple;
use crate::scalar::{Field, Scalar};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid modulus {0}: must be a prime in [2, 2^31]")]
    InvalidModulus(u64),

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("scale factor must be nonzero")]
    ZeroScaleFactor,

    #[error("operation needs two distinct indices, got {0} twice")]
    RepeatedIndex(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("determinant engines disagree: cofactor gave {cofactor}, elimination gave {elimination}")]
    EngineDisagreement { cofactor: Scalar, elimination: Scalar },

    #[error("arity mismatch: expected {expected} vectors, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("vector {index} does not lie in the subspace")]
    NotInSubspace { index: usize },

    #[error("input vectors are linearly dependent (rank {rank} < {arity})")]
    DependentInput { rank: usize, arity: usize },

    #[error("no tuple with nonzero value found in {trials} trials")]
    NoNonvanishingTuple { trials: usize },

    #[error("not proportional: expected {expected}, found {found} on {tuple}")]
    NotProportional {
        tuple: VecTuple,
        expected: Scalar,
        found: Scalar,
    },

    #[error(
        "singular system: rank {rank}, dependency certificate ({})",
        render_list(certificate)
    )]
    SingularSystem { rank: usize, certificate: Vec<Scalar> },
}

fn render_list(values: &[Scalar]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
