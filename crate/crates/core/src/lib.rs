//! Exact linear algebra over the rationals and GF(p), organised around the
//! main equation characterization of determinants.
//!
//! * [`scalar`]: exact field elements.
//! * [`linalg`]: vectors, tuples, matrices, elementary operations, elimination.
//! * [`determinant`]: cofactor and elimination engines, Laplace expansion,
//!   subspace restriction.
//! * [`main_equation`]: candidate functionals and their residual checks.
//! * [`solver`]: Cramer's rule, rank and independence.
//! * [`cli`]: the `detlab` command line.

// errors carry exact scalars and certificates by design; they are cold paths
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod determinant;
pub mod error;
pub mod linalg;
pub mod main_equation;
pub mod sampling;
pub mod scalar;
pub mod solver;

pub use determinant::{
    cofactor_expand, det, det_cofactor, det_elimination, extend_to_basis, lift_determinant, subspace_determinant, Axis,
    DetMode, DetResult, SubspaceBasis,
};
pub use error::{Error, Result};
pub use linalg::{reduce_to_diagonal, row_echelon, ElementaryOp, EliminationTrace, Matrix, VecTuple, Vector};
pub use main_equation::{
    antisymmetry_residual, main_equation_residual, multilinearity_residuals, uniqueness_constant, verify_antisymmetry,
    verify_main_equation, verify_multilinearity, Classification, DetFunctional, Functional, Property, ResidualReport,
    Witness,
};
pub use sampling::SplitMix64;
pub use scalar::{Field, Scalar};
pub use solver::{
    cramer_solve, dependency_certificate, is_linearly_independent, rank, solve_by_elimination, spans_ambient,
    LinearSystem, Solution,
};
