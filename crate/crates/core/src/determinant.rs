//! Two independent determinant engines and the constructions built on them.
//!
//! [`det_cofactor`] expands recursively along the first column: the rows of
//! an n×n matrix are vectors of F × F^(n-1), and the determinant is
//! `sum_i (-1)^i * a_i0 * det(minor_i0)` with 0-based `i`, bottoming out at
//! the 1-determinant `D(x) = x`. [`det_elimination`] reduces with row
//! interchanges and replacements and reads `(-1)^m * prod(diagonal)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{reduce_to_diagonal, row_echelon, Matrix, VecTuple, Vector};
use crate::main_equation::DetFunctional;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetMode {
    Cofactor,
    Elimination,
    CrossChecked,
}

impl fmt::Display for DetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetMode::Cofactor => "cofactor",
            DetMode::Elimination => "elimination",
            DetMode::CrossChecked => "crosscheck",
        })
    }
}

impl FromStr for DetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cofactor" => Ok(DetMode::Cofactor),
            "elimination" => Ok(DetMode::Elimination),
            "crosscheck" => Ok(DetMode::CrossChecked),
            _ => Err(Error::Parse(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub value: Scalar,
    pub algorithm: DetMode,
}

pub fn det_cofactor(a: &Matrix) -> Result<Scalar> {
    a.require_square()?;
    Ok(first_column_expansion(a))
}

fn first_column_expansion(a: &Matrix) -> Scalar {
    let n = a.nrows();
    if n == 1 {
        return a.get(0, 0).clone();
    }
    let mut acc = a.field().zero();
    for i in 0..n {
        let head = a.get(i, 0);
        if head.is_zero() {
            continue;
        }
        let term = head * &first_column_expansion(&a.minor(i, 0).expect("in range"));
        acc = if i % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn det_elimination(a: &Matrix) -> Result<Scalar> {
    let trace = reduce_to_diagonal(a)?;
    let product = trace.diagonal().iter().fold(a.field().one(), |acc, d| acc * d);
    Ok(if trace.swap_count % 2 == 1 { -product } else { product })
}

/// Runs the selected engine; `CrossChecked` runs both and fails on any
/// disagreement.
pub fn det(a: &Matrix, mode: DetMode) -> Result<DetResult> {
    let value = match mode {
        DetMode::Cofactor => det_cofactor(a)?,
        DetMode::Elimination => det_elimination(a)?,
        DetMode::CrossChecked => {
            let cofactor = det_cofactor(a)?;
            let elimination = det_elimination(a)?;
            if cofactor != elimination {
                return Err(Error::EngineDisagreement { cofactor, elimination });
            }
            cofactor
        }
    };
    Ok(DetResult { value, algorithm: mode })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

/// Laplace expansion along one row or column:
/// `sum_j a_ij * (-1)^(i+j) * det(minor_ij)`.
pub fn cofactor_expand(a: &Matrix, axis: Axis, index: usize) -> Result<Scalar> {
    let n = a.require_square()?;
    if index >= n {
        return Err(Error::IndexOutOfRange { index, len: n });
    }
    if n == 1 {
        return Ok(a.get(0, 0).clone());
    }
    let mut acc = a.field().zero();
    for k in 0..n {
        let (i, j) = match axis {
            Axis::Row => (index, k),
            Axis::Column => (k, index),
        };
        let entry = a.get(i, j);
        if entry.is_zero() {
            continue;
        }
        let term = entry * &first_column_expansion(&a.minor(i, j)?);
        acc = if (i + j) % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// The standard determinant on F^n as `n - 1` lifts of `D(x) = x`.
pub fn lift_determinant(n: usize) -> DetFunctional {
    assert!(n >= 1, "determinants need arity >= 1");
    (1..n).fold(DetFunctional::StandardDet(1), |inner, _| {
        DetFunctional::Lifted(Box::new(inner))
    })
}

/// A basis of a subspace W of F^n together with standard basis vectors
/// completing it to a basis of F^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    span: VecTuple,
    extension: VecTuple,
}

impl SubspaceBasis {
    pub fn ambient_dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span_vectors(&self) -> &VecTuple {
        &self.span
    }

    pub fn extension(&self) -> &VecTuple {
        &self.extension
    }

    pub fn subspace_dim(&self) -> usize {
        self.span.arity()
    }
}

fn tuple_rank(t: &VecTuple) -> usize {
    if t.arity() == 0 {
        0
    } else {
        row_echelon(&Matrix::from(t.clone())).rank()
    }
}

/// Greedily appends e_0, ..., e_{n-1} (in index order) whenever the candidate
/// enlarges the span, until the tuple has n members.
pub fn extend_to_basis(span_vectors: &VecTuple) -> Result<SubspaceBasis> {
    let rank = tuple_rank(span_vectors);
    if rank < span_vectors.arity() {
        return Err(Error::DependentInput {
            rank,
            arity: span_vectors.arity(),
        });
    }
    let (field, n) = (span_vectors.field(), span_vectors.dim());
    let mut current = span_vectors.clone();
    let mut extension = VecTuple::empty(field, n);
    for j in 0..n {
        if current.arity() == n {
            break;
        }
        let e = Vector::basis(field, n, j);
        let mut candidate = current.clone();
        candidate.push(e.clone())?;
        if tuple_rank(&candidate) > current.arity() {
            current = candidate;
            extension.push(e)?;
        }
    }
    debug_assert!(!det_elimination(&Matrix::from(current))?.is_zero());
    Ok(SubspaceBasis {
        span: span_vectors.clone(),
        extension,
    })
}

/// `D'(w_1, ..., w_k) = det(w_1, ..., w_k, e_{k+1}, ..., e_n)` for tuples of
/// vectors inside W.
pub fn subspace_determinant(basis: &SubspaceBasis, w: &VecTuple) -> Result<Scalar> {
    let k = basis.subspace_dim();
    if w.arity() != k {
        return Err(Error::ArityMismatch {
            expected: k,
            found: w.arity(),
        });
    }
    if w.dim() != basis.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.ambient_dim(),
            found: w.dim(),
        });
    }
    if w.field() != basis.span.field() {
        return Err(Error::FieldMismatch {
            left: basis.span.field(),
            right: w.field(),
        });
    }
    for (index, v) in w.vectors().iter().enumerate() {
        let mut with_v = basis.span.clone();
        with_v.push(v.clone())?;
        if tuple_rank(&with_v) != k {
            return Err(Error::NotInSubspace { index });
        }
    }
    det_elimination(&Matrix::from(w.concat(&basis.extension)?))
}
