//! Cramer's-rule solving of `x_1 v_1 + ... + x_n v_n = b`, plus rank and
//! linear-independence queries.

use crate::determinant::det_elimination;
use crate::error::{Error, Result};
use crate::linalg::{is_skipped_line, parse_row, parse_rows, row_echelon, Matrix, VecTuple, Vector};
use crate::scalar::{Field, Scalar};

/// A square system whose unknowns weight the coefficient vectors.
///
/// The coefficient vectors are the rows of the coefficient matrix, so in
/// the usual `A x = b` form `A` is the transpose of that matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    coefficients: VecTuple,
    rhs: Vector,
}

impl LinearSystem {
    pub fn new(coefficients: VecTuple, rhs: Vector) -> Result<Self> {
        if coefficients.arity() != coefficients.dim() {
            return Err(Error::NotSquare {
                rows: coefficients.arity(),
                cols: coefficients.dim(),
            });
        }
        coefficients.check_member(&rhs)?;
        Ok(LinearSystem { coefficients, rhs })
    }

    pub fn coefficients(&self) -> &VecTuple {
        &self.coefficients
    }

    pub fn rhs(&self) -> &Vector {
        &self.rhs
    }

    pub fn field(&self) -> Field {
        self.coefficients.field()
    }

    pub fn size(&self) -> usize {
        self.coefficients.arity()
    }

    /// Coefficient matrix lines, a `---` separator line, then one line for b.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let sep = lines
            .iter()
            .position(|l| l.strip_suffix('\r').unwrap_or(l) == "---")
            .ok_or_else(|| Error::Parse("missing `---` separator".into()))?;
        let matrix = parse_rows(&lines[..sep], field)?;
        let rhs_lines: Vec<&&str> = lines[sep + 1..].iter().filter(|l| !is_skipped_line(l)).collect();
        let [rhs_line] = rhs_lines.as_slice() else {
            return Err(Error::Parse(format!(
                "expected exactly one right-hand side line, found {}",
                rhs_lines.len()
            )));
        };
        let rhs = parse_row(rhs_line, field)?;
        LinearSystem::new(matrix.to_tuple(), rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<Scalar>,
    /// `D(v_1, ..., b, ..., v_n)` with b in slot k.
    pub numerators: Vec<Scalar>,
    /// `D(v_1, ..., v_n)`, never zero.
    pub base_determinant: Scalar,
}

/// `x_k = D(v_1, .., b, .., v_n) / D(v_1, .., v_n)`.
pub fn cramer_solve(sys: &LinearSystem) -> Result<Solution> {
    let v = sys.coefficients();
    let base = det_elimination(&Matrix::from(v.clone()))?;
    if base.is_zero() {
        let certificate = dependency_certificate(v).expect("zero determinant implies dependence");
        return Err(Error::SingularSystem {
            rank: rank(v),
            certificate,
        });
    }
    let numerators = (0..sys.size())
        .map(|k| det_elimination(&Matrix::from(v.with_replaced(k, sys.rhs().clone())?)))
        .collect::<Result<Vec<_>>>()?;
    let values = numerators.iter().map(|d| d / &base).collect();
    Ok(Solution {
        values,
        numerators,
        base_determinant: base,
    })
}

/// Gauss-Jordan elimination on the augmented system, without determinants.
pub fn solve_by_elimination(sys: &LinearSystem) -> Result<Vec<Scalar>> {
    let n = sys.size();
    let v = sys.coefficients();
    // aug[j] = (v_0[j], ..., v_{n-1}[j], b[j])
    let mut aug: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            let mut row: Vec<Scalar> = v.vectors().iter().map(|vk| vk.get(j).clone()).collect();
            row.push(sys.rhs().get(j).clone());
            row
        })
        .collect();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !aug[r][col].is_zero()) else {
            let certificate = dependency_certificate(v).expect("no pivot implies dependence");
            return Err(Error::SingularSystem {
                rank: rank(v),
                certificate,
            });
        };
        aug.swap(col, pivot);
        let inv = aug[col][col].inverse()?;
        for e in aug[col].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                *e = &*e - &(&factor * p);
            }
        }
    }
    Ok(aug.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

/// Dimension of the span of `t`.
pub fn rank(t: &VecTuple) -> usize {
    if t.arity() == 0 {
        return 0;
    }
    row_echelon(&Matrix::from(t.clone())).rank()
}

/// Determinant test for n vectors in F^n, rank test otherwise.
pub fn is_linearly_independent(t: &VecTuple) -> bool {
    match t.arity() {
        0 => true,
        k if k > t.dim() => false,
        k if k == t.dim() => !det_elimination(&Matrix::from(t.clone())).expect("square").is_zero(),
        k => rank(t) == k,
    }
}

pub fn spans_ambient(t: &VecTuple) -> bool {
    rank(t) == t.dim()
}

/// Coefficients `c` with `sum_i c_i v_i = 0`, not all zero, or `None` for
/// an independent tuple.
///
/// Taken from the first zero row of the echelon form and negated, so the
/// row that turned out dependent carries coefficient -1; for rows (1,2),
/// (2,4) this gives (2, -1).
pub fn dependency_certificate(t: &VecTuple) -> Option<Vec<Scalar>> {
    if t.arity() == 0 {
        return None;
    }
    let echelon = row_echelon(&Matrix::from(t.clone()));
    let r = echelon.rank();
    if r == t.arity() {
        return None;
    }
    Some(echelon.transform.row(r).entries().iter().map(|c| -c).collect())
}
