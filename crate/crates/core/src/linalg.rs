//! Vectors, tuples of vectors and matrices over a [`Field`], together with
//! the three elementary tuple operations and recorded elimination.
//!
//! Rows are the tuple elements: a square matrix converts losslessly to and
//! from the tuple of its rows.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A coordinate vector in F^n, n >= 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let field = first.field();
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Vector { entries })
    }

    pub fn from_i64(field: Field, values: &[i64]) -> Result<Self> {
        Vector::new(values.iter().map(|&v| field.integer(v)).collect())
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        assert!(dim > 0, "vectors have positive dimension");
        Vector {
            entries: vec![field.zero(); dim],
        }
    }

    /// Standard basis vector e_index of F^dim (0-based index).
    pub fn basis(field: Field, dim: usize, index: usize) -> Self {
        let mut v = Vector::zero(field, dim);
        v.entries[index] = field.one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Vector> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: c.field(),
            });
        }
        Ok(self.scale(c))
    }

    pub(crate) fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|e| c * e).collect(),
        }
    }

    /// `self + c * other`, both already known compatible.
    pub(crate) fn add_scaled(&self, c: &Scalar, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a + &(c * b))
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// An ordered tuple of vectors sharing a dimension and field.
///
/// The dimension and field are stored so the empty tuple is well typed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecTuple {
    vectors: Vec<Vector>,
    dim: usize,
    field: Field,
}

impl VecTuple {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let first = vectors.first().ok_or(Error::ArityMismatch { expected: 1, found: 0 })?;
        let (dim, field) = (first.dim(), first.field());
        let mut tuple = VecTuple::empty(field, dim);
        for v in vectors {
            tuple.check_member(&v)?;
            tuple.vectors.push(v);
        }
        Ok(tuple)
    }

    pub fn empty(field: Field, dim: usize) -> Self {
        assert!(dim > 0, "vectors have positive dimension");
        VecTuple {
            vectors: Vec::new(),
            dim,
            field,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        VecTuple::new(rows.iter().map(|r| Vector::from_i64(field, r)).collect::<Result<_>>()?)
    }

    /// e_0, ..., e_{n-1} of F^n.
    pub fn standard_basis(field: Field, n: usize) -> Self {
        VecTuple {
            vectors: (0..n).map(|i| Vector::basis(field, n, i)).collect(),
            dim: n,
            field,
        }
    }

    pub(crate) fn check_member(&self, v: &Vector) -> Result<()> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: v.field(),
            });
        }
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &Vector {
        &self.vectors[i]
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.arity() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.arity(),
            })
        }
    }

    /// Copy of the tuple with slot `index` replaced by `v`.
    pub fn with_replaced(&self, index: usize, v: Vector) -> Result<VecTuple> {
        self.check_index(index)?;
        self.check_member(&v)?;
        let mut out = self.clone();
        out.vectors[index] = v;
        Ok(out)
    }

    pub fn with_swapped(&self, i: usize, j: usize) -> Result<VecTuple> {
        self.check_index(i)?;
        self.check_index(j)?;
        let mut out = self.clone();
        out.vectors.swap(i, j);
        Ok(out)
    }

    pub fn push(&mut self, v: Vector) -> Result<()> {
        self.check_member(&v)?;
        self.vectors.push(v);
        Ok(())
    }

    /// Concatenation of two tuples in the same space.
    pub fn concat(&self, other: &VecTuple) -> Result<VecTuple> {
        let mut out = self.clone();
        for v in &other.vectors {
            out.push(v.clone())?;
        }
        Ok(out)
    }

    /// Applies one elementary tuple operation, leaving `self` untouched.
    pub fn apply(&self, op: &ElementaryOp) -> Result<VecTuple> {
        op.validate(self.arity(), self.field)?;
        let mut out = self.clone();
        match op {
            ElementaryOp::Interchange(i, j) => out.vectors.swap(*i, *j),
            ElementaryOp::Scale(i, c) => out.vectors[*i] = out.vectors[*i].scale(c),
            ElementaryOp::Replace { target, source, factor } => {
                out.vectors[*target] = out.vectors[*target].add_scaled(factor, &self.vectors[*source])
            }
        }
        Ok(out)
    }

    /// `coefficients[0] * v_0 + ... + coefficients[k-1] * v_{k-1}`.
    pub fn linear_combination(&self, coefficients: &[Scalar]) -> Result<Vector> {
        if coefficients.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: coefficients.len(),
            });
        }
        let mut acc = Vector::zero(self.field, self.dim);
        for (c, v) in coefficients.iter().zip(&self.vectors) {
            if c.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field,
                    right: c.field(),
                });
            }
            acc = acc.add_scaled(c, v);
        }
        Ok(acc)
    }
}

impl fmt::Display for VecTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A rectangular matrix stored as its rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>) -> Result<Self> {
        let tuple = VecTuple::new(rows)?;
        Ok(Matrix { rows: tuple.vectors })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Ok(Matrix::from(VecTuple::from_i64(field, rows)?))
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix::from(VecTuple::standard_basis(field, n))
    }

    pub fn diagonal(entries: &[Scalar]) -> Result<Self> {
        let n = entries.len();
        let rows = entries
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = Vector::zero(d.field(), n);
                row.entries[i] = d.clone();
                row
            })
            .collect();
        Matrix::new(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn field(&self) -> Field {
        self.rows[0].field()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows())
        } else {
            Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.rows[i].get(j)
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector {
            entries: self.rows.iter().map(|r| r.get(j).clone()).collect(),
        }
    }

    /// The tuple of rows.
    pub fn to_tuple(&self) -> VecTuple {
        VecTuple {
            vectors: self.rows.clone(),
            dim: self.ncols(),
            field: self.field(),
        }
    }

    pub fn diagonal_entries(&self) -> Vec<Scalar> {
        (0..self.nrows().min(self.ncols()))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.entries.iter().enumerate().all(|(j, e)| i == j || e.is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: (0..self.ncols()).map(|j| self.column(j)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| other.to_tuple().linear_combination(r.entries()))
            .collect::<Result<_>>()?;
        Ok(Matrix { rows })
    }

    /// The tuple A·T, whose i-th vector is sum_j a_ij * v_j.
    pub fn act_on(&self, t: &VecTuple) -> Result<VecTuple> {
        let n = self.require_square()?;
        if t.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: t.arity(),
            });
        }
        if t.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: t.field(),
            });
        }
        let vectors = self
            .rows
            .iter()
            .map(|r| t.linear_combination(r.entries()))
            .collect::<Result<_>>()?;
        Ok(VecTuple {
            vectors,
            dim: t.dim(),
            field: t.field(),
        })
    }

    /// Row operation; the matrix is treated as the tuple of its rows.
    pub fn apply(&self, op: &ElementaryOp) -> Result<Matrix> {
        Ok(Matrix::from(self.to_tuple().apply(op)?))
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Result<Matrix> {
        if i >= self.nrows() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.nrows(),
            });
        }
        if j >= self.ncols() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.ncols(),
            });
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| Vector {
                entries: row
                    .entries
                    .iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect(),
            })
            .collect();
        Matrix::new(rows)
    }

    /// Parses the line-oriented matrix format: one row per line, entries
    /// separated by single spaces; blank lines and `#` lines are skipped.
    pub fn parse(text: &str, field: Field) -> Result<Matrix> {
        let lines: Vec<&str> = text.lines().collect();
        parse_rows(&lines, field)
    }

    /// Renders in the same format [`Matrix::parse`] reads.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&render_row(row));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn render_row(v: &Vector) -> String {
    v.entries()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn is_skipped_line(line: &str) -> bool {
    line.trim().is_empty() || line.starts_with('#')
}

pub(crate) fn parse_row(line: &str, field: Field) -> Result<Vector> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    let entries = line
        .split(' ')
        .map(|tok| field.parse(tok))
        .collect::<Result<Vec<_>>>()?;
    Vector::new(entries)
}

pub(crate) fn parse_rows(lines: &[&str], field: Field) -> Result<Matrix> {
    let rows: Vec<Vector> = lines
        .iter()
        .filter(|l| !is_skipped_line(l))
        .map(|l| parse_row(l, field))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    let ncols = rows[0].dim();
    if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
        return Err(Error::Parse(format!(
            "ragged matrix: row of length {} after rows of length {ncols}",
            bad.dim()
        )));
    }
    Matrix::new(rows)
}

impl From<VecTuple> for Matrix {
    /// Panics on the empty tuple; matrices have at least one row.
    fn from(t: VecTuple) -> Matrix {
        assert!(t.arity() > 0, "matrix needs at least one row");
        Matrix { rows: t.vectors }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            f.write_str(&render_row(row).replace(' ', ", "))?;
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// One elementary tuple operation. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryOp {
    Interchange(usize, usize),
    Scale(usize, Scalar),
    /// `row[target] += factor * row[source]`
    Replace {
        target: usize,
        source: usize,
        factor: Scalar,
    },
}

impl ElementaryOp {
    pub fn validate(&self, arity: usize, field: Field) -> Result<()> {
        let check = |index: usize| {
            if index < arity {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index, len: arity })
            }
        };
        let check_scalar = |c: &Scalar| {
            if c.field() == field {
                Ok(())
            } else {
                Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                })
            }
        };
        match self {
            ElementaryOp::Interchange(i, j) => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::RepeatedIndex(*i));
                }
            }
            ElementaryOp::Scale(i, c) => {
                check(*i)?;
                check_scalar(c)?;
                if c.is_zero() {
                    return Err(Error::ZeroScaleFactor);
                }
            }
            ElementaryOp::Replace { target, source, factor } => {
                check(*target)?;
                check(*source)?;
                check_scalar(factor)?;
                if target == source {
                    return Err(Error::RepeatedIndex(*target));
                }
            }
        }
        Ok(())
    }

    /// The operation undoing this one; always of the same kind.
    pub fn inverse(&self) -> Result<ElementaryOp> {
        Ok(match self {
            ElementaryOp::Interchange(i, j) => ElementaryOp::Interchange(*i, *j),
            ElementaryOp::Scale(i, c) => ElementaryOp::Scale(*i, c.inverse().map_err(|_| Error::ZeroScaleFactor)?),
            ElementaryOp::Replace { target, source, factor } => ElementaryOp::Replace {
                target: *target,
                source: *source,
                factor: -factor,
            },
        })
    }

    /// The elementary matrix E with E·T equal to this operation applied to T.
    pub fn matrix(&self, n: usize, field: Field) -> Result<Matrix> {
        Matrix::identity(field, n).apply(self)
    }
}

/// A recorded reduction of a square matrix using Interchange and Replace.
///
/// `reduced` is diagonal whenever the input is nonsingular. A singular input
/// leaves an upper-triangular `reduced` with at least one zero on its
/// diagonal; row operations alone cannot diagonalize e.g. `[[1,2],[2,4]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    pub ops: Vec<ElementaryOp>,
    pub reduced: Matrix,
    pub swap_count: usize,
    pub scale_factors: Vec<Scalar>,
}

impl EliminationTrace {
    pub fn diagonal(&self) -> Vec<Scalar> {
        self.reduced.diagonal_entries()
    }

    /// Applies the recorded ops to `input` in order.
    pub fn replay(&self, input: &Matrix) -> Result<Matrix> {
        self.ops.iter().try_fold(input.clone(), |m, op| m.apply(op))
    }
}

/// Forward elimination to upper-triangular form with first-nonzero pivoting
/// at position (k, k), then backward Replace ops clearing the entries above
/// each nonzero pivot. A column with no nonzero entry at or below row k is
/// skipped, leaving a zero at (k, k).
pub fn reduce_to_diagonal(a: &Matrix) -> Result<EliminationTrace> {
    let n = a.require_square()?;
    let mut ops = Vec::new();
    let mut m = a.clone();
    let mut swap_count = 0;
    let mut record = |m: &mut Matrix, op: ElementaryOp| {
        *m = m.apply(&op).expect("ops built from valid indices");
        ops.push(op);
    };

    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
            continue;
        };
        if pivot != k {
            record(&mut m, ElementaryOp::Interchange(k, pivot));
            swap_count += 1;
        }
        for r in k + 1..n {
            if !m.get(r, k).is_zero() {
                let factor = -(m.get(r, k) / m.get(k, k));
                record(
                    &mut m,
                    ElementaryOp::Replace {
                        target: r,
                        source: k,
                        factor,
                    },
                );
            }
        }
    }

    for k in (0..n).rev() {
        if m.get(k, k).is_zero() {
            continue;
        }
        for r in 0..k {
            if !m.get(r, k).is_zero() {
                let factor = -(m.get(r, k) / m.get(k, k));
                record(
                    &mut m,
                    ElementaryOp::Replace {
                        target: r,
                        source: k,
                        factor,
                    },
                );
            }
        }
    }

    Ok(EliminationTrace {
        ops,
        reduced: m,
        swap_count,
        scale_factors: Vec::new(),
    })
}

/// Row-echelon form of a rectangular matrix.
///
/// `transform` records how each reduced row combines the original rows:
/// `reduced.row(r) = sum_j transform[r][j] * input.row(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    pub transform: Matrix,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

pub fn row_echelon(a: &Matrix) -> RowEchelon {
    let field = a.field();
    let mut m = a.clone();
    let mut transform = Matrix::identity(field, a.nrows());
    let mut pivot_columns = Vec::new();
    let apply = |m: &mut Matrix, transform: &mut Matrix, op: ElementaryOp| {
        *m = m.apply(&op).expect("valid op");
        *transform = transform.apply(&op).expect("valid op");
    };

    for col in 0..a.ncols() {
        let row = pivot_columns.len();
        if row == a.nrows() {
            break;
        }
        let Some(pivot) = (row..a.nrows()).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if pivot != row {
            apply(&mut m, &mut transform, ElementaryOp::Interchange(row, pivot));
        }
        for r in row + 1..a.nrows() {
            if !m.get(r, col).is_zero() {
                let factor = -(m.get(r, col) / m.get(row, col));
                apply(
                    &mut m,
                    &mut transform,
                    ElementaryOp::Replace {
                        target: r,
                        source: row,
                        factor,
                    },
                );
            }
        }
        pivot_columns.push(col);
    }

    RowEchelon {
        reduced: m,
        pivot_columns,
        transform,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn echelon_rank_and_transform() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        let e = row_echelon(&a);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivot_columns, vec![0, 1]);
        for r in 0..3 {
            let combo = a.to_tuple().linear_combination(e.transform.row(r).entries()).unwrap();
            assert_eq!(&combo, e.reduced.row(r));
        }
        assert!(e.reduced.row(2).is_zero());
        assert_eq!(row_echelon(&m(&[&[0, 0], &[0, 0]])).rank(), 0);
        assert_eq!(row_echelon(&m(&[&[0, 1, 2], &[1, 0, 0]])).rank(), 2);
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Q, rows).unwrap()
    }

    fn t(rows: &[&[i64]]) -> VecTuple {
        VecTuple::from_i64(Q, rows).unwrap()
    }

    #[test]
    fn tuple_ops() {
        let basis = VecTuple::standard_basis(Q, 2);
        assert_eq!(
            basis.apply(&ElementaryOp::Interchange(0, 1)).unwrap(),
            t(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            t(&[&[1, 2]]).apply(&ElementaryOp::Scale(0, Q.integer(3))).unwrap(),
            t(&[&[3, 6]])
        );
        let replace = ElementaryOp::Replace {
            target: 1,
            source: 0,
            factor: Q.integer(-2),
        };
        assert_eq!(t(&[&[1, 0], &[2, 1]]).apply(&replace).unwrap(), t(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn tuple_op_errors() {
        let basis = VecTuple::standard_basis(Q, 2);
        assert_eq!(
            basis.apply(&ElementaryOp::Interchange(0, 2)),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
        assert_eq!(
            basis.apply(&ElementaryOp::Scale(0, Q.zero())),
            Err(Error::ZeroScaleFactor)
        );
        let same = ElementaryOp::Replace {
            target: 1,
            source: 1,
            factor: Q.one(),
        };
        assert_eq!(basis.apply(&same), Err(Error::RepeatedIndex(1)));
        assert_eq!(
            basis.apply(&ElementaryOp::Interchange(1, 1)),
            Err(Error::RepeatedIndex(1))
        );
    }

    #[test]
    fn elementary_matrices() {
        assert_eq!(
            ElementaryOp::Interchange(0, 1).matrix(2, Q).unwrap(),
            m(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            ElementaryOp::Scale(1, Q.integer(5)).matrix(2, Q).unwrap(),
            m(&[&[1, 0], &[0, 5]])
        );
        let c = Q.ratio(7, 3).unwrap();
        let e = ElementaryOp::Replace {
            target: 0,
            source: 1,
            factor: c.clone(),
        }
        .matrix(2, Q)
        .unwrap();
        assert_eq!(e.get(0, 1), &c);
        assert_eq!(e.get(0, 0), &Q.one());
        assert_eq!(e.get(1, 0), &Q.zero());
        assert!(matches!(
            ElementaryOp::Interchange(0, 3).matrix(3, Q),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn action_examples() {
        let v = t(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(Matrix::identity(Q, 2).act_on(&v).unwrap(), v);
        assert_eq!(
            m(&[&[2, 0], &[0, 3]]).act_on(&v).unwrap(),
            t(&[&[2, 4, 6], &[12, 15, 18]])
        );
        assert_eq!(
            m(&[&[1, 1], &[0, 1]]).act_on(&VecTuple::standard_basis(Q, 2)).unwrap(),
            t(&[&[1, 1], &[0, 1]])
        );
        assert!(matches!(
            m(&[&[1, 1], &[0, 1]]).act_on(&t(&[&[1]])),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        ));
        let gf7 = Field::prime(7).unwrap();
        assert!(matches!(
            Matrix::identity(gf7, 2).act_on(&v),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn products() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.checked_mul(&Matrix::identity(Q, 2)).unwrap(), a);
        assert_eq!(a.checked_mul(&m(&[&[1, 0], &[1, 1]])).unwrap(), m(&[&[2, 1], &[1, 1]]));
        let swap = ElementaryOp::Interchange(0, 2).matrix(3, Q).unwrap();
        assert_eq!(swap.checked_mul(&swap).unwrap(), Matrix::identity(Q, 3));
        assert!(matches!(
            a.checked_mul(&m(&[&[1, 2, 3]])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn transposes() {
        assert_eq!(Matrix::identity(Q, 3).transpose(), Matrix::identity(Q, 3));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(m(&[&[1, 2, 3]]).transpose(), m(&[&[1], &[2], &[3]]));
    }

    #[test]
    fn reduce_swap_only() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let trace = reduce_to_diagonal(&a).unwrap();
        assert_eq!(trace.swap_count, 1);
        assert_eq!(trace.diagonal(), vec![Q.one(), Q.one()]);
        assert!(trace.reduced.is_diagonal());
        assert_eq!(trace.replay(&a).unwrap(), trace.reduced);
    }

    #[test]
    fn reduce_diagonal_is_noop() {
        let d = Matrix::diagonal(&[Q.integer(2), Q.integer(3), Q.integer(5)]).unwrap();
        let trace = reduce_to_diagonal(&d).unwrap();
        assert!(trace.ops.is_empty());
        assert_eq!(trace.swap_count, 0);
        assert_eq!(trace.reduced, d);
    }

    #[test]
    fn reduce_singular() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let trace = reduce_to_diagonal(&a).unwrap();
        assert_eq!(trace.swap_count, 0);
        assert_eq!(
            trace.ops,
            vec![ElementaryOp::Replace {
                target: 1,
                source: 0,
                factor: Q.integer(-2)
            }]
        );
        assert_eq!(trace.diagonal(), vec![Q.one(), Q.zero()]);
        assert_eq!(trace.replay(&a).unwrap(), trace.reduced);
    }

    #[test]
    fn reduce_zero_column() {
        let a = m(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 7]]);
        let trace = reduce_to_diagonal(&a).unwrap();
        assert!(trace.diagonal()[0].is_zero());
        assert_eq!(trace.replay(&a).unwrap(), trace.reduced);
        assert!(trace.ops.iter().all(|op| !matches!(op, ElementaryOp::Scale(..))));
    }

    #[test]
    fn reduce_rejects_rectangular() {
        assert_eq!(
            reduce_to_diagonal(&m(&[&[1, 2, 3], &[4, 5, 6]])),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn parse_format() {
        let text = "# a comment\n1 2\n\n-3/6 4\n";
        let a = Matrix::parse(text, Q).unwrap();
        assert_eq!(a.get(1, 0), &Q.ratio(-1, 2).unwrap());
        assert_eq!(a.render(), "1 2\n-1/2 4\n");
        assert_eq!(Matrix::parse(&a.render(), Q).unwrap(), a);
        assert_eq!(a.to_string(), "[[1, 2], [-1/2, 4]]");

        for bad in ["1 2\n3\n", "1  2\n", "", "# only\n", "1 x\n", "1 2 \n"] {
            assert!(matches!(Matrix::parse(bad, Q), Err(Error::Parse(_))), "{bad:?}");
        }
        assert_eq!(Matrix::parse("1/0\n", Q), Err(Error::DivisionByZero));
    }

    #[test]
    fn minors() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.minor(1, 0).unwrap(), m(&[&[2, 3], &[8, 9]]));
        assert!(a.minor(3, 0).is_err());
    }
}
