//! Python bindings for `detlab-core`.
//!
//! Scalars cross the boundary as strings: inputs are converted with
//! `str(obj)` and parsed exactly (so `int`, `fractions.Fraction` and strings
//! such as `"-3/4"` all work), and results come back in canonical form.

use detlab_core::{
    cramer_solve, dependency_certificate, det, is_linearly_independent, rank, spans_ambient, DetFunctional, DetMode,
    Error, Field, Functional, LinearSystem, Matrix, Property, Scalar, Vector,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    detlab,
    DetlabError,
    PyValueError,
    "Any error reported by the detlab core."
);
create_exception!(
    detlab,
    SingularSystemError,
    DetlabError,
    "The coefficient vectors are dependent; args are (message, rank, certificate)."
);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::SingularSystem { rank, ref certificate } => {
            let certificate: Vec<String> = certificate.iter().map(Scalar::to_string).collect();
            SingularSystemError::new_err((err.to_string(), rank, certificate))
        }
        other => DetlabError::new_err(other.to_string()),
    }
}

fn parse_field(field: &str) -> PyResult<Field> {
    field.parse().map_err(to_py)
}

fn parse_scalar(obj: &Bound<'_, PyAny>, field: Field) -> PyResult<Scalar> {
    field.parse(&obj.str()?.to_cow()?).map_err(to_py)
}

fn parse_vector(items: &[Bound<'_, PyAny>], field: Field) -> PyResult<Vector> {
    let entries = items
        .iter()
        .map(|x| parse_scalar(x, field))
        .collect::<PyResult<Vec<_>>>()?;
    Vector::new(entries).map_err(to_py)
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(Scalar::to_string).collect()
}

/// A dense matrix over the rationals or GF(p); rows are its vectors.
#[pyclass(name = "Matrix", module = "detlab", frozen, eq)]
#[derive(PartialEq)]
struct PyMatrix {
    inner: Matrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    #[pyo3(signature = (rows, field = "rational"))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<Self> {
        let field = parse_field(field)?;
        let rows = rows
            .iter()
            .map(|r| parse_vector(r, field))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMatrix {
            inner: Matrix::new(rows).map_err(to_py)?,
        })
    }

    /// Whitespace-separated rows, one per line, in the CLI input format.
    #[staticmethod]
    #[pyo3(signature = (text, field = "rational"))]
    fn parse(text: &str, field: &str) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: Matrix::parse(text, parse_field(field)?).map_err(to_py)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, field = "rational"))]
    fn identity(n: usize, field: &str) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: Matrix::identity(parse_field(field)?, n),
        })
    }

    #[getter]
    fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    #[getter]
    fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner.rows().iter().map(|r| strings(r.entries())).collect()
    }

    fn transpose(&self) -> Self {
        PyMatrix {
            inner: self.inner.transpose(),
        }
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: self.inner.checked_mul(&other.inner).map_err(to_py)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?}, field={:?})", self.rows(), self.field())
    }
}

/// A candidate functional given by its descriptor, e.g. `det:3`,
/// `lifted:det:2`, `scaled:5:det:2`, `xminusy`, `xy`.
#[pyclass(name = "Functional", module = "detlab", frozen)]
struct PyFunctional {
    inner: DetFunctional,
    field: Field,
}

#[pymethods]
impl PyFunctional {
    #[new]
    #[pyo3(signature = (descriptor, field = "rational"))]
    fn new(descriptor: &str, field: &str) -> PyResult<Self> {
        let field = parse_field(field)?;
        Ok(PyFunctional {
            inner: DetFunctional::parse(descriptor, field).map_err(to_py)?,
            field,
        })
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.field.to_string()
    }

    /// Value on the tuple formed by the rows of `m`.
    fn evaluate(&self, m: &PyMatrix) -> PyResult<String> {
        self.check_field(m.inner.field())?;
        Ok(self.inner.evaluate(&m.inner.to_tuple()).map_err(to_py)?.to_string())
    }

    /// Expected outcome per property; `None` where no claim is made.
    fn classification<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.inner.classification(self.field);
        let dict = PyDict::new(py);
        for p in Property::ALL {
            dict.set_item(p.to_string(), c.expected(p))?;
        }
        Ok(dict)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Functional({:?}, field={:?})",
            self.inner.to_string(),
            self.field.to_string()
        )
    }
}

impl PyFunctional {
    fn check_field(&self, field: Field) -> PyResult<()> {
        if field == self.field {
            Ok(())
        } else {
            Err(to_py(Error::FieldMismatch {
                left: self.field,
                right: field,
            }))
        }
    }
}

/// Determinant of a square matrix as a canonical string.
#[pyfunction]
#[pyo3(signature = (m, algorithm = "crosscheck"))]
fn determinant(m: &PyMatrix, algorithm: &str) -> PyResult<String> {
    let mode: DetMode = algorithm.parse().map_err(to_py)?;
    Ok(det(&m.inner, mode).map_err(to_py)?.value.to_string())
}

/// Cramer's rule for `x_1 v_1 + ... + x_n v_n = b`, the `v_k` being the rows
/// of `m`. Raises `SingularSystemError` if they are dependent.
#[pyfunction]
fn solve(m: &PyMatrix, b: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    let rhs = parse_vector(&b, m.inner.field())?;
    let sys = LinearSystem::new(m.inner.to_tuple(), rhs).map_err(to_py)?;
    Ok(strings(&cramer_solve(&sys).map_err(to_py)?.values))
}

#[pyfunction(name = "rank")]
fn rank_of(m: &PyMatrix) -> usize {
    rank(&m.inner.to_tuple())
}

#[pyfunction]
fn is_independent(m: &PyMatrix) -> bool {
    is_linearly_independent(&m.inner.to_tuple())
}

#[pyfunction]
fn spans(m: &PyMatrix) -> bool {
    spans_ambient(&m.inner.to_tuple())
}

/// Coefficients of a vanishing combination of the rows, or `None`.
#[pyfunction]
fn certificate(m: &PyMatrix) -> Option<Vec<String>> {
    dependency_certificate(&m.inner.to_tuple()).map(|c| strings(&c))
}

/// Randomised residual check of one property (`main-equation`,
/// `multilinearity` or `antisymmetry`).
#[pyfunction]
#[pyo3(signature = (f, property, trials = 200, seed = 0))]
fn verify<'py>(
    py: Python<'py>,
    f: &PyFunctional,
    property: &str,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let property: Property = property.parse().map_err(to_py)?;
    let report = detlab_core::main_equation::verify(&f.inner, property, f.field, trials, seed).map_err(to_py)?;
    let dict = PyDict::new(py);
    dict.set_item("property", property.to_string())?;
    dict.set_item("passed", report.passed())?;
    dict.set_item("expected", f.inner.classification(f.field).expected(property))?;
    dict.set_item("trials_run", report.trials_run)?;
    dict.set_item("seed", report.seed)?;
    dict.set_item("witness", report.witness.map(|w| w.to_string()))?;
    Ok(dict)
}

/// The constant `c` with `d2 = c * d1`, checked on `trials` random tuples.
#[pyfunction]
#[pyo3(signature = (d1, d2, trials = 20, seed = 0))]
fn uniqueness_constant(d1: &PyFunctional, d2: &PyFunctional, trials: usize, seed: u64) -> PyResult<String> {
    d1.check_field(d2.field)?;
    let c = detlab_core::uniqueness_constant(&d1.inner, &d2.inner, d1.field, trials, seed).map_err(to_py)?;
    Ok(c.to_string())
}

#[pymodule]
fn detlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyFunctional>()?;
    m.add("DetlabError", m.py().get_type::<DetlabError>())?;
    m.add("SingularSystemError", m.py().get_type::<SingularSystemError>())?;
    m.add_function(wrap_pyfunction!(determinant, m)?)?;
    m.add("det", m.getattr("determinant")?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(rank_of, m)?)?;
    m.add_function(wrap_pyfunction!(is_independent, m)?)?;
    m.add_function(wrap_pyfunction!(spans, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(uniqueness_constant, m)?)?;
    Ok(())
}
