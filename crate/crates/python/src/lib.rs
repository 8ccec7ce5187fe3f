//! Python bindings: the `pyentpow` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use entpow::cli::{self, Family, SweepSpec};
use entpow::{BipartiteOperator, ComplexMatrix, ControlledUSpec, C64 as Complex64};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    ComplexMatrix::new(n_rows, n_cols, rows.into_iter().flatten().collect()).map_err(value_err)
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// A two-qudit operator: a d² x d² complex matrix with local dimension d.
#[pyclass(name = "Operator", module = "pyentpow", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyOperator {
    inner: BipartiteOperator,
}

impl From<BipartiteOperator> for PyOperator {
    fn from(inner: BipartiteOperator) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyOperator {
    #[new]
    fn new(d: usize, matrix: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let mat = matrix_from_rows(matrix)?;
        BipartiteOperator::new(d, mat)
            .map(Self::from)
            .map_err(value_err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.local_dim()
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.inner.matrix())
    }

    fn realign(&self) -> Self {
        self.inner.realign().into()
    }

    fn partial_transpose_first(&self) -> Self {
        self.inner.partial_transpose_first().into()
    }

    fn partial_transpose_second(&self) -> Self {
        self.inner.partial_transpose_second().into()
    }

    fn swap_left(&self) -> Self {
        self.inner.swap_left().into()
    }

    fn swap_right(&self) -> Self {
        self.inner.swap_right().into()
    }

    fn adjoint(&self) -> Self {
        self.inner.adjoint().into()
    }

    fn unitarity_defect(&self) -> f64 {
        self.inner.unitarity_defect()
    }

    #[pyo3(signature = (tol = entpow::UNITARITY_TOL))]
    fn is_unitary(&self, tol: f64) -> bool {
        self.inner.is_unitary(tol)
    }

    fn __matmul__(&self, other: &PyOperator) -> PyResult<Self> {
        self.inner
            .matmul(&other.inner)
            .map(Self::from)
            .map_err(value_err)
    }

    fn __eq__(&self, other: &PyOperator) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Operator(d={})", self.inner.local_dim())
    }
}

#[pyclass(name = "McEstimate", module = "pyentpow", frozen, get_all)]
pub struct PyMcEstimate {
    mean: f64,
    stderr: f64,
    n_samples: usize,
    seed: u64,
}

#[pymethods]
impl PyMcEstimate {
    fn __repr__(&self) -> String {
        format!(
            "McEstimate(mean={}, stderr={}, n_samples={}, seed={})",
            self.mean, self.stderr, self.n_samples, self.seed
        )
    }
}

#[pyclass(name = "EntanglementReport", module = "pyentpow", frozen, get_all)]
pub struct PyReport {
    d: usize,
    e_op: f64,
    e_op_swapped: f64,
    e_op_swapped_right: f64,
    e_swap: f64,
    e_power: Option<f64>,
    unitarity_ok: bool,
    unitarity_defect: f64,
}

#[pyfunction]
fn identity_op(d: usize) -> PyResult<PyOperator> {
    entpow::identity_op(d).map(Into::into).map_err(value_err)
}

#[pyfunction]
fn swap_op(d: usize) -> PyResult<PyOperator> {
    entpow::swap_op(d).map(Into::into).map_err(value_err)
}

#[pyfunction]
fn max_entangled_projector(d: usize) -> PyResult<PyOperator> {
    entpow::max_entangled_projector(d)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn exp_swap(d: usize, t: f64) -> PyResult<PyOperator> {
    entpow::exp_swap(d, t).map(Into::into).map_err(value_err)
}

/// Controlled-U from a list of d target unitaries (each a d x d nested list).
#[pyfunction]
fn controlled_u(blocks: Vec<Vec<Vec<Complex64>>>) -> PyResult<PyOperator> {
    let d = blocks.len();
    let blocks = blocks
        .into_iter()
        .map(matrix_from_rows)
        .collect::<PyResult<Vec<_>>>()?;
    let spec = ControlledUSpec::new(d, blocks).map_err(value_err)?;
    Ok(entpow::controlled_u(&spec).into())
}

#[pyfunction]
fn random_controlled_u(d: usize, seed: u64) -> PyResult<PyOperator> {
    let spec = ControlledUSpec::random(d, seed).map_err(value_err)?;
    Ok(entpow::controlled_u(&spec).into())
}

/// Haar-random n x n unitary as a nested list.
#[pyfunction]
fn haar_unitary(n: usize, seed: u64) -> Vec<Vec<Complex64>> {
    matrix_to_rows(&entpow::haar_unitary(n, seed))
}

/// Haar-random two-qudit operator of local dimension d.
#[pyfunction]
fn haar_operator(d: usize, seed: u64) -> PyResult<PyOperator> {
    BipartiteOperator::new(d, entpow::haar_unitary(d * d, seed))
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn random_product_state(d: usize, seed: u64) -> PyResult<Vec<Complex64>> {
    entpow::random_product_state(d, seed)
        .map(|s| s.amplitudes().to_vec())
        .map_err(value_err)
}

#[pyfunction]
fn state_linear_entropy(a: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let a = entpow::CoefficientMatrix::new(matrix_from_rows(a)?).map_err(value_err)?;
    entpow::state_linear_entropy(&a).map_err(value_err)
}

#[pyfunction]
fn operator_entanglement(u: &PyOperator) -> PyResult<f64> {
    entpow::operator_entanglement(&u.inner).map_err(value_err)
}

#[pyfunction]
fn swapped_operator_entanglement(u: &PyOperator) -> PyResult<f64> {
    entpow::swapped_operator_entanglement(&u.inner).map_err(value_err)
}

#[pyfunction]
fn entangling_power(u: &PyOperator) -> PyResult<f64> {
    entpow::entangling_power(&u.inner).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (u, n_samples = 50_000, seed = 1))]
fn entangling_power_mc(
    py: Python<'_>,
    u: &PyOperator,
    n_samples: usize,
    seed: u64,
) -> PyResult<PyMcEstimate> {
    let inner = u.inner.clone();
    let est = py
        .detach(move || entpow::entangling_power_mc(&inner, n_samples, seed))
        .map_err(value_err)?;
    Ok(PyMcEstimate {
        mean: est.mean,
        stderr: est.stderr,
        n_samples: est.n_samples,
        seed: est.seed,
    })
}

#[pyfunction]
#[pyo3(signature = (u, tol = entpow::UNITARITY_TOL))]
fn entanglement_report(u: &PyOperator, tol: f64) -> PyReport {
    let r = entpow::entanglement_report_with_tol(&u.inner, tol);
    PyReport {
        d: r.d,
        e_op: r.e_op,
        e_op_swapped: r.e_op_swapped,
        e_op_swapped_right: r.e_op_swapped_right,
        e_swap: r.e_swap,
        e_power: r.e_power,
        unitarity_ok: r.unitarity_ok,
        unitarity_defect: r.unitarity_defect,
    }
}

/// Parses the JSON operator format; returns `(operator, name)`.
#[pyfunction]
fn parse_operator_file(content: &str) -> PyResult<(PyOperator, Option<String>)> {
    let (op, name) = cli::parse_operator_file(content.as_bytes()).map_err(value_err)?;
    Ok((op.into(), name))
}

#[pyfunction]
#[pyo3(signature = (u, name = None))]
fn serialize_operator(u: &PyOperator, name: Option<&str>) -> String {
    cli::serialize_operator(&u.inner, name)
}

#[pyfunction]
#[pyo3(signature = (family, d, start, end, steps, seed = 1))]
fn sweep_csv(
    family: &str,
    d: usize,
    start: f64,
    end: f64,
    steps: usize,
    seed: u64,
) -> PyResult<String> {
    let spec = SweepSpec {
        family: family.parse::<Family>().map_err(value_err)?,
        d,
        param_start: start,
        param_end: end,
        steps,
        seed,
    };
    cli::sweep_csv(&spec).map_err(value_err)
}

#[pymodule]
fn pyentpow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperator>()?;
    m.add_class::<PyMcEstimate>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(identity_op, m)?)?;
    m.add_function(wrap_pyfunction!(swap_op, m)?)?;
    m.add_function(wrap_pyfunction!(max_entangled_projector, m)?)?;
    m.add_function(wrap_pyfunction!(exp_swap, m)?)?;
    m.add_function(wrap_pyfunction!(controlled_u, m)?)?;
    m.add_function(wrap_pyfunction!(random_controlled_u, m)?)?;
    m.add_function(wrap_pyfunction!(haar_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(haar_operator, m)?)?;
    m.add_function(wrap_pyfunction!(random_product_state, m)?)?;
    m.add_function(wrap_pyfunction!(state_linear_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(operator_entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(swapped_operator_entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(entangling_power, m)?)?;
    m.add_function(wrap_pyfunction!(entangling_power_mc, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_report, m)?)?;
    m.add_function(wrap_pyfunction!(parse_operator_file, m)?)?;
    m.add_function(wrap_pyfunction!(serialize_operator, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    m.add("UNITARITY_TOL", entpow::UNITARITY_TOL)?;
    Ok(())
}
