//! Python bindings for `ptl-core`.
//!
//! Scalars map to Python `int`. Structured results (traces, scan reports,
//! solution sets) come back as plain `dict`/`list` trees with the same shape
//! as the CLI's JSON `result` member.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyOverflowError, PyValueError};
use pyo3::prelude::*;

use ptl_core::arith;
use ptl_core::diophantine::{self, CubeCoeff, MordellCurve, QuadSign};
use ptl_core::engine::{self, ScanOptions};
use ptl_core::{powerful, verify, Error};

create_exception!(ptl, CrossCheckError, PyException);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::RangeOverflow { .. } => PyOverflowError::new_err(e.to_string()),
        Error::CrossCheck(_) => CrossCheckError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, text: String) -> PyResult<Py<PyAny>> {
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

macro_rules! to_py {
    ($py:expr, $value:expr) => {
        json_to_py($py, serde_json::to_string(&$value).expect("result types serialize"))
    };
}

/// Prime factorization of a nonzero integer.
#[pyclass(frozen, module = "ptl")]
struct Factorization {
    #[pyo3(get)]
    sign: i8,
    #[pyo3(get)]
    factors: Vec<(i128, u32)>,
}

#[pymethods]
impl Factorization {
    fn value(&self) -> i128 {
        self.factors.iter().fold(self.sign as i128, |acc, &(p, e)| acc * p.pow(e))
    }

    fn __repr__(&self) -> String {
        format!("Factorization(sign={}, factors={:?})", self.sign, self.factors)
    }
}

/// `n = a²·b³` with `b` squarefree.
#[pyclass(frozen, module = "ptl")]
struct PowerfulDecomposition {
    #[pyo3(get)]
    n: i128,
    #[pyo3(get)]
    a: i128,
    #[pyo3(get)]
    b: i128,
}

#[pymethods]
impl PowerfulDecomposition {
    fn __repr__(&self) -> String {
        format!("PowerfulDecomposition(n={}, a={}, b={})", self.n, self.a, self.b)
    }
}

#[pyfunction]
fn factor(n: i128) -> PyResult<Factorization> {
    let f = arith::factor(n).map_err(to_py_err)?;
    Ok(Factorization { sign: f.sign(), factors: f.iter().map(|pp| (pp.prime, pp.exp)).collect() })
}

#[pyfunction]
fn is_prime(n: i128) -> bool {
    arith::is_prime(n)
}

#[pyfunction]
fn is_powerful(n: i128) -> bool {
    powerful::is_powerful(n)
}

#[pyfunction]
fn decompose_powerful(n: i128) -> PyResult<PowerfulDecomposition> {
    let d = powerful::decompose_powerful(n).map_err(to_py_err)?;
    Ok(PowerfulDecomposition { n: d.n, a: d.a, b: d.b })
}

#[pyfunction]
fn powerful_up_to(py: Python<'_>, limit: u64) -> PyResult<Vec<u64>> {
    py.detach(|| powerful::powerful_up_to(limit)).map_err(to_py_err)
}

#[pyfunction]
fn consecutive_runs(py: Python<'_>, limit: u64, run_length: usize) -> PyResult<Vec<u64>> {
    py.detach(|| powerful::consecutive_runs(limit, run_length)).map_err(to_py_err)
}

/// Returns `(m, primes, a)` when `m = p²·a³`, else `None`.
#[pyfunction]
fn classify_p2a3(m: i128) -> PyResult<Option<(i128, Vec<i128>, i128)>> {
    let w = engine::classify_p2a3(m).map_err(to_py_err)?;
    Ok(w.map(|w| (w.m, w.primes, w.a)))
}

/// Returns `(m, primes, a)` when `m = p²·q²·a³`, else `None`.
#[pyfunction]
fn classify_p2q2a3(m: i128) -> PyResult<Option<(i128, Vec<i128>, i128)>> {
    let w = engine::classify_p2q2a3(m).map_err(to_py_err)?;
    Ok(w.map(|w| (w.m, w.primes, w.a)))
}

#[pyfunction]
fn split_shapes(py: Python<'_>, r: i128, s: i128, p: i128) -> PyResult<Py<PyAny>> {
    let shape = diophantine::split_shapes(r, s, p).map_err(to_py_err)?;
    to_py!(py, shape)
}

#[pyfunction]
#[pyo3(signature = (s, k, bound, assume_complete = false))]
fn solve_quad_cubic(py: Python<'_>, s: i64, k: i64, bound: i128, assume_complete: bool) -> PyResult<Py<PyAny>> {
    let sign = QuadSign::try_from(s).map_err(to_py_err)?;
    let coeff = CubeCoeff::try_from(k).map_err(to_py_err)?;
    let set = py.detach(|| diophantine::solve_quad_cubic(sign, coeff, bound, assume_complete)).map_err(to_py_err)?;
    to_py!(py, set)
}

/// Integer points `(x, y)` on `y² = x³ + k` with `|x| ≤ bound`.
#[pyfunction]
fn mordell_points(py: Python<'_>, k: i128, bound: i128) -> PyResult<Vec<(i128, i128)>> {
    let curve = MordellCurve::new(k).map_err(to_py_err)?;
    let points = py.detach(|| diophantine::mordell_points(curve, bound)).map_err(to_py_err)?;
    Ok(points.into_iter().map(|p| (p.x, p.y)).collect())
}

#[pyfunction]
fn cube_diff_solutions(d: i128) -> PyResult<Vec<(i128, i128)>> {
    diophantine::cube_diff_solutions(d).map_err(to_py_err)
}

#[pyfunction]
fn gcd_pair(x: i64) -> (i64, i64) {
    let g = engine::gcd_pair(x);
    (g.g_minus, g.g_plus)
}

#[pyfunction]
fn trace_case(py: Python<'_>, x: i64) -> PyResult<Py<PyAny>> {
    let trace = engine::trace_case(x).map_err(to_py_err)?;
    to_py!(py, trace)
}

#[pyfunction]
#[pyo3(signature = (x_lo, x_hi, jobs = 0))]
fn theorem_scan(py: Python<'_>, x_lo: i64, x_hi: i64, jobs: usize) -> PyResult<Py<PyAny>> {
    let opts = ScanOptions { jobs, ..ScanOptions::default() };
    let report = py.detach(|| engine::theorem_scan(x_lo, x_hi, &opts)).map_err(to_py_err)?;
    to_py!(py, report)
}

#[pyfunction]
#[pyo3(signature = (x_lo, x_hi, jobs = 0))]
fn corollary_scan(py: Python<'_>, x_lo: i64, x_hi: i64, jobs: usize) -> PyResult<Py<PyAny>> {
    let opts = ScanOptions { jobs, ..ScanOptions::default() };
    let report = py.detach(|| engine::corollary_scan(x_lo, x_hi, &opts)).map_err(to_py_err)?;
    to_py!(py, report)
}

#[pyfunction]
fn verify_lemmas(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let report = py.detach(verify::verify_lemmas);
    to_py!(py, report)
}

#[pymodule]
fn ptl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", ptl_core::VERSION)?;
    m.add("MAX_THEOREM_X", engine::MAX_THEOREM_X)?;
    m.add("MAX_COROLLARY_X", engine::MAX_COROLLARY_X)?;
    m.add("CrossCheckError", m.py().get_type::<CrossCheckError>())?;
    m.add_class::<Factorization>()?;
    m.add_class::<PowerfulDecomposition>()?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(is_powerful, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_powerful, m)?)?;
    m.add_function(wrap_pyfunction!(powerful_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(consecutive_runs, m)?)?;
    m.add_function(wrap_pyfunction!(classify_p2a3, m)?)?;
    m.add_function(wrap_pyfunction!(classify_p2q2a3, m)?)?;
    m.add_function(wrap_pyfunction!(split_shapes, m)?)?;
    m.add_function(wrap_pyfunction!(solve_quad_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(mordell_points, m)?)?;
    m.add_function(wrap_pyfunction!(cube_diff_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(gcd_pair, m)?)?;
    m.add_function(wrap_pyfunction!(trace_case, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_scan, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_scan, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas, m)?)?;
    Ok(())
}
