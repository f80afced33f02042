//! Python bindings.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spinordual_core::bilinears as core_bilinears;
use spinordual_core::classify::{self, ClassLabel, ZeroPolicy};
use spinordual_core::clifford::CONVENTIONS;
use spinordual_core::duals;
use spinordual_core::error::Error;
use spinordual_core::fpk;
use spinordual_core::reconstruction;
use spinordual_core::representatives;
use spinordual_core::tensor::{Bivector, Vector4};

create_exception!(spinordual, FierzViolation, PyValueError);
create_exception!(spinordual, Infeasible, PyValueError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::FierzViolation { .. } => FierzViolation::new_err(e.to_string()),
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn four(values: Vec<Complex64>, what: &str) -> PyResult<Vector4> {
    if values.len() != 4 {
        return Err(PyValueError::new_err(format!("{what} needs 4 components, got {}", values.len())));
    }
    Ok(Vector4::from_column_slice(&values))
}

fn six(values: Vec<Complex64>, what: &str) -> PyResult<Bivector> {
    let arr: [Complex64; 6] = values
        .try_into()
        .map_err(|v: Vec<Complex64>| PyValueError::new_err(format!("{what} needs 6 components, got {}", v.len())))?;
    Ok(Bivector::new(arr))
}

fn policy(abs_floor: f64, rel_factor: f64) -> PyResult<ZeroPolicy> {
    ZeroPolicy::new(abs_floor, rel_factor).map_err(py_err)
}

fn label(s: &str) -> PyResult<ClassLabel> {
    s.parse().map_err(py_err)
}

/// A four-component Dirac spinor.
#[pyclass(module = "spinordual", name = "Spinor", frozen, from_py_object)]
#[derive(Clone)]
pub struct PySpinor(core_bilinears::Spinor);

#[pymethods]
impl PySpinor {
    #[new]
    fn new(components: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self(core_bilinears::Spinor::from_vector(four(components, "spinor")?)))
    }

    #[getter]
    fn components(&self) -> Vec<Complex64> {
        self.0.to_array().to_vec()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("Spinor({:?})", self.0.to_array())
    }
}

/// Coefficients `a, b, c, d, e` and structure `v, n, h` of a generalized dual.
#[pyclass(module = "spinordual", name = "DualCoefficients", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyDualCoefficients(duals::DualCoefficients);

#[pymethods]
impl PyDualCoefficients {
    #[new]
    #[pyo3(signature = (a=Complex64::new(1.0, 0.0), b=Complex64::new(0.0, 0.0), c=Complex64::new(0.0, 0.0), d=Complex64::new(0.0, 0.0), e=Complex64::new(0.0, 0.0), v=None, n=None, h=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        e: Complex64,
        v: Option<Vec<Complex64>>,
        n: Option<Vec<Complex64>>,
        h: Option<Vec<Complex64>>,
    ) -> PyResult<Self> {
        let v = v.map(|x| four(x, "v")).transpose()?.unwrap_or_else(Vector4::zeros);
        let n = n.map(|x| four(x, "n")).transpose()?.unwrap_or_else(Vector4::zeros);
        let h = h.map(|x| six(x, "h")).transpose()?.unwrap_or_default();
        Ok(Self(duals::DualCoefficients { a, b, c, d, e, v, n, h }))
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.0.b
    }

    #[getter]
    fn c(&self) -> Complex64 {
        self.0.c
    }

    #[getter]
    fn d(&self) -> Complex64 {
        self.0.d
    }

    #[getter]
    fn e(&self) -> Complex64 {
        self.0.e
    }

    #[getter]
    fn v(&self) -> Vec<Complex64> {
        self.0.v.iter().copied().collect()
    }

    #[getter]
    fn n(&self) -> Vec<Complex64> {
        self.0.n.iter().copied().collect()
    }

    #[getter]
    fn h(&self) -> Vec<Complex64> {
        self.0.h.components().to_vec()
    }

    #[pyo3(signature = (tol=1e-12))]
    fn is_real(&self, tol: f64) -> bool {
        self.0.is_real(tol)
    }

    /// Residuals of the unit-square constraint and the detected branch.
    fn unit_constraint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = duals::unit_constraint(&self.0);
        let out = PyDict::new(py);
        out.set_item("residuals", r.residuals.to_vec())?;
        out.set_item("non_scalar_residual", r.non_scalar_residual)?;
        out.set_item("branch", r.branch.as_str())?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        let k = &self.0;
        format!("DualCoefficients(a={}, b={}, c={}, d={}, e={})", k.a, k.b, k.c, k.d, k.e)
    }
}

/// Scalar, pseudoscalar, vector, axial vector and bivector bilinears.
#[pyclass(module = "spinordual", name = "BilinearSet", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyBilinearSet(core_bilinears::BilinearSet);

#[pymethods]
impl PyBilinearSet {
    #[new]
    fn new(phi: Complex64, theta: Complex64, u: Vec<Complex64>, s: Vec<Complex64>, m: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self(core_bilinears::BilinearSet {
            phi,
            theta,
            u: four(u, "U")?,
            s: four(s, "S")?,
            m: six(m, "M")?,
        }))
    }

    #[getter]
    fn phi(&self) -> Complex64 {
        self.0.phi
    }

    #[getter]
    fn theta(&self) -> Complex64 {
        self.0.theta
    }

    #[getter]
    fn u(&self) -> Vec<Complex64> {
        self.0.u.iter().copied().collect()
    }

    #[getter]
    fn s(&self) -> Vec<Complex64> {
        self.0.s.iter().copied().collect()
    }

    /// Lower-index components in the order 01, 02, 03, 12, 23, 31.
    #[getter]
    fn m(&self) -> Vec<Complex64> {
        self.0.m.components().to_vec()
    }

    #[getter]
    fn sigma(&self) -> Vec<Complex64> {
        self.0.sigma().components().to_vec()
    }

    fn components(&self) -> Vec<Complex64> {
        self.0.components().to_vec()
    }

    fn max_deviation(&self, other: &PyBilinearSet) -> f64 {
        self.0.max_deviation(&other.0)
    }

    #[pyo3(signature = (tol=1e-12))]
    fn is_real(&self, tol: f64) -> bool {
        self.0.is_real(tol)
    }

    fn __repr__(&self) -> String {
        format!("BilinearSet(phi={}, theta={})", self.0.phi, self.0.theta)
    }
}

#[pyfunction]
fn dirac_bilinears(psi: &PySpinor) -> PyBilinearSet {
    PyBilinearSet(core_bilinears::dirac_bilinears(&psi.0))
}

/// Bilinears under the dual built from `dual`, evaluated from first principles.
#[pyfunction]
fn bilinears(psi: &PySpinor, dual: &PyDualCoefficients) -> PyBilinearSet {
    PyBilinearSet(core_bilinears::bilinears(&psi.0, &dual.0.to_multivector()))
}

/// Closed-form bilinears of a generalized dual from the Dirac ones.
#[pyfunction]
fn transformed_bilinears(dirac: &PyBilinearSet, dual: &PyDualCoefficients) -> PyResult<PyBilinearSet> {
    core_bilinears::transformed_bilinears(&dirac.0, &dual.0).map(PyBilinearSet).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (b, tol=1e-10))]
fn check_fpk<'py>(py: Python<'py>, b: &PyBilinearSet, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = fpk::check_fpk(&b.0, tol);
    let residuals = PyDict::new(py);
    for (id, r) in &report.residuals {
        residuals.set_item(id.name(), r)?;
    }
    let out = PyDict::new(py);
    out.set_item("passes", report.passes)?;
    out.set_item("max_residual", report.max_residual)?;
    out.set_item("tol", report.tol)?;
    out.set_item("worst", report.worst().0.name())?;
    out.set_item("residuals", residuals)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (b, abs_floor=1e-9, rel_factor=1e-9))]
fn lounesto_class(b: &PyBilinearSet, abs_floor: f64, rel_factor: f64) -> PyResult<Option<&'static str>> {
    Ok(classify::lounesto_class(&b.0, &policy(abs_floor, rel_factor)?).map(|l| l.as_str()))
}

#[pyfunction]
#[pyo3(signature = (b, abs_floor=1e-9, rel_factor=1e-9))]
fn extended_class(b: &PyBilinearSet, abs_floor: f64, rel_factor: f64) -> PyResult<Option<&'static str>> {
    Ok(classify::extended_class(&b.0, &policy(abs_floor, rel_factor)?).map(|l| l.as_str()))
}

/// Zero flags for `(Phi, Theta, U, S, M)`.
#[pyfunction]
#[pyo3(signature = (b, abs_floor=1e-9, rel_factor=1e-9))]
fn zero_pattern(b: &PyBilinearSet, abs_floor: f64, rel_factor: f64) -> PyResult<[bool; 5]> {
    Ok(classify::zero_pattern(&b.0, &policy(abs_floor, rel_factor)?).flags())
}

#[pyfunction]
fn seed_spinor(class_label: &str) -> PyResult<PySpinor> {
    representatives::seed_spinor(label(class_label)?).map(PySpinor).map_err(py_err)
}

/// Returns `(seed, dual, notes)` or raises `Infeasible`.
#[pyfunction]
#[pyo3(signature = (target, seed=representatives::DEFAULT_SEARCH_SEED))]
fn representative(target: &str, seed: u64) -> PyResult<(PySpinor, PyDualCoefficients, String)> {
    let options = representatives::SearchOptions { seed, ..Default::default() };
    match representatives::representative_with(label(target)?, &options) {
        Ok(r) => Ok((PySpinor(r.seed), PyDualCoefficients(r.dual), r.notes)),
        Err(inf) => Err(Infeasible::new_err(inf.to_string())),
    }
}

#[pyfunction]
fn invert(b: &PyBilinearSet) -> PyResult<PySpinor> {
    reconstruction::invert(&b.0).map(PySpinor).map_err(py_err)
}

#[pyfunction]
fn majorana_dual(alpha: f64, v: [f64; 4], n: [f64; 4]) -> PyResult<PyDualCoefficients> {
    duals::majorana_dual(alpha, v, n).map(PyDualCoefficients).map_err(py_err)
}

#[pyfunction]
fn omega(a: Complex64, b: Complex64, phi: Complex64, theta: Complex64) -> PyResult<Complex64> {
    duals::omega(a, b, phi, theta).map_err(py_err)
}

#[pyfunction]
fn conventions_fingerprint() -> String {
    CONVENTIONS.fingerprint()
}

#[pymodule]
fn spinordual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpinor>()?;
    m.add_class::<PyDualCoefficients>()?;
    m.add_class::<PyBilinearSet>()?;
    m.add("FierzViolation", m.py().get_type::<FierzViolation>())?;
    m.add("Infeasible", m.py().get_type::<Infeasible>())?;
    m.add_function(wrap_pyfunction!(dirac_bilinears, m)?)?;
    m.add_function(wrap_pyfunction!(bilinears, m)?)?;
    m.add_function(wrap_pyfunction!(transformed_bilinears, m)?)?;
    m.add_function(wrap_pyfunction!(check_fpk, m)?)?;
    m.add_function(wrap_pyfunction!(lounesto_class, m)?)?;
    m.add_function(wrap_pyfunction!(extended_class, m)?)?;
    m.add_function(wrap_pyfunction!(zero_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(seed_spinor, m)?)?;
    m.add_function(wrap_pyfunction!(representative, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(majorana_dual, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(conventions_fingerprint, m)?)?;
    Ok(())
}
