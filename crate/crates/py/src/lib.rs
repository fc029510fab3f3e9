//! Python bindings. Structured results come back as plain dicts built from
//! the same serde records the CLI writes.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use hecke_core::afe::{fe_residual_with, zeta_d0_oracle, AfeConfig, AfeEngine, DEFAULT_AFE_B};
use hecke_core::analytic::{t_of, Smoothing, SmoothingConfig};
use hecke_core::gauss::{self, GaussInt};
use hecke_core::hecke::{coeff_table, delta_coeff, CoeffMap};
use hecke_core::kloosterman::{
    kloosterman_direct, poisson_verify as poisson_core, ramanujan_eval, weil_bound as weil_core, KloostermanQuery,
    PoissonVariant, TestFunction,
};
use hecke_core::moment::{annulus_signs, lemma17_identity, run_moment_threads, MomentExperiment};
use hecke_core::suite;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips a serde record through Python's `json` module.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "GaussInt", module = "hecke_lab", eq, hash, frozen, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyGaussInt(GaussInt);

#[pymethods]
impl PyGaussInt {
    #[new]
    fn new(re: i64, im: i64) -> Self {
        PyGaussInt(GaussInt::new(re, im))
    }

    #[getter]
    fn re(&self) -> i64 {
        self.0.re
    }

    #[getter]
    fn im(&self) -> i64 {
        self.0.im
    }

    fn norm(&self) -> u64 {
        self.0.norm()
    }

    fn conj(&self) -> Self {
        PyGaussInt(self.0.conj())
    }

    /// The associate with `re > 0, im >= 0`.
    fn canonical(&self) -> Self {
        PyGaussInt(self.0.canonical())
    }

    fn __add__(&self, o: &Self) -> Self {
        PyGaussInt(self.0 + o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyGaussInt(self.0 - o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyGaussInt(self.0 * o.0)
    }

    fn __complex__(&self) -> Complex64 {
        self.0.to_complex()
    }

    fn __repr__(&self) -> String {
        format!("GaussInt({}, {})", self.0.re, self.0.im)
    }
}

#[pyfunction]
fn gcd(a: PyGaussInt, b: PyGaussInt) -> PyResult<PyGaussInt> {
    gauss::gcd(a.0, b.0).map(PyGaussInt).map_err(value_err)
}

#[pyfunction]
fn inv_mod(a: PyGaussInt, m: PyGaussInt) -> PyResult<PyGaussInt> {
    gauss::inv_mod(a.0, m.0).map(PyGaussInt).map_err(value_err)
}

/// `(unit, [(prime, exponent), ..])`.
#[pyfunction]
fn factorize(a: PyGaussInt) -> PyResult<(PyGaussInt, Vec<(PyGaussInt, u32)>)> {
    let f = gauss::factorize(a.0).map_err(value_err)?;
    Ok((PyGaussInt(f.unit), f.factors.into_iter().map(|(p, e)| (PyGaussInt(p), e)).collect()))
}

#[pyfunction]
fn hecke_coefficient(d: i64, n: u64) -> PyResult<f64> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    Ok(delta_coeff(d, n))
}

/// `[delta(d, 1), .., delta(d, n)]`.
#[pyfunction]
fn hecke_coefficients(d: i64, n: u64) -> PyResult<Vec<f64>> {
    Ok(coeff_table(d, n).map_err(value_err)?.values[1..].to_vec())
}

#[pyfunction]
fn gamma_factor(d: i64, s: Complex64) -> PyResult<Complex64> {
    hecke_core::analytic::x_d(d, s).map_err(value_err)
}

#[pyfunction]
fn conductor(d: i64, t: f64) -> f64 {
    t_of(d, t)
}

fn engine(k: usize, b: f64) -> PyResult<AfeEngine> {
    AfeEngine::new(AfeConfig { k, smoothing: SmoothingConfig::with_b(b), ..AfeConfig::default() }).map_err(value_err)
}

/// `zeta(s, lambda^d)` with its calibrated error estimate and split.
#[pyfunction]
#[pyo3(signature = (d, s, k = 4, b = DEFAULT_AFE_B))]
fn zeta_eval<'py>(py: Python<'py>, d: i64, s: Complex64, k: usize, b: f64) -> PyResult<Bound<'py, PyDict>> {
    let v = engine(k, b)?.eval(d, s).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("value", v.value)?;
    out.set_item("err_estimate", v.err_estimate)?;
    out.set_item("t_cond", v.t_cond)?;
    out.set_item("x", v.x)?;
    out.set_item("y", v.y)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (d, s, k = 4, b = DEFAULT_AFE_B))]
fn fe_residual(d: i64, s: Complex64, k: usize, b: f64) -> PyResult<f64> {
    fe_residual_with(&engine(k, b)?, d, s).map_err(value_err)
}

/// `zeta(s) L(s, chi_4)` by accelerated alternating series.
#[pyfunction]
fn zeta_oracle(s: Complex64) -> PyResult<Complex64> {
    zeta_d0_oracle(s).map_err(value_err)
}

#[pyclass(name = "Smoothing", module = "hecke_lab", frozen)]
struct PySmoothing(Smoothing);

#[pymethods]
impl PySmoothing {
    #[new]
    #[pyo3(signature = (b = std::f64::consts::SQRT_2, eta = std::f64::consts::LN_2 / 3.0))]
    fn new(b: f64, eta: f64) -> PyResult<Self> {
        let cfg = SmoothingConfig { b, eta, ..SmoothingConfig::default() };
        Smoothing::new(cfg).map(PySmoothing).map_err(value_err)
    }

    fn rho(&self, u: f64) -> PyResult<f64> {
        if !(u > 0.0) {
            return Err(value_err("u must be positive"));
        }
        Ok(self.0.rho(u))
    }

    fn rho_k(&self, k: usize, u: f64) -> PyResult<f64> {
        self.0.rho_k(k, u).map_err(value_err)
    }

    fn mellin(&self, z: Complex64) -> PyResult<Complex64> {
        self.0.mellin_r(z).map_err(value_err)
    }

    #[pyo3(signature = (u, c = 0.5))]
    fn mellin_inversion(&self, u: f64, c: f64) -> PyResult<f64> {
        self.0.mellin_inversion(u, c).map_err(value_err)
    }

    fn w(&self, u: f64) -> f64 {
        self.0.w_eta_family().w(u)
    }

    fn upsilon(&self, u: f64) -> f64 {
        self.0.w_eta_family().upsilon(u)
    }
}

/// `S(alpha, beta; gamma)`; the Ramanujan route needs `gamma | beta`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, gamma, method = "direct"))]
fn kloosterman(alpha: PyGaussInt, beta: PyGaussInt, gamma: PyGaussInt, method: &str) -> PyResult<f64> {
    let q = KloostermanQuery { alpha: alpha.0, beta: beta.0, gamma: gamma.0 };
    match method {
        "direct" => Ok(kloosterman_direct(q).map_err(value_err)?.value),
        "ramanujan" if q.beta.divisible_by(q.gamma) => Ok(ramanujan_eval(q.alpha, q.gamma).map_err(value_err)?.value),
        "ramanujan" => Err(value_err("the Ramanujan route needs gamma | beta")),
        other => Err(value_err(format!("unknown method {other:?}"))),
    }
}

#[pyfunction]
fn weil_bound(alpha: PyGaussInt, beta: PyGaussInt, gamma: PyGaussInt) -> PyResult<f64> {
    weil_core(KloostermanQuery { alpha: alpha.0, beta: beta.0, gamma: gamma.0 }).map_err(value_err)
}

/// Both sides of a Poisson identity for the Gaussian of width `sigma`.
#[pyfunction]
#[pyo3(signature = (variant, sigma = 1.0, tau = Complex64::new(0.0, 0.0), alpha = PyGaussInt(GaussInt::new(0, 0)), gamma = PyGaussInt(GaussInt::new(1, 1))))]
fn poisson_verify<'py>(
    py: Python<'py>,
    variant: &str,
    sigma: f64,
    tau: Complex64,
    alpha: PyGaussInt,
    gamma: PyGaussInt,
) -> PyResult<Bound<'py, PyDict>> {
    let v = match variant {
        "plain" => PoissonVariant::Twisted { tau_re: tau.re, tau_im: tau.im },
        "progression" => PoissonVariant::Progression { alpha: alpha.0, gamma: gamma.0 },
        "kloosterman" => PoissonVariant::Kloosterman { alpha: alpha.0, gamma: gamma.0 },
        other => return Err(value_err(format!("unknown variant {other:?}"))),
    };
    let c = poisson_core(&TestFunction::Gaussian { sigma0: sigma }, v).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("lhs", c.lhs)?;
    out.set_item("rhs", c.rhs)?;
    out.set_item("abs_err", c.abs_err)?;
    Ok(out)
}

fn coeff_map(entries: Vec<(i64, i64, Complex64)>) -> PyResult<CoeffMap> {
    let bound = entries.iter().map(|&(a, b, _)| GaussInt::new(a, b).norm()).max().unwrap_or(1).max(1);
    let mut m = CoeffMap::new(bound);
    for (a, b, v) in entries {
        m.insert(GaussInt::new(a, b), v).map_err(value_err)?;
    }
    Ok(m)
}

/// `E(D; M, A)`; `coeffs` is a list of `(re, im, value)` and defaults to `A = U`.
#[pyfunction]
#[pyo3(signature = (d, m = 1.0, coeffs = None, k = 4, step = None, threads = 1))]
fn run_moment<'py>(
    py: Python<'py>,
    d: f64,
    m: f64,
    coeffs: Option<Vec<(i64, i64, Complex64)>>,
    k: usize,
    step: Option<f64>,
    threads: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut exp = MomentExperiment::unit(d, m);
    if let Some(c) = coeffs {
        exp.a = coeff_map(c)?;
    }
    exp.afe.k = k;
    if let Some(s) = step {
        exp.quad.step = s;
    }
    let r = run_moment_threads(&exp, threads).map_err(value_err)?;
    to_py(py, &r)
}

/// Both sides of the smoothed large-sieve identity for random annulus signs.
#[pyfunction]
#[pyo3(signature = (d = 8.0, x = 8.0, q = 0.5, seed = 0))]
fn lemma17_check<'py>(py: Python<'py>, d: f64, x: f64, q: f64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = lemma17_identity(d, x, &annulus_signs(x, seed), q, &SmoothingConfig::default()).map_err(value_err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn verify_all(py: Python<'_>, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &suite::verify_all(seed))
}

#[pymodule]
fn hecke_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussInt>()?;
    m.add_class::<PySmoothing>()?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(inv_mod, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_factor, m)?)?;
    m.add_function(wrap_pyfunction!(conductor, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_eval, m)?)?;
    m.add_function(wrap_pyfunction!(fe_residual, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(kloosterman, m)?)?;
    m.add_function(wrap_pyfunction!(weil_bound, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_moment, m)?)?;
    m.add_function(wrap_pyfunction!(lemma17_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
