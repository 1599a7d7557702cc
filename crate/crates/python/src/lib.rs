//! Python bindings: estimators, correction factors, special functions and
//! the simulation studies. Errors surface as `ValueError`.

use madkit::distributions::{DistributionSpec, RngStream};
use madkit::mad::{self as factors, FactorModel, PredictionCoefficients};
use madkit::quantiles::{self, HdiOutcome, MedianEstimatorKind, Sample};
use madkit::simulate::{self, SimulationConfig};
use madkit::specfun::{self, BetaParams, Probability};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: madkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(name: &str) -> PyResult<MedianEstimatorKind> {
    name.parse().map_err(err)
}

fn kinds(names: Option<Vec<String>>) -> PyResult<Vec<MedianEstimatorKind>> {
    match names {
        None => Ok(MedianEstimatorKind::CANONICAL.to_vec()),
        Some(names) => names.iter().map(|n| kind(n)).collect(),
    }
}

fn factor_model(name: &str, alpha: Option<f64>, beta: Option<f64>) -> PyResult<FactorModel> {
    match (alpha, beta) {
        (Some(alpha), Some(beta)) => {
            Ok(FactorModel::Fitted(PredictionCoefficients { alpha, beta }))
        }
        (None, None) => FactorModel::from_name(name).map_err(err),
        _ => Err(PyValueError::new_err(
            "alpha and beta must be given together",
        )),
    }
}

fn sample(values: Vec<f64>) -> PyResult<Sample> {
    Sample::new(values).map_err(err)
}

fn prob(p: f64) -> PyResult<Probability> {
    Probability::new(p).map_err(err)
}

fn config(
    sizes: Vec<usize>,
    reps: usize,
    seed: u64,
    estimators: Option<Vec<String>>,
    chunk_size: usize,
) -> PyResult<SimulationConfig> {
    Ok(SimulationConfig::new(sizes, reps, seed)
        .with_estimators(kinds(estimators)?)
        .with_chunk_size(chunk_size))
}

fn run<T: Send>(
    py: Python<'_>,
    threads: Option<usize>,
    f: impl FnOnce() -> madkit::Result<T> + Send,
) -> PyResult<T> {
    py.detach(|| simulate::with_threads(threads, f))
        .and_then(|r| r)
        .map_err(err)
}

/// Uncorrected and corrected MAD of one sample.
#[pyclass(name = "MadValue", frozen, get_all)]
struct PyMadValue {
    uncorrected: f64,
    corrected: f64,
    factor: f64,
    n: usize,
    estimator: String,
}

#[pymethods]
impl PyMadValue {
    fn __repr__(&self) -> String {
        format!(
            "MadValue(n={}, estimator='{}', uncorrected={}, factor={}, corrected={})",
            self.n, self.estimator, self.uncorrected, self.factor, self.corrected
        )
    }
}

#[pyfunction]
#[pyo3(signature = (values, estimator = "thd-sqrt", model = "recommended", alpha = None, beta = None))]
fn mad(
    values: Vec<f64>,
    estimator: &str,
    model: &str,
    alpha: Option<f64>,
    beta: Option<f64>,
) -> PyResult<PyMadValue> {
    let v = factors::mad_corrected(
        &sample(values)?,
        kind(estimator)?,
        &factor_model(model, alpha, beta)?,
    )
    .map_err(err)?;
    Ok(PyMadValue {
        uncorrected: v.uncorrected,
        corrected: v.corrected,
        factor: v.factor,
        n: v.n,
        estimator: v.estimator.to_string(),
    })
}

#[pyfunction]
#[pyo3(signature = (values, estimator = "thd-sqrt"))]
fn mad_uncorrected(values: Vec<f64>, estimator: &str) -> PyResult<f64> {
    factors::mad_uncorrected(&sample(values)?, kind(estimator)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, estimator = "thd-sqrt", model = "recommended", alpha = None, beta = None))]
fn correction_factor(
    n: usize,
    estimator: &str,
    model: &str,
    alpha: Option<f64>,
    beta: Option<f64>,
) -> PyResult<f64> {
    factors::correction_factor(n, kind(estimator)?, &factor_model(model, alpha, beta)?).map_err(err)
}

#[pyfunction]
fn asymptotic_factor() -> f64 {
    factors::asymptotic_factor()
}

#[pyfunction]
fn factor_tables_csv() -> String {
    factors::factor_tables_csv()
}

#[pyfunction]
#[pyo3(signature = (values, p, estimator = "hd"))]
fn quantile(values: Vec<f64>, p: f64, estimator: &str) -> PyResult<f64> {
    quantiles::quantile(&sample(values)?, prob(p)?, kind(estimator)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (values, estimator = "thd-sqrt"))]
fn median(values: Vec<f64>, estimator: &str) -> PyResult<f64> {
    quantiles::median(&sample(values)?, kind(estimator)?).map_err(err)
}

#[pyfunction]
fn hd_weights(n: usize, p: f64) -> PyResult<Vec<f64>> {
    Ok(quantiles::hd_weights(n, prob(p)?)
        .map_err(err)?
        .weights()
        .to_vec())
}

/// Trimmed Harrell-Davis weights; `width` defaults to `1/sqrt(n)`.
#[pyfunction]
#[pyo3(signature = (n, p, width = None))]
fn thd_weights(n: usize, p: f64, width: Option<f64>) -> PyResult<Vec<f64>> {
    let width = width.unwrap_or(1.0 / (n as f64).sqrt());
    Ok(quantiles::thd_weights(n, prob(p)?, width)
        .map_err(err)?
        .weights()
        .to_vec())
}

/// `(left, right)` of the highest density interval, or `None` when both
/// shapes are at most 1.
#[pyfunction]
fn beta_hdi(alpha: f64, beta: f64, width: f64) -> PyResult<Option<(f64, f64)>> {
    let params = BetaParams::new(alpha, beta).map_err(err)?;
    Ok(match quantiles::beta_hdi(params, width).map_err(err)? {
        HdiOutcome::Interval(h) => Some((h.left, h.right)),
        HdiOutcome::Degenerate => None,
    })
}

#[pyfunction]
fn reg_inc_beta(x: f64, alpha: f64, beta: f64) -> PyResult<f64> {
    let params = BetaParams::new(alpha, beta).map_err(err)?;
    Ok(specfun::reg_inc_beta(x, params).map_err(err)?.value())
}

#[pyfunction]
fn normal_cdf(x: f64) -> f64 {
    specfun::normal_cdf(x).value()
}

#[pyfunction]
fn normal_quantile(p: f64) -> PyResult<f64> {
    specfun::normal_quantile(prob(p)?).map_err(err)
}

/// `n` draws from a spec such as `"lognormal(mlog=0,sdlog=2)"`.
#[pyfunction]
#[pyo3(signature = (spec, n, seed, stream = 0))]
fn draw(spec: &str, n: usize, seed: u64, stream: u64) -> PyResult<Vec<f64>> {
    let spec: DistributionSpec = spec.parse().map_err(err)?;
    let sampler = spec.sampler().map_err(err)?;
    if n == 0 {
        return Err(err(madkit::Error::EmptySample));
    }
    let mut out = Vec::with_capacity(n);
    sampler.fill(&mut out, n, &mut RngStream::new(seed, stream));
    Ok(out)
}

#[pyfunction]
fn sensitivity_distributions() -> Vec<String> {
    DistributionSpec::sensitivity_set()
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[pyfunction]
#[pyo3(signature = (sizes, reps, seed, estimators = None, chunk_size = 1000, threads = None))]
fn estimate_factors<'py>(
    py: Python<'py>,
    sizes: Vec<usize>,
    reps: usize,
    seed: u64,
    estimators: Option<Vec<String>>,
    chunk_size: usize,
    threads: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = config(sizes, reps, seed, estimators, chunk_size)?;
    let report = run(py, threads, || simulate::estimate_factors(&cfg))?;
    report
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("estimator", r.estimator.to_string())?;
            d.set_item("m_n", r.m_n)?;
            d.set_item("c_n", r.c_n)?;
            d.set_item("std_error", r.std_error)?;
            d.set_item("repetitions", r.repetitions)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (sizes, reps, seed, estimators = None, chunk_size = 1000, threads = None))]
fn efficiency<'py>(
    py: Python<'py>,
    sizes: Vec<usize>,
    reps: usize,
    seed: u64,
    estimators: Option<Vec<String>>,
    chunk_size: usize,
    threads: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = config(sizes, reps, seed, estimators, chunk_size)?;
    let report = run(py, threads, || simulate::efficiency(&cfg))?;
    report
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("var_sm", r.var_sm)?;
            d.set_item("var_hd", r.var_hd)?;
            d.set_item("var_thd", r.var_thd)?;
            d.set_item("e_hd", r.e_hd)?;
            d.set_item("e_thd", r.e_thd)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (distributions, sizes, reps, seed, estimators = None, chunk_size = 1000, threads = None))]
#[allow(clippy::too_many_arguments)]
fn sensitivity<'py>(
    py: Python<'py>,
    distributions: Vec<String>,
    sizes: Vec<usize>,
    reps: usize,
    seed: u64,
    estimators: Option<Vec<String>>,
    chunk_size: usize,
    threads: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let dists = distributions
        .iter()
        .map(|s| s.parse::<DistributionSpec>().map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    let cfg = config(sizes, reps, seed, estimators, chunk_size)?.with_distributions(dists);
    let report = run(py, threads, || simulate::sensitivity(&cfg))?;
    report
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("distribution", r.distribution.to_string())?;
            d.set_item("n", r.n)?;
            d.set_item("estimator", r.estimator.to_string())?;
            d.set_item("aggregator", r.aggregator.name())?;
            d.set_item("dispersion", r.dispersion)?;
            Ok(d)
        })
        .collect()
}

/// Fits the prediction equation to the embedded table of `estimator`, or
/// to explicit `(n, c_n)` points when given.
#[pyfunction]
#[pyo3(signature = (estimator = "sm", low = 100, high = 500, points = None))]
fn fit_prediction<'py>(
    py: Python<'py>,
    estimator: &str,
    low: usize,
    high: usize,
    points: Option<Vec<(usize, f64)>>,
) -> PyResult<Bound<'py, PyDict>> {
    let fit = match points {
        Some(points) => simulate::fit_prediction(estimator, &points, (low, high)),
        None => simulate::fit_published(kind(estimator)?, (low, high)),
    }
    .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("estimator", fit.estimator)?;
    d.set_item("alpha", fit.alpha)?;
    d.set_item("beta", fit.beta)?;
    d.set_item("residual_max", fit.residual_max)?;
    d.set_item("n_low", fit.n_low)?;
    d.set_item("n_high", fit.n_high)?;
    Ok(d)
}

#[pymodule]
fn madkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMadValue>()?;
    m.add_function(wrap_pyfunction!(mad, m)?)?;
    m.add_function(wrap_pyfunction!(mad_uncorrected, m)?)?;
    m.add_function(wrap_pyfunction!(correction_factor, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_factor, m)?)?;
    m.add_function(wrap_pyfunction!(factor_tables_csv, m)?)?;
    m.add_function(wrap_pyfunction!(quantile, m)?)?;
    m.add_function(wrap_pyfunction!(median, m)?)?;
    m.add_function(wrap_pyfunction!(hd_weights, m)?)?;
    m.add_function(wrap_pyfunction!(thd_weights, m)?)?;
    m.add_function(wrap_pyfunction!(beta_hdi, m)?)?;
    m.add_function(wrap_pyfunction!(reg_inc_beta, m)?)?;
    m.add_function(wrap_pyfunction!(normal_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(normal_quantile, m)?)?;
    m.add_function(wrap_pyfunction!(draw, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity_distributions, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_factors, m)?)?;
    m.add_function(wrap_pyfunction!(efficiency, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity, m)?)?;
    m.add_function(wrap_pyfunction!(fit_prediction, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
