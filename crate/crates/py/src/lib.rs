//! Python bindings. Every function taking `alpha` accepts either a
//! `CfExpansion` or any string the CLI accepts (`"7/24"`, `"(-1+sqrt5)/2"`,
//! `"[0;3,period(1,2)]"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use threegap::metric::{self, SampleSpec};
use threegap::{oracle, predictor, quadratic, AlphaSource, CfExpansion};

pyo3::create_exception!(threegap_py, ThreegapError, PyValueError, "Domain error raised by the threegap core.");

/// Core errors, prefixed with the module that raised them.
fn domain(e: impl Into<threegap::Error>) -> PyErr {
    ThreegapError::new_err(e.into().to_string())
}

fn invalid(msg: impl std::fmt::Display) -> PyErr {
    ThreegapError::new_err(msg.to_string())
}

/// Continued-fraction expansion `[0; a_1, a_2, …]`.
#[pyclass(name = "CfExpansion", module = "threegap_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCf {
    inner: CfExpansion,
}

fn cf_of(obj: &Bound<'_, PyAny>) -> PyResult<CfExpansion> {
    if let Ok(cf) = obj.cast::<PyCf>() {
        return Ok(cf.get().inner.clone());
    }
    let text: String = obj.extract()?;
    parse(&text)
}

fn parse(text: &str) -> PyResult<CfExpansion> {
    let source: AlphaSource = text.parse().map_err(invalid)?;
    source.expansion().map_err(domain)
}

#[pymethods]
impl PyCf {
    #[new]
    fn new(alpha: &str) -> PyResult<Self> {
        Ok(PyCf { inner: parse(alpha)? })
    }

    /// Finite expansion from digits, or eventually periodic when `period` is given.
    #[staticmethod]
    #[pyo3(signature = (digits, period=None))]
    fn from_digits(digits: Vec<BigInt>, period: Option<Vec<BigInt>>) -> PyResult<Self> {
        let inner = match period {
            Some(p) => CfExpansion::periodic(digits, p),
            None => CfExpansion::finite(digits),
        }
        .map_err(domain)?;
        Ok(PyCf { inner })
    }

    #[staticmethod]
    fn from_rational(numerator: BigInt, denominator: BigInt) -> PyResult<Self> {
        let inner = threegap::cf_from_rational(&numerator, &denominator).map_err(domain)?;
        Ok(PyCf { inner })
    }

    #[getter]
    fn head(&self) -> Vec<BigInt> {
        self.inner.head().to_vec()
    }

    #[getter]
    fn period(&self) -> Option<Vec<BigInt>> {
        self.inner.period().map(<[BigInt]>::to_vec)
    }

    #[getter]
    fn preperiod_len(&self) -> usize {
        self.inner.preperiod_len()
    }

    #[getter]
    fn is_periodic(&self) -> bool {
        self.inner.is_periodic()
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    /// `a_m` for `m ≥ 1`, or `None` past the end of a finite expansion.
    fn digit(&self, m: usize) -> Option<BigInt> {
        self.inner.digit(m).cloned()
    }

    /// `[a_1, …, a_n]`.
    fn digits(&self, n: usize) -> PyResult<Vec<BigInt>> {
        self.inner.digits(1, n).map_err(domain)
    }

    /// Exact value of a finite expansion as a `Fraction`.
    fn value(&self) -> Option<BigRational> {
        self.inner.value()
    }

    /// `[(m, p_m, q_m)]` for `0 ≤ m ≤ n`.
    fn convergents(&self, n: usize) -> PyResult<Vec<(isize, BigInt, BigInt)>> {
        let cs = threegap::cf::convergents(&self.inner, n).map_err(domain)?;
        Ok(cs.into_iter().map(|c| (c.index, c.p, c.q)).collect())
    }

    /// `(p_{n,i}, q_{n,i})`.
    fn semiconvergent(&self, n: usize, i: BigInt) -> PyResult<(BigInt, BigInt)> {
        let c = threegap::cf::semiconvergent(&self.inner, n, &i).map_err(domain)?;
        Ok((c.p, c.q))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CfExpansion('{}')", self.inner)
    }
}

/// Gap lengths of the first N points, on a rational surrogate.
#[pyclass(name = "GapReport", module = "threegap_py", frozen, skip_from_py_object)]
struct PyGapReport {
    #[pyo3(get)]
    n_points: u64,
    /// `[(length, multiplicity)]`, lengths ascending.
    #[pyo3(get)]
    gaps: Vec<(BigRational, u64)>,
    /// `(p_m, q_m)` of the surrogate convergent.
    #[pyo3(get)]
    surrogate: (BigInt, BigInt),
    /// True when the surrogate is α itself.
    #[pyo3(get)]
    exact: bool,
    /// `u_1..u_N`: point indices in left-to-right order.
    #[pyo3(get)]
    permutation: Vec<u64>,
}

#[pymethods]
impl PyGapReport {
    #[getter]
    fn distinct_count(&self) -> usize {
        self.gaps.len()
    }

    #[getter]
    fn is_two_gap(&self) -> bool {
        self.gaps.len() == 2
    }

    fn __repr__(&self) -> String {
        let gaps: Vec<_> = self.gaps.iter().map(|(g, m)| format!("{g}×{m}")).collect();
        format!("GapReport(N={}, gaps=[{}])", self.n_points, gaps.join(", "))
    }
}

#[pyclass(name = "TwoGapPrediction", module = "threegap_py", frozen, skip_from_py_object)]
struct PyPrediction {
    #[pyo3(get)]
    n_points: u64,
    #[pyo3(get)]
    scenario: &'static str,
    #[pyo3(get)]
    index: usize,
    #[pyo3(get)]
    sub_index: Option<u64>,
    #[pyo3(get)]
    u2: Option<u64>,
    #[pyo3(get)]
    u_last: u64,
    #[pyo3(get)]
    is_two_gap: bool,
}

#[pymethods]
impl PyPrediction {
    fn __repr__(&self) -> String {
        let opt = |v: Option<u64>| v.map_or("None".to_string(), |v| v.to_string());
        let flag = if self.is_two_gap { "True" } else { "False" };
        format!(
            "TwoGapPrediction(N={}, scenario='{}', n={}, i={}, u2={}, uN={}, is_two_gap={flag})",
            self.n_points,
            self.scenario,
            self.index,
            opt(self.sub_index),
            opt(self.u2),
            self.u_last
        )
    }
}

/// Golden-ratio conjugate `(√5 − 1)/2`.
#[pyfunction]
fn golden() -> PyCf {
    PyCf {
        inner: AlphaSource::golden().expansion().expect("valid"),
    }
}

/// `√2 − 1`.
#[pyfunction]
fn silver() -> PyCf {
    PyCf {
        inner: AlphaSource::silver().expansion().expect("valid"),
    }
}

/// Expansion of `(P + √D)/Q`.
#[pyfunction]
fn expand_surd(p: BigInt, d: BigInt, q: BigInt) -> PyResult<PyCf> {
    let surd = quadratic::QuadraticSurd::new(p, d, q).map_err(domain)?;
    Ok(PyCf {
        inner: quadratic::expand_surd(&surd).map_err(domain)?,
    })
}

/// `(P, D, Q)` with `α = (P + √D)/Q` for a periodic expansion.
#[pyfunction]
fn surd_of(alpha: &Bound<'_, PyAny>) -> PyResult<(BigInt, BigInt, BigInt)> {
    let s = quadratic::QuadraticSurd::from_periodic(&cf_of(alpha)?).map_err(domain)?;
    Ok((s.p().clone(), s.d().clone(), s.q().clone()))
}

#[pyfunction]
#[pyo3(signature = (alpha, n, refine=0))]
fn gap_report(py: Python<'_>, alpha: &Bound<'_, PyAny>, n: u64, refine: usize) -> PyResult<PyGapReport> {
    let cf = cf_of(alpha)?;
    let analysis = py.detach(|| {
        oracle::surrogate_with_offset(&cf, n, refine).map(|s| oracle::analyze_with(s, n))
    });
    let analysis = analysis.map_err(domain)?;
    let r = analysis.report;
    Ok(PyGapReport {
        n_points: n,
        gaps: r.gaps.into_iter().map(|g| (g.length, g.multiplicity)).collect(),
        surrogate: (r.surrogate.convergent.p, r.surrogate.convergent.q),
        exact: r.surrogate.exact,
        permutation: analysis.permutation.u,
    })
}

#[pyfunction]
fn predict(alpha: &Bound<'_, PyAny>, n: u64) -> PyResult<PyPrediction> {
    let p = predictor::predict(&cf_of(alpha)?, n).map_err(domain)?;
    Ok(PyPrediction {
        n_points: p.n_points,
        scenario: p.scenario.as_str(),
        index: p.index,
        sub_index: p.sub_index,
        u2: p.u2,
        u_last: p.u_last,
        is_two_gap: p.is_two_gap,
    })
}

#[pyfunction]
fn two_gap_set(alpha: &Bound<'_, PyAny>, nmax: u64) -> PyResult<Vec<u64>> {
    predictor::two_gap_set(&cf_of(alpha)?, nmax).map_err(domain)
}

/// `[(N, count, ratio, upper_bound)]` with exact `Fraction`s.
#[pyfunction]
fn frequency_trace(
    alpha: &Bound<'_, PyAny>,
    checkpoints: Vec<u64>,
) -> PyResult<Vec<(u64, u64, BigRational, BigRational)>> {
    let trace = predictor::frequency_trace(&cf_of(alpha)?, &checkpoints).map_err(domain)?;
    Ok(trace
        .rows
        .into_iter()
        .map(|r| (r.n_points, r.count, r.ratio, r.upper_bound))
        .collect())
}

#[pyfunction]
fn frequency_upper_bound(alpha: &Bound<'_, PyAny>, n: u64) -> PyResult<BigRational> {
    predictor::frequency_upper_bound(&cf_of(alpha)?, n).map_err(domain)
}

/// `q_{n−1}` from the eigenvalue closed form.
#[pyfunction]
fn q_closed_form(alpha: &Bound<'_, PyAny>, n: usize) -> PyResult<BigInt> {
    quadratic::q_closed_form(&cf_of(alpha)?, n).map_err(domain)
}

#[pyfunction]
fn digit_sum_over_q(alpha: &Bound<'_, PyAny>, n: usize) -> PyResult<BigRational> {
    quadratic::digit_sum_over_q(&cf_of(alpha)?, n).map_err(domain)
}

#[pyfunction]
fn levy_statistic(alpha: &Bound<'_, PyAny>, n: usize) -> PyResult<f64> {
    metric::levy_statistic(&cf_of(alpha)?, n).map_err(domain)
}

/// Random α as digit prefixes that carry at least `max_index` digits.
#[pyfunction]
#[pyo3(signature = (seed, count, precision_bits=256, max_index=25))]
fn sample_alpha(py: Python<'_>, seed: u64, count: usize, precision_bits: u32, max_index: usize) -> PyResult<Vec<PyCf>> {
    let spec = SampleSpec {
        seed,
        count,
        precision_bits,
        max_index,
    };
    let set = py.detach(|| metric::sample_alpha(&spec)).map_err(domain)?;
    Ok(set.samples.into_iter().map(|inner| PyCf { inner }).collect())
}

fn samples_of(samples: &[Bound<'_, PyCf>]) -> Vec<CfExpansion> {
    samples.iter().map(|s| s.get().inner.clone()).collect()
}

fn report_dict<'py>(py: Python<'py>, r: metric::MetricReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("within_tolerance", r.within_tolerance())?;
    d.set_item("statistic", r.statistic)?;
    d.set_item("values", r.values)?;
    d.set_item("mean", r.mean)?;
    d.set_item("std_dev", r.std_dev)?;
    d.set_item("reference", r.reference)?;
    d.set_item("tolerance", r.tolerance)?;
    d.set_item("skipped", r.skipped)?;
    Ok(d)
}

#[pyfunction]
fn levy_report<'py>(py: Python<'py>, samples: Vec<Bound<'py, PyCf>>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = samples_of(&samples);
    report_dict(py, py.detach(|| metric::levy_report(&s, n)))
}

#[pyfunction]
fn first_digit_census<'py>(py: Python<'py>, samples: Vec<Bound<'py, PyCf>>, k: u64) -> PyResult<Bound<'py, PyDict>> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    report_dict(py, metric::first_digit_census(&samples_of(&samples), k))
}

#[pyfunction]
fn bb_census<'py>(py: Python<'py>, samples: Vec<Bound<'py, PyCf>>, lo: usize, hi: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = samples_of(&samples);
    report_dict(py, py.detach(|| metric::bb_census(&s, lo..=hi)))
}

#[pyfunction]
fn digit_sum_report<'py>(py: Python<'py>, samples: Vec<Bound<'py, PyCf>>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = samples_of(&samples);
    report_dict(py, py.detach(|| metric::digit_sum_report(&s, n)))
}

#[pymodule]
fn threegap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ThreegapError", m.py().get_type::<ThreegapError>())?;
    m.add("LEVY_CONSTANT", metric::LEVY_CONSTANT)?;
    m.add_class::<PyCf>()?;
    m.add_class::<PyGapReport>()?;
    m.add_class::<PyPrediction>()?;
    m.add_function(wrap_pyfunction!(golden, m)?)?;
    m.add_function(wrap_pyfunction!(silver, m)?)?;
    m.add_function(wrap_pyfunction!(expand_surd, m)?)?;
    m.add_function(wrap_pyfunction!(surd_of, m)?)?;
    m.add_function(wrap_pyfunction!(gap_report, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(two_gap_set, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_trace, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(q_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(digit_sum_over_q, m)?)?;
    m.add_function(wrap_pyfunction!(levy_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(sample_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(levy_report, m)?)?;
    m.add_function(wrap_pyfunction!(first_digit_census, m)?)?;
    m.add_function(wrap_pyfunction!(bb_census, m)?)?;
    m.add_function(wrap_pyfunction!(digit_sum_report, m)?)?;
    Ok(())
}
