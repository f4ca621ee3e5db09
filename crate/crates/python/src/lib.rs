//! Python bindings: rings, twist contexts, skew polynomials and the
//! classification, survey and verification drivers.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use skewsep::classify::{self, ClassificationReport, TheoremCheckResult, TheoremId};
use skewsep::cli::build_context;
use skewsep::ring::{ring_from_str, FiniteRing};
use skewsep::skew::{self, SkewPolynomial, TwistContext, TwistKind};
use skewsep::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py, T: serde::Serialize + ?Sized>(
    py: Python<'py>,
    value: &T,
) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn degree_range(min_degree: usize, max_degree: usize) -> PyResult<Vec<usize>> {
    if min_degree == 0 || min_degree > max_degree {
        return Err(PyValueError::new_err(format!(
            "empty or invalid degree range {min_degree}..={max_degree}"
        )));
    }
    Ok((min_degree..=max_degree).collect())
}

/// A finite ring given by a spec such as "Zmod(6)" or "GF(2,2)".
#[pyclass(frozen, module = "skewsep_py")]
struct Ring {
    inner: Arc<FiniteRing>,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Ring {
            inner: ring_from_str(spec).map_err(to_py)?,
        })
    }

    #[getter]
    fn spec(&self) -> String {
        self.inner.spec().to_string()
    }

    #[getter]
    fn size(&self) -> u32 {
        self.inner.size()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_domain(&self) -> bool {
        self.inner.is_domain()
    }

    fn elements(&self) -> Vec<String> {
        self.inner
            .elements()
            .map(|a| self.inner.format_element(a))
            .collect()
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        let r = &self.inner;
        let (a, b) = (
            r.parse_element(a).map_err(to_py)?,
            r.parse_element(b).map_err(to_py)?,
        );
        Ok(r.format_element(r.add(a, b)))
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let r = &self.inner;
        let (a, b) = (
            r.parse_element(a).map_err(to_py)?,
            r.parse_element(b).map_err(to_py)?,
        );
        Ok(r.format_element(r.mul(a, b)))
    }

    fn is_unit(&self, a: &str) -> PyResult<bool> {
        Ok(self
            .inner
            .is_unit(self.inner.parse_element(a).map_err(to_py)?))
    }

    fn is_non_zero_divisor(&self, a: &str) -> PyResult<bool> {
        Ok(self
            .inner
            .is_non_zero_divisor(self.inner.parse_element(a).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.spec())
    }
}

/// A ring with an automorphism and a twisted derivation.
#[pyclass(frozen, module = "skewsep_py")]
struct Context {
    inner: Arc<TwistContext>,
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (ring, auto = "identity", deriv = "zero"))]
    fn new(ring: &str, auto: &str, deriv: &str) -> PyResult<Self> {
        Ok(Context {
            inner: build_context(ring, auto, deriv).map_err(to_py)?,
        })
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring {
            inner: self.inner.ring().clone(),
        }
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    /// "plain", "automorphism", "derivation" or "mixed"
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            TwistKind::Plain => "plain",
            TwistKind::Automorphism => "automorphism",
            TwistKind::Derivation => "derivation",
            TwistKind::Mixed => "mixed",
        }
    }

    fn poly(&self, text: &str) -> PyResult<Polynomial> {
        Ok(Polynomial {
            inner: skew::parse_polynomial(&self.inner, text).map_err(to_py)?,
        })
    }

    /// Reports for every invariant monic polynomial with degree in the range.
    #[pyo3(signature = (min_degree = 2, max_degree = 2, parallelism = 0))]
    fn survey(
        &self,
        py: Python<'_>,
        min_degree: usize,
        max_degree: usize,
        parallelism: usize,
    ) -> PyResult<Vec<Report>> {
        let degrees = degree_range(min_degree, max_degree)?;
        let ctx = self.inner.clone();
        let reports = py
            .detach(move || classify::survey(&ctx, &degrees, parallelism))
            .map_err(to_py)?;
        Ok(reports.into_iter().map(|inner| Report { inner }).collect())
    }

    /// Checks the comma-separated theorem ids; one summary dict per theorem.
    #[pyo3(signature = (theorems, min_degree = 2, max_degree = 2, parallelism = 0))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        theorems: &str,
        min_degree: usize,
        max_degree: usize,
        parallelism: usize,
    ) -> PyResult<Bound<'py, PyList>> {
        let ids = theorems
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<skewsep::Result<Vec<TheoremId>>>()
            .map_err(to_py)?;
        let degrees = degree_range(min_degree, max_degree)?;
        let ctx = self.inner.clone();
        let results: Vec<TheoremCheckResult> = py
            .detach(move || classify::verify_theorems(&ids, &ctx, &degrees, parallelism))
            .map_err(to_py)?;
        let list = PyList::empty(py);
        for r in &results {
            let d = json_to_py(py, r)?;
            d.set_item("clean", r.is_clean())?;
            list.append(d)?;
        }
        Ok(list)
    }

    fn __repr__(&self) -> String {
        format!(
            "Context({:?}, {:?})",
            self.inner.ring().spec().to_string(),
            self.inner.label()
        )
    }
}

/// A skew polynomial in right normal form.
#[pyclass(frozen, module = "skewsep_py")]
struct Polynomial {
    inner: SkewPolynomial,
}

#[pymethods]
impl Polynomial {
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    /// Right coefficients, constant term first.
    #[getter]
    fn coefficients(&self) -> Vec<String> {
        let r = self.inner.ring();
        self.inner
            .coeffs()
            .iter()
            .map(|&c| r.format_element(c))
            .collect()
    }

    fn is_monic(&self) -> bool {
        self.inner.is_monic()
    }

    fn is_invariant(&self) -> PyResult<bool> {
        skew::is_invariant_definitional(&self.inner).map_err(to_py)
    }

    fn discriminant(&self) -> PyResult<String> {
        let d = skew::discriminant(&self.inner).map_err(to_py)?;
        Ok(self.inner.ring().format_element(d))
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Report> {
        let f = self.inner.clone();
        let inner = py.detach(move || classify::classify(&f)).map_err(to_py)?;
        Ok(Report { inner })
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        Ok(Polynomial {
            inner: self.inner.add(&other.inner).map_err(to_py)?,
        })
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        Ok(Polynomial {
            inner: self.inner.sub(&other.inner).map_err(to_py)?,
        })
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        Ok(Polynomial {
            inner: self.inner.mul(&other.inner).map_err(to_py)?,
        })
    }

    /// `(q, r)` with `self = f q + r` and `deg r < deg f`.
    fn left_divmod(&self, f: &Polynomial) -> PyResult<(Polynomial, Polynomial)> {
        let (q, r) = self.inner.left_divmod(&f.inner).map_err(to_py)?;
        Ok((Polynomial { inner: q }, Polynomial { inner: r }))
    }

    fn __eq__(&self, other: &Polynomial) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.to_string())
    }
}

/// Classification of one polynomial.
#[pyclass(frozen, module = "skewsep_py")]
struct Report {
    inner: ClassificationReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn poly(&self) -> String {
        self.inner.poly.clone()
    }

    #[getter]
    fn invariant(&self) -> bool {
        self.inner.invariant
    }

    #[getter]
    fn separable(&self) -> Option<bool> {
        self.inner.verdicts.map(|v| v.separable)
    }

    #[getter]
    fn weakly_separable(&self) -> Option<bool> {
        self.inner.verdicts.map(|v| v.weakly_separable)
    }

    #[getter]
    fn weakly_quasi_separable(&self) -> Option<bool> {
        self.inner.verdicts.map(|v| v.weakly_quasi_separable)
    }

    #[getter]
    fn agreement(&self) -> bool {
        self.inner.agreement
    }

    /// Outcome of a named method: "Holds", "Fails", "Inconclusive" or None.
    fn outcome(&self, method: &str) -> Option<String> {
        self.inner.outcome(method).map(|o| format!("{o:?}"))
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let py_bool = |b: Option<bool>| match b {
            Some(true) => "True",
            Some(false) => "False",
            None => "None",
        };
        format!(
            "Report({:?}, separable={}, weakly_separable={}, weakly_quasi_separable={})",
            self.inner.poly,
            py_bool(self.separable()),
            py_bool(self.weakly_separable()),
            py_bool(self.weakly_quasi_separable())
        )
    }
}

/// Classifies `poly` over `ring` with the given twist.
#[pyfunction]
#[pyo3(signature = (ring, poly, auto = "identity", deriv = "zero"))]
fn classify_poly(
    py: Python<'_>,
    ring: &str,
    poly: &str,
    auto: &str,
    deriv: &str,
) -> PyResult<Report> {
    Context::new(ring, auto, deriv)?.poly(poly)?.classify(py)
}

#[pymodule]
fn skewsep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Context>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(classify_poly, m)?)?;
    m.add(
        "THEOREMS",
        TheoremId::ALL
            .iter()
            .map(|t| t.as_str())
            .collect::<Vec<_>>(),
    )?;
    Ok(())
}
