//! Python bindings. Scalars cross the boundary as exact strings ("n/d",
//! "a+b*rt", "inf"); ints and strs are both accepted on input.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qhahn::coeffs::{Adjoin, Branch, RecurrenceTable as CoreTable, Sign, Variant, ZeroMode};
use qhahn::exactfield::{parse_rational, Field, Proj, Quad, Rational};
use qhahn::families::{self, ProjectiveParams};
use qhahn::qmatrix::{recurrence_polys, table_residual, verify_table};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(obj.str()?.to_string())
}

fn scalar(obj: &Bound<'_, PyAny>, adj: Option<&Rational>) -> PyResult<Quad> {
    Quad::parse_with(&text(obj)?, adj).map_err(err)
}

fn proj(obj: &Bound<'_, PyAny>, adj: Option<&Rational>) -> PyResult<Proj<Quad>> {
    Proj::parse_with(&text(obj)?, adj).map_err(err)
}

fn parse_adjoin(adjoin: Option<&str>) -> PyResult<(Adjoin, Option<Rational>)> {
    match adjoin {
        None => Ok((Adjoin::None, None)),
        Some("auto") => Ok((Adjoin::Auto, None)),
        Some(s) => {
            let r = parse_rational(s).map_err(err)?;
            Ok((Adjoin::Radicand(r.clone()), Some(r)))
        }
    }
}

fn strings(v: &[Quad]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Parameters `(q, y, d1, d2, d3, alpha1)` with branch, variant and sign.
#[pyclass(name = "ParamSet", module = "qhahn_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParamSet {
    inner: ProjectiveParams<Quad>,
}

#[pymethods]
impl PyParamSet {
    #[new]
    #[pyo3(signature = (q, y, d, alpha1, branch="A", variant="standard", sign="plus", adjoin=None, mode="strict", sigma0=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        q: &Bound<'_, PyAny>,
        y: &Bound<'_, PyAny>,
        d: Vec<Bound<'_, PyAny>>,
        alpha1: &Bound<'_, PyAny>,
        branch: &str,
        variant: &str,
        sign: &str,
        adjoin: Option<&str>,
        mode: &str,
        sigma0: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        if d.len() != 3 {
            return Err(PyValueError::new_err("d needs three entries"));
        }
        let (adjoin, radicand) = parse_adjoin(adjoin)?;
        let adj = radicand.as_ref();
        let mut inner: ProjectiveParams<Quad> = qhahn::coeffs::ParamSet::new(
            scalar(q, adj)?,
            Quad::zero(),
            [Quad::zero(), Quad::zero(), Quad::zero()],
            scalar(alpha1, adj)?,
        )
        .into();
        inner.y = proj(y, adj)?;
        inner.d = [proj(&d[0], adj)?, proj(&d[1], adj)?, proj(&d[2], adj)?];
        inner.adjoin = adjoin;
        inner.sigma0_override = sigma0.map(|s| scalar(s, adj)).transpose()?;
        Self { inner }.with_options(Some(branch), Some(variant), Some(sign), Some(mode))
    }

    /// A catalog preset.
    #[staticmethod]
    #[pyo3(signature = (name, q, alpha1=None, adjoin=None))]
    fn preset(
        name: &str,
        q: &Bound<'_, PyAny>,
        alpha1: Option<&Bound<'_, PyAny>>,
        adjoin: Option<&str>,
    ) -> PyResult<Self> {
        let (adjoin, radicand) = parse_adjoin(adjoin)?;
        let adj = radicand.as_ref();
        let a1 = alpha1.map(|a| scalar(a, adj)).transpose()?.unwrap_or_else(Quad::one);
        let mut inner = families::preset(name, &scalar(q, adj)?, a1).map_err(err)?;
        inner.adjoin = adjoin;
        Ok(Self { inner })
    }

    /// Askey-Wilson parameters `a, b, c, d` at `q`.
    #[staticmethod]
    #[pyo3(signature = (a, b, c, d, q, alpha1, adjoin=None))]
    fn askey_wilson(
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        c: &Bound<'_, PyAny>,
        d: &Bound<'_, PyAny>,
        q: &Bound<'_, PyAny>,
        alpha1: &Bound<'_, PyAny>,
        adjoin: Option<&str>,
    ) -> PyResult<Self> {
        let (adjoin, radicand) = parse_adjoin(adjoin)?;
        let adj = radicand.as_ref();
        let p = families::askey_wilson(
            &scalar(a, adj)?,
            &scalar(b, adj)?,
            &scalar(c, adj)?,
            &scalar(d, adj)?,
            &scalar(q, adj)?,
            scalar(alpha1, adj)?,
        )
        .map_err(err)?;
        let mut inner: ProjectiveParams<Quad> = p.into();
        inner.adjoin = adjoin;
        Ok(Self { inner })
    }

    /// q-Racah parameters `alpha, beta, gamma, delta` at `q`.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, gamma, delta, q, alpha1, adjoin=None))]
    fn q_racah(
        alpha: &Bound<'_, PyAny>,
        beta: &Bound<'_, PyAny>,
        gamma: &Bound<'_, PyAny>,
        delta: &Bound<'_, PyAny>,
        q: &Bound<'_, PyAny>,
        alpha1: &Bound<'_, PyAny>,
        adjoin: Option<&str>,
    ) -> PyResult<Self> {
        let (adjoin, radicand) = parse_adjoin(adjoin)?;
        let adj = radicand.as_ref();
        let p = families::q_racah(
            &scalar(alpha, adj)?,
            &scalar(beta, adj)?,
            &scalar(gamma, adj)?,
            &scalar(delta, adj)?,
            &scalar(q, adj)?,
            scalar(alpha1, adj)?,
        )
        .map_err(err)?;
        let mut inner: ProjectiveParams<Quad> = p.into();
        inner.adjoin = adjoin;
        Ok(Self { inner })
    }

    /// Copy with other branch/variant/sign/mode.
    #[pyo3(signature = (branch=None, variant=None, sign=None, mode=None))]
    fn with_options(
        &self,
        branch: Option<&str>,
        variant: Option<&str>,
        sign: Option<&str>,
        mode: Option<&str>,
    ) -> PyResult<Self> {
        let mut p = self.inner.clone();
        if let Some(b) = branch {
            p.branch = match b {
                "A" | "a" => Branch::A,
                "B" | "b" => Branch::B,
                other => return Err(PyValueError::new_err(format!("branch must be A or B, got {other}"))),
            };
        }
        if let Some(v) = variant {
            p.variant = match v {
                "standard" => Variant::Standard,
                "starred" => Variant::Starred,
                other => return Err(PyValueError::new_err(format!("unknown variant {other}"))),
            };
        }
        if let Some(s) = sign {
            p.sigma0_sign = match s {
                "plus" | "+" => Sign::Plus,
                "minus" | "-" => Sign::Minus,
                other => return Err(PyValueError::new_err(format!("unknown sign {other}"))),
            };
        }
        if let Some(m) = mode {
            p.mode = match m {
                "strict" => ZeroMode::Strict,
                "permissive" => ZeroMode::Permissive,
                other => return Err(PyValueError::new_err(format!("unknown mode {other}"))),
            };
        }
        Ok(Self { inner: p })
    }

    /// Recurrence table up to `kmax`.
    fn table(&self, kmax: usize) -> PyResult<PyTable> {
        Ok(PyTable {
            inner: self.inner.evaluate_table(kmax).map_err(err)?,
        })
    }

    /// Degree pair of Z as strings, e.g. `("8", "8")`.
    fn degrees(&self) -> PyResult<(String, String)> {
        let (n, m) = self.inner.degrees().map_err(err)?;
        Ok((n.to_string(), m.to_string()))
    }

    fn q_reversed(&self) -> Self {
        Self {
            inner: self.inner.q_reversed(),
        }
    }

    #[getter]
    fn y(&self) -> String {
        self.inner.y.to_string()
    }

    #[getter]
    fn d(&self) -> Vec<String> {
        self.inner.d.iter().map(|x| x.to_string()).collect()
    }

    #[getter]
    fn variant(&self) -> &'static str {
        match self.inner.variant {
            Variant::Standard => "standard",
            Variant::Starred => "starred",
        }
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "ParamSet(q={}, y={}, d=({}, {}, {}), alpha1={}, branch={:?}, variant={:?}, sign={:?})",
            p.q, p.y, p.d[0], p.d[1], p.d[2], p.alpha1, p.branch, p.variant, p.sigma0_sign
        )
    }
}

/// Exact coefficient table; values are strings in the exact syntax.
#[pyclass(name = "RecurrenceTable", module = "qhahn_py", frozen)]
struct PyTable {
    inner: CoreTable<Quad>,
}

#[pymethods]
impl PyTable {
    /// `alpha_1..alpha_kmax`.
    #[getter]
    fn alpha(&self) -> Vec<String> {
        strings(&self.inner.alpha)
    }

    #[getter]
    fn beta(&self) -> Vec<String> {
        strings(&self.inner.beta)
    }

    #[getter]
    fn sigma(&self) -> Vec<String> {
        strings(&self.inner.sigma)
    }

    #[getter]
    fn sigma0_sq(&self) -> String {
        self.inner.sigma0_sq.to_string()
    }

    #[getter]
    fn t(&self) -> String {
        self.inner.t.to_string()
    }

    #[getter]
    fn degrees(&self) -> (String, String) {
        let (n, m) = self.inner.degree_pair;
        (n.to_string(), m.to_string())
    }

    #[getter]
    fn finite_family_at(&self) -> Option<usize> {
        self.inner.flags.finite_family_at
    }

    #[getter]
    fn sigma_identically_zero(&self) -> bool {
        self.inner.flags.sigma_identically_zero
    }

    /// Nonzero entries `(j, k, value)` of the quadratic residual at order `n`.
    fn residual(&self, n: usize) -> PyResult<Vec<(usize, usize, String)>> {
        let r = table_residual(&self.inner, n).map_err(err)?;
        Ok(r.to_triples()
            .lines()
            .filter_map(|l| {
                let mut it = l.splitn(3, ' ');
                Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?, it.next()?.to_string()))
            })
            .collect())
    }

    /// Runs the quadratic residual, gram and (for t = 0) transform checks.
    /// Returns `{"residual": bool, "gram": bool, "hahn": bool | None}`.
    #[pyo3(signature = (order, gram_order=None))]
    fn verify(&self, py: Python<'_>, order: usize, gram_order: Option<usize>) -> PyResult<Py<PyAny>> {
        let r = verify_table(&self.inner, order, gram_order.unwrap_or(order)).map_err(err)?;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("residual", r.residual.passed())?;
        d.set_item("gram", r.gram.passed())?;
        d.set_item("hahn", r.hahn.as_ref().map(|h| h.passed()))?;
        d.set_item("passed", r.passed())?;
        Ok(d.into_any().unbind())
    }

    /// Monomial coefficients of `p_0..p_kmax`.
    fn polys(&self, kmax: usize) -> PyResult<Vec<Vec<String>>> {
        let p = recurrence_polys(&self.inner.alpha, &self.inner.beta, kmax).map_err(err)?;
        Ok(p.rows.iter().map(|r| strings(r.coeffs())).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.alpha.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "RecurrenceTable(kmax={}, sigma0_sq={}, t={})",
            self.inner.kmax, self.inner.sigma0_sq, self.inner.t
        )
    }
}

/// Catalog entries `(name, parameters, description)`.
#[pyfunction]
fn catalog() -> Vec<(&'static str, &'static str, &'static str)> {
    families::CATALOG
        .iter()
        .map(|c| (c.name, c.template, c.description))
        .collect()
}

#[pymodule]
fn qhahn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParamSet>()?;
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
