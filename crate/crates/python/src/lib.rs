//! Python bindings: graphs, counts, polytope vertices, Ehrhart
//! quasipolynomials, semigroup checks and the reference check suite.
//!
//! Counts come back as Python `int`, rationals as `fractions.Fraction`.
//! Input errors raise `ValueError`; exhausted budgets and internal
//! inconsistencies raise `RuntimeError`.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use magic_ehrhart_core::geometry::{self, PolytopeKind};
use magic_ehrhart_core::graph::{self as gr, ForcedMaxEdge};
use magic_ehrhart_core::labeling::{self as lab, Labeling};
use magic_ehrhart_core::quasipoly::{self as qp, SampleSeries};
use magic_ehrhart_core::semigroup::{self as sg, CfVerdict, QuasiperiodVerdict, SemigroupElement};
use magic_ehrhart_core::verify::{self, Context, ReferenceValues, Status};
use magic_ehrhart_core::{io, Budget, Error, Rational};

fn to_py(e: Error) -> PyErr {
    if e.is_budget() || matches!(e, Error::Consistency(_)) {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn kind(s: &str) -> PyResult<PolytopeKind> {
    s.parse().map_err(to_py)
}

#[pyclass(name = "Graph", module = "magic_ehrhart", frozen)]
struct PyGraph {
    inner: gr::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges, repeated_loops = false))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>, repeated_loops: bool) -> PyResult<Self> {
        let inner = if repeated_loops {
            gr::Graph::with_repeated_loops(vertices, edges)
        } else {
            gr::Graph::new(vertices, edges)
        }
        .map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::graph_from_json(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn gn(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gr::make_gn(n).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn gnp(n: usize, p: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gr::make_gnp(n, p).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn two_loops() -> Self {
        PyGraph { inner: gr::two_loops() }
    }

    #[staticmethod]
    fn path(m: usize) -> Self {
        PyGraph { inner: gr::path(m) }
    }

    #[staticmethod]
    fn cycle(m: usize) -> PyResult<Self> {
        if m < 3 {
            return Err(PyValueError::new_err("a cycle needs at least 3 vertices"));
        }
        Ok(PyGraph { inner: gr::cycle(m) })
    }

    fn to_json(&self) -> String {
        io::graph_to_json(&self.inner)
    }

    fn hash(&self) -> String {
        io::graph_hash(&self.inner)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .iter()
            .map(|&(u, w)| (self.inner.vertex_name(u).to_string(), self.inner.vertex_name(w).to_string()))
            .collect()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite().is_some()
    }

    fn perfect_matchings(&self) -> Vec<Vec<usize>> {
        self.inner.perfect_matchings()
    }

    fn matching_preclusion(&self) -> &'static str {
        match gr::matching_preclusion_class(&self.inner) {
            gr::MatchingPreclusion::NoPm => "no_pm",
            gr::MatchingPreclusion::One => "one",
            gr::MatchingPreclusion::GreaterThanOne => "greater_than_one",
        }
    }

    /// Index of a labeling if it is magic, else `None`.
    fn magic_index(&self, labels: Vec<u64>) -> PyResult<Option<u64>> {
        Ok(self.labeling(labels)?.magic_index(&self.inner))
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

impl PyGraph {
    fn labeling(&self, labels: Vec<u64>) -> PyResult<Labeling> {
        Labeling::new(&self.inner, labels).map_err(to_py)
    }
}

#[pyclass(name = "Quasipolynomial", module = "magic_ehrhart", frozen)]
struct PyQuasipolynomial {
    inner: qp::Quasipolynomial,
}

#[pymethods]
impl PyQuasipolynomial {
    #[new]
    fn new(period: usize, constituents: Vec<Vec<Rational>>) -> PyResult<Self> {
        Ok(PyQuasipolynomial {
            inner: qp::Quasipolynomial::new(period, constituents).map_err(to_py)?,
        })
    }

    #[getter]
    fn period(&self) -> usize {
        self.inner.period()
    }

    #[getter]
    fn constituents(&self) -> Vec<Vec<Rational>> {
        self.inner.constituents().to_vec()
    }

    fn __call__(&self, t: i64) -> Rational {
        self.inner.eval(t)
    }

    fn difference(&self) -> Self {
        PyQuasipolynomial {
            inner: self.inner.difference(),
        }
    }

    fn minimum_quasiperiod(&self) -> usize {
        self.inner.minimum_quasiperiod()
    }

    fn coefficient_periods(&self) -> Vec<usize> {
        self.inner.coefficient_periods()
    }

    fn to_json(&self) -> String {
        io::quasipolynomial_to_json(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Quasipolynomial({})", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (g, k, polytope = "P"))]
fn count(g: &PyGraph, k: u64, polytope: &str) -> PyResult<BigUint> {
    Ok(match kind(polytope)? {
        PolytopeKind::P => lab::count_magic_k(&g.inner, k),
        PolytopeKind::Q => lab::count_index_k(&g.inner, k),
    })
}

#[pyfunction]
#[pyo3(signature = (g, kmax, polytope = "P"))]
fn series(g: &PyGraph, kmax: u64, polytope: &str) -> PyResult<Vec<BigUint>> {
    qp::sample_counts(&g.inner, kind(polytope)?, kmax, &Budget::from_env()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (g, k, polytope = "P"))]
fn enumerate(g: &PyGraph, k: u64, polytope: &str) -> PyResult<Vec<Vec<u64>>> {
    let ls = match kind(polytope)? {
        PolytopeKind::P => lab::enumerate_magic_k(&g.inner, k),
        PolytopeKind::Q => lab::enumerate_index_k(&g.inner, k),
    };
    Ok(ls.into_iter().map(Labeling::into_labels).collect())
}

#[pyfunction]
#[pyo3(signature = (g, polytope = "P"))]
fn vertices(g: &PyGraph, polytope: &str) -> PyResult<Vec<Vec<Rational>>> {
    let vs = geometry::polytope_vertices(&g.inner, kind(polytope)?, &Budget::from_env()).map_err(to_py)?;
    Ok(vs.into_iter().map(|v| v.0).collect())
}

/// `(dimension, denominator)` of the polytope.
#[pyfunction]
#[pyo3(signature = (g, polytope = "P"))]
fn polytope_summary(g: &PyGraph, polytope: &str) -> PyResult<(i64, BigUint)> {
    let s = geometry::summarize(&g.inner, kind(polytope)?, &Budget::from_env()).map_err(to_py)?;
    Ok((s.dimension, s.denominator))
}

#[pyfunction]
#[pyo3(signature = (g, polytope = "P"))]
fn ehrhart(g: &PyGraph, polytope: &str) -> PyResult<PyQuasipolynomial> {
    Ok(PyQuasipolynomial {
        inner: qp::ehrhart_of_polytope(&g.inner, kind(polytope)?, &Budget::from_env()).map_err(to_py)?,
    })
}

#[pyfunction]
fn fit_quasipolynomial(samples: Vec<BigInt>, period: usize, degree: usize) -> PyResult<PyQuasipolynomial> {
    Ok(PyQuasipolynomial {
        inner: qp::fit_quasipolynomial(&SampleSeries::new(samples), period, degree).map_err(to_py)?,
    })
}

#[pyfunction]
fn f_n(n: u64, k: u64) -> PyResult<BigInt> {
    qp::f_n(n, k).map_err(to_py)
}

#[pyfunction]
fn closed_form_mn(n: u64, k: u64) -> PyResult<BigInt> {
    qp::closed_form_mn(n, k).map_err(to_py)
}

#[pyfunction]
fn iterated_difference_of_fn(n: u64, i: u64, t: u64) -> PyResult<BigInt> {
    qp::iterated_difference_of_fn(n, i, t).map_err(to_py)
}

/// Completely fundamental elements as `(labels, height)` pairs.
#[pyfunction]
#[pyo3(signature = (g, polytope = "P"))]
fn cf_elements(g: &PyGraph, polytope: &str) -> PyResult<Vec<(Vec<u64>, u64)>> {
    let es = sg::cf_elements(&g.inner, kind(polytope)?, &Budget::from_env()).map_err(to_py)?;
    Ok(es.into_iter().map(|e| (e.labeling.into_labels(), e.height)).collect())
}

/// `None` when unrefuted up to `m_max`, else `(m, (b_labels, b_height),
/// (c_labels, c_height))`.
#[pyfunction]
#[pyo3(signature = (g, labels, height, polytope = "P", m_max = 3))]
#[allow(clippy::type_complexity)]
fn refute_completely_fundamental(
    g: &PyGraph,
    labels: Vec<u64>,
    height: u64,
    polytope: &str,
    m_max: u64,
) -> PyResult<Option<(u64, (Vec<u64>, u64), (Vec<u64>, u64))>> {
    let elem = SemigroupElement {
        labeling: g.labeling(labels)?,
        height,
    };
    match sg::verify_completely_fundamental(&g.inner, kind(polytope)?, &elem, m_max).map_err(to_py)? {
        CfVerdict::UnrefutedUpTo(_) => Ok(None),
        CfVerdict::Refuted { m, b, c } => Ok(Some((
            m,
            (b.labeling.into_labels(), b.height),
            (c.labeling.into_labels(), c.height),
        ))),
    }
}

#[pyfunction]
fn stanley_decompose(g: &PyGraph, labels: Vec<u64>) -> PyResult<Vec<Vec<u64>>> {
    let pieces = sg::stanley_decompose(&g.inner, &g.labeling(labels)?).map_err(to_py)?;
    Ok(pieces.into_iter().map(Labeling::into_labels).collect())
}

/// `(verdict, forced_edge)` where the edge is an index, `"vacuous"` or `None`.
#[pyfunction]
fn certify_small_quasiperiod(py: Python<'_>, g: &PyGraph) -> PyResult<(&'static str, Py<PyAny>)> {
    let cert = sg::certify_small_quasiperiod(&g.inner);
    let verdict = match cert.verdict {
        QuasiperiodVerdict::Polynomial => "polynomial",
        QuasiperiodVerdict::QuasiperiodLe2 => "quasiperiod_le_2",
        QuasiperiodVerdict::NoCertificate => "no_certificate",
    };
    let edge = match cert.forced_edge {
        ForcedMaxEdge::Edge(e) => e.into_pyobject(py)?.into_any().unbind(),
        ForcedMaxEdge::Vacuous => "vacuous".into_pyobject(py)?.into_any().unbind(),
        ForcedMaxEdge::None => py.None(),
    };
    Ok((verdict, edge))
}

/// Runs the reference checks; returns `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (filter = None))]
fn verify_paper(filter: Option<&str>) -> Vec<(&'static str, bool, String)> {
    let ctx = Context::new(ReferenceValues::default(), Budget::from_env());
    verify::run_suite(&ctx, filter)
        .into_iter()
        .map(|o| (o.name, o.status == Status::Pass, o.detail))
        .collect()
}

#[pymodule]
fn magic_ehrhart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyQuasipolynomial>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(vertices, m)?)?;
    m.add_function(wrap_pyfunction!(polytope_summary, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart, m)?)?;
    m.add_function(wrap_pyfunction!(fit_quasipolynomial, m)?)?;
    m.add_function(wrap_pyfunction!(f_n, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_mn, m)?)?;
    m.add_function(wrap_pyfunction!(iterated_difference_of_fn, m)?)?;
    m.add_function(wrap_pyfunction!(cf_elements, m)?)?;
    m.add_function(wrap_pyfunction!(refute_completely_fundamental, m)?)?;
    m.add_function(wrap_pyfunction!(stanley_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(certify_small_quasiperiod, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
