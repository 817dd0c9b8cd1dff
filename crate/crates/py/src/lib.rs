//! Python bindings. Certificates and reports cross the boundary as plain
//! dicts built from the same JSON the CLI prints.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

use oddminor::harness::{
    cmd_find, cmd_invariants, cmd_verify, run_sweep, Certificate, FindKind, SweepConfig,
    SweepSource,
};
use oddminor::io::{parse_edge_list, parse_graph6, to_graph6};
use oddminor::oracle::brute_force_odd_model;
use oddminor::{critical_reduction, Error, Pattern};

create_exception!(oddminor_py, OddMinorError, PyException);
create_exception!(oddminor_py, PreconditionError, OddMinorError);
create_exception!(oddminor_py, VerificationError, OddMinorError);
create_exception!(oddminor_py, ContradictionError, OddMinorError);

fn to_py(e: Error) -> PyErr {
    let message = format!("{}: {e}", e.reason());
    match e {
        Error::Unverified { .. } => VerificationError::new_err(message),
        Error::Contradiction(event) => {
            let detail = serde_json::to_string(&event).unwrap_or_default();
            ContradictionError::new_err((message, detail))
        }
        _ => PreconditionError::new_err(message),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).expect("reports serialize");
    py.import("json")?.call_method1("loads", (text,))
}

fn from_dict<'py>(value: &Bound<'py, PyAny>) -> PyResult<String> {
    if let Ok(text) = value.extract::<String>() {
        return Ok(text);
    }
    value
        .py()
        .import("json")?
        .call_method1("dumps", (value,))?
        .extract()
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "oddminor_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: oddminor::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = oddminor::Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_graph6(text).map_err(to_py)?,
        })
    }

    /// Parses a plain edge list or DIMACS text.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_edge_list(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn to_graph6(&self) -> String {
        to_graph6(&self.inner)
    }

    fn complement(&self) -> Self {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn join(&self, other: &PyGraph) -> Self {
        PyGraph {
            inner: self.inner.join(&other.inner),
        }
    }

    /// `n`, `alpha`, `chi`, `omega` and `kappa` as a dict.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &cmd_invariants(&self.inner).map_err(to_py)?)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, graph6={:?})",
            self.inner.n(),
            to_graph6(&self.inner)
        )
    }
}

/// Builds a verified certificate. `pattern` is "bipartite", "half-order" or
/// "clique"; the first two need `ell`.
#[pyfunction]
#[pyo3(signature = (graph, pattern = "bipartite", ell = None))]
fn find<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    pattern: &str,
    ell: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = match pattern {
        "bipartite" => FindKind::Bipartite,
        "half-order" => FindKind::HalfOrder,
        "clique" => FindKind::Clique,
        other => {
            return Err(PreconditionError::new_err(format!(
                "pattern: unknown pattern {other:?}"
            )))
        }
    };
    let cert = py
        .detach(|| cmd_find(&graph.inner, kind, ell))
        .map_err(to_py)?;
    to_dict(py, &cert)
}

/// Returns the list of violations; empty means the certificate is valid.
#[pyfunction]
#[pyo3(signature = (graph, certificate, special = false))]
fn verify<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    certificate: &Bound<'py, PyAny>,
    special: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = Certificate::from_json(&from_dict(certificate)?).map_err(to_py)?;
    to_dict(
        py,
        &cmd_verify(&graph.inner, &cert, special).map_err(to_py)?,
    )
}

/// Brute-force search. Returns the model as a dict, or None.
#[pyfunction]
#[pyo3(signature = (graph, pattern, size, ell = 0, special = false))]
fn oracle<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    pattern: &str,
    size: usize,
    ell: usize,
    special: bool,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let right = size.saturating_sub(ell);
    let p = match pattern {
        "clique" => Pattern::Clique { size },
        "bipartite" => Pattern::Bipartite { left: ell, right },
        "plus-clique" => Pattern::BipartitePlusClique { left: ell, right },
        other => {
            return Err(PreconditionError::new_err(format!(
                "pattern: unknown pattern {other:?}"
            )))
        }
    };
    let found = py
        .detach(|| brute_force_odd_model(&graph.inner, p, special))
        .map_err(to_py)?;
    found.map(|m| to_dict(py, &m)).transpose()
}

/// Deletes every vertex whose removal keeps the chromatic number. Returns
/// the reduced graph, the surviving input vertices and the deleted ones.
#[pyfunction]
fn reduce(graph: &PyGraph) -> PyResult<(PyGraph, Vec<usize>, Vec<usize>)> {
    let r = critical_reduction(&graph.inner).map_err(to_py)?;
    Ok((PyGraph { inner: r.graph }, r.kept, r.removed))
}

/// Runs a sweep. `mode` is "exhaustive" (orders `n_min..=n`), "random"
/// (`count` graphs of order `n`) or "stream" (`lines` of graph6 text for
/// triangle-free graphs, complemented on the way in).
#[pyfunction]
#[pyo3(signature = (mode, n = 5, n_min = None, count = 100, seed = 0, lines = None, oracle = false, conjecture17 = false, jobs = 0, records = true))]
#[allow(clippy::too_many_arguments)]
fn sweep<'py>(
    py: Python<'py>,
    mode: &str,
    n: usize,
    n_min: Option<usize>,
    count: usize,
    seed: u64,
    lines: Option<Vec<String>>,
    oracle: bool,
    conjecture17: bool,
    jobs: usize,
    records: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let source = match mode {
        "exhaustive" => SweepSource::Exhaustive {
            n_min: n_min.unwrap_or(n),
            n_max: n,
        },
        "random" => SweepSource::Random { n, count, seed },
        "stream" => SweepSource::Stream {
            lines: lines.unwrap_or_default(),
        },
        other => {
            return Err(PreconditionError::new_err(format!(
                "mode: unknown mode {other:?}"
            )))
        }
    };
    let config = SweepConfig {
        source,
        oracle,
        conjecture17,
        jobs,
        keep_records: records,
    };
    let report = py.detach(|| run_sweep(&config)).map_err(to_py)?;
    to_dict(py, &report)
}

#[pymodule]
fn oddminor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add("OddMinorError", py.get_type::<OddMinorError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("ContradictionError", py.get_type::<ContradictionError>())?;
    Ok(())
}
