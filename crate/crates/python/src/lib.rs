//! Python bindings. Label sets come back as sorted lists, edges as
//! `(u, v)` tuples with `u < v`, and reports as plain dicts.

use std::collections::BTreeSet;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use unicore::cli::analyze;
use unicore::core::{core_by_deletion, core_tree_by_matching, core_unicyclic, CoreResult};
use unicore::gen::{FIXTURES, GENERATOR_ID};
use unicore::oracle::{oracle_analyze, DEFAULT_LIMIT};
use unicore::verify::{run_campaign, VerifyConfig};
use unicore::{Edge, Error, GraphClass};

create_exception!(unicore, UnsupportedGraphError, PyValueError, "Graph class not handled by the operation.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnsupportedClass(_) | Error::NotUnicyclic(_) => UnsupportedGraphError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn sorted(set: BTreeSet<String>) -> Vec<String> {
    set.into_iter().collect()
}

fn pair(e: Edge) -> (String, String) {
    (e.0, e.1)
}

fn class_name(c: GraphClass) -> String {
    format!("{c:?}")
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Result of a core computation.
#[pyclass(name = "CoreResult", module = "unicore", frozen, get_all)]
struct PyCoreResult {
    core: Vec<String>,
    method: String,
    /// `{x: core(T_x)}` for structural answers, else `None`.
    certificate: Option<Vec<(String, Vec<String>)>>,
}

impl From<CoreResult> for PyCoreResult {
    fn from(r: CoreResult) -> Self {
        PyCoreResult {
            core: sorted(r.core),
            method: format!("{:?}", r.method),
            certificate: r.certificate.map(|c| c.into_iter().map(|(x, s)| (x, sorted(s))).collect()),
        }
    }
}

#[pymethods]
impl PyCoreResult {
    fn __repr__(&self) -> String {
        format!("CoreResult(core={:?}, method={})", self.core, self.method)
    }
}

/// A simple undirected graph with string labels.
#[pyclass(name = "Graph", module = "unicore", frozen)]
struct PyGraph {
    inner: unicore::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (edges, vertices = None))]
    fn new(edges: Vec<(String, String)>, vertices: Option<Vec<String>>) -> PyResult<Self> {
        let inner = match vertices {
            Some(v) => unicore::Graph::from_vertices_and_edges(&v, &edges),
            None => unicore::Graph::from_edges(&edges),
        };
        Ok(PyGraph { inner: inner.map_err(to_py)? })
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: unicore::parse_graph(text).map_err(to_py)? })
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: unicore::fixture(name).map_err(to_py)? })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, class={})", self.inner.order(), self.inner.size(), self.inner.classify())
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(str::to_owned).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner.edges().into_iter().map(pair).collect()
    }

    fn classify(&self) -> String {
        class_name(self.inner.classify())
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn delete_vertices(&self, vertices: Vec<String>) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.delete_vertices(&vertices).map_err(to_py)? })
    }

    fn delete_edge(&self, u: &str, v: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.delete_edge(u, v).map_err(to_py)? })
    }

    fn alpha(&self) -> PyResult<usize> {
        unicore::alpha(&self.inner).map_err(to_py)
    }

    fn mu(&self) -> PyResult<usize> {
        unicore::mu(&self.inner).map_err(to_py)
    }

    fn max_matching(&self) -> PyResult<Vec<(String, String)>> {
        let m = unicore::max_matching(&self.inner).map_err(to_py)?;
        Ok(m.edges.into_iter().map(pair).collect())
    }

    fn is_koenig_egervary(&self) -> PyResult<bool> {
        unicore::is_koenig_egervary(&self.inner).map_err(to_py)
    }

    fn is_alpha_critical(&self, u: &str, v: &str) -> PyResult<bool> {
        unicore::is_alpha_critical(&self.inner, &Edge::new(u, v)).map_err(to_py)
    }

    /// α-critical edges of the cycle, in cycle order.
    fn alpha_critical_cycle_edges(&self) -> PyResult<Vec<(String, String)>> {
        let edges = unicore::cycle_alpha_critical_edges(&self.inner).map_err(to_py)?;
        Ok(edges.into_iter().map(pair).collect())
    }

    /// `method` is one of `auto`, `deletion`, `tree_matching`, `unicyclic`.
    #[pyo3(signature = (method = "auto"))]
    fn core(&self, py: Python<'_>, method: &str) -> PyResult<PyCoreResult> {
        let g = &self.inner;
        let route: fn(&unicore::Graph) -> unicore::Result<CoreResult> = match method {
            "auto" => unicore::core,
            "deletion" => core_by_deletion,
            "tree_matching" => core_tree_by_matching,
            "unicyclic" => core_unicyclic,
            other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
        };
        let r = py.detach(|| route(g)).map_err(to_py)?;
        Ok(r.into())
    }

    /// Cycle walk, cycle edges, `N₁(C)` and the pendant trees keyed by
    /// attachment vertex.
    fn find_cycle<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let info = self.inner.find_cycle().map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("cycle", &info.cycle_vertices)?;
        d.set_item("cycle_edges", info.cycle_edges.into_iter().map(pair).collect::<Vec<_>>())?;
        d.set_item("n1", sorted(info.n1))?;
        let trees = PyDict::new(py);
        for pt in info.pendant_trees {
            trees.set_item(pt.x, (pt.y, PyGraph { inner: pt.tree }))?;
        }
        d.set_item("pendant_trees", trees)?;
        Ok(d)
    }

    /// The full analysis report as a dict (same fields as `unicore analyze --json`).
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let g = &self.inner;
        let report = py.detach(|| analyze(g)).map_err(to_py)?;
        json_to_py(py, &report.to_json())
    }

    /// Exhaustive ground truth; raises for graphs above `limit` vertices.
    #[pyo3(signature = (limit = DEFAULT_LIMIT))]
    fn oracle<'py>(&self, py: Python<'py>, limit: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = oracle_analyze(&self.inner, limit).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("alpha", r.alpha)?;
        d.set_item("mu", r.mu)?;
        d.set_item("num_mis", r.num_mis)?;
        d.set_item("core", sorted(r.core))?;
        let sample = PyList::empty(py);
        for s in r.omega_sample {
            sample.append(sorted(s))?;
        }
        d.set_item("omega_sample", sample)?;
        Ok(d)
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyGraph> {
    PyGraph::parse(text)
}

#[pyfunction]
fn fixture(name: &str) -> PyResult<PyGraph> {
    PyGraph::fixture(name)
}

#[pyfunction]
fn gen_tree(n: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: unicore::gen_tree(n, seed).map_err(to_py)? })
}

#[pyfunction]
fn gen_unicyclic(n: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: unicore::gen_unicyclic(n, seed).map_err(to_py)? })
}

#[pyfunction]
fn gen_forest(n: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: unicore::gen_forest(n, seed).map_err(to_py)? })
}

/// Runs a seeded verification campaign and returns its summary dict.
#[pyfunction]
#[pyo3(signature = (count = 100, max_n = 14, seed = 0, kind = "mixed", min_n = None, oracle_limit = DEFAULT_LIMIT))]
fn verify<'py>(
    py: Python<'py>,
    count: usize,
    max_n: usize,
    seed: u64,
    kind: &str,
    min_n: Option<usize>,
    oracle_limit: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = kind.parse().map_err(to_py)?;
    let cfg = VerifyConfig { count, min_n, max_n, seed, kind, oracle_limit };
    let summary = py.detach(|| run_campaign(&cfg)).map_err(to_py)?;
    let text = serde_json::to_string(&summary).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &text)
}

#[pymodule]
#[pyo3(name = "unicore")]
fn unicore_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCoreResult>()?;
    m.add("UnsupportedGraphError", m.py().get_type::<UnsupportedGraphError>())?;
    m.add("FIXTURES", FIXTURES.to_vec())?;
    m.add("GENERATOR_ID", GENERATOR_ID)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tree, m)?)?;
    m.add_function(wrap_pyfunction!(gen_unicyclic, m)?)?;
    m.add_function(wrap_pyfunction!(gen_forest, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
