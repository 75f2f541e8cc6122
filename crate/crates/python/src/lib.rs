//! Python bindings: graphs, permutation groups, the full analysis report and
//! the main-statement verifier.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sdtgraph::autsearch::automorphism_group;
use sdtgraph::corpus;
use sdtgraph::design::enumerate_small_one_designs;
use sdtgraph::generators::parse_generators;
use sdtgraph::graph::{diameter, distance_regular, girth_data, Girth};
use sdtgraph::graph6::{encode_graph6, parse_graph6};
use sdtgraph::harness::{case_order, tetravalent_order, verify_main_theorem};
use sdtgraph::report::{analyze as analyze_report, AnalysisOptions, GroupChoice};
use sdtgraph::{Error, GeneratedGroup};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::TheoremViolation { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Graph", module = "sdtgraph_py", frozen)]
struct PyGraph {
    inner: sdtgraph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = sdtgraph::Graph::from_edges(n, edges).map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_graph6(text.trim()).map_err(to_py)?,
        })
    }

    /// A graph from the built-in corpus, e.g. `"Petersen"`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: corpus::find(name).map_err(to_py)?.graph(),
        })
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        corpus::names()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    /// Common degree, or `None` when the graph is not regular.
    fn valency(&self) -> Option<usize> {
        self.inner.valency()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn graph6(&self) -> String {
        encode_graph6(&self.inner)
    }

    /// Length of a shortest cycle, `None` for forests.
    fn girth(&self) -> Option<usize> {
        match girth_data(&self.inner).girth {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    fn diameter(&self) -> PyResult<usize> {
        diameter(&self.inner).map_err(to_py)
    }

    /// `(b, c)` when distance-regular, else `None`.
    fn intersection_array(&self) -> PyResult<Option<(Vec<usize>, Vec<usize>)>> {
        let dr = distance_regular(&self.inner).map_err(to_py)?;
        Ok(dr.array().map(|a| (a.b.clone(), a.c.clone())))
    }

    fn automorphism_group(&self) -> PyGroup {
        PyGroup {
            inner: automorphism_group(&self.inner).0,
        }
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Group", module = "sdtgraph_py", frozen)]
struct PyGroup {
    inner: GeneratedGroup,
}

#[pymethods]
impl PyGroup {
    /// Generators in cycle notation, one per line, acting on `0..degree`.
    #[new]
    fn new(degree: usize, generators: &str) -> PyResult<Self> {
        let gens = parse_generators(generators, degree).map_err(to_py)?;
        let inner = if gens.is_empty() {
            GeneratedGroup::trivial(degree)
        } else {
            GeneratedGroup::new(gens).map_err(to_py)?
        };
        Ok(PyGroup { inner })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    fn orbit(&self, point: usize) -> PyResult<Vec<usize>> {
        let mut o = self.inner.orbit_of(point).map_err(to_py)?;
        o.sort_unstable();
        Ok(o)
    }

    fn contains(&self, images: Vec<usize>) -> PyResult<bool> {
        let p = sdtgraph::Permutation::new(images).map_err(to_py)?;
        Ok(p.degree() == self.inner.degree() && self.inner.contains(&p))
    }

    fn __repr__(&self) -> String {
        format!("Group(degree={}, order={})", self.inner.degree(), self.inner.order())
    }
}

fn choice(group: Option<&PyGroup>) -> GroupChoice {
    match group {
        Some(g) => GroupChoice {
            id: "given".into(),
            group: Some(g.inner.clone()),
        },
        None => GroupChoice::full(),
    }
}

/// Full analysis report as a dict; the full automorphism group is used when
/// `group` is omitted.
#[pyfunction]
#[pyo3(signature = (graph, group = None, graph_id = "graph"))]
fn analyze(py: Python<'_>, graph: &PyGraph, group: Option<&PyGroup>, graph_id: &str) -> PyResult<Py<PyAny>> {
    let report = analyze_report(&graph.inner, graph_id, choice(group), &AnalysisOptions::default()).map_err(to_py)?;
    json_to_py(py, &report.to_json().map_err(to_py)?)
}

/// Verdict on the distance-regularity and girth statements, as a dict.
#[pyfunction]
#[pyo3(signature = (graph, group = None, graph_id = "graph"))]
fn verify(py: Python<'_>, graph: &PyGraph, group: Option<&PyGroup>, graph_id: &str) -> PyResult<Py<PyAny>> {
    let c = choice(group);
    let g = c.group.unwrap_or_else(|| automorphism_group(&graph.inner).0);
    let verdict = verify_main_theorem(&graph.inner, &g, graph_id, &c.id).map_err(to_py)?;
    let text = serde_json::to_string(&verdict).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &text)
}

/// Candidate order `11*3^(d-2) - 1`.
#[pyfunction]
fn case_graph_order(d: usize) -> PyResult<u128> {
    case_order(d).map_err(to_py)
}

/// Candidate tetravalent order `(6 + 12/c_d)*3^(d-2) - 1`.
#[pyfunction]
fn tetravalent_graph_order(c_d: usize, d: usize) -> PyResult<u128> {
    tetravalent_order(c_d, d).map_err(to_py)
}

/// 1-designs on `k` points with blocks of size `c`, as
/// `(lambda_1, block_count, strength, labelings)` tuples.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn small_one_designs(k: usize, c: usize) -> PyResult<Vec<(usize, usize, usize, Vec<Vec<Vec<usize>>>)>> {
    Ok(enumerate_small_one_designs(k, c)
        .map_err(to_py)?
        .into_iter()
        .map(|cl| (cl.lambda_1, cl.block_count, cl.strength, cl.labelings))
        .collect())
}

#[pymodule]
fn sdtgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(case_graph_order, m)?)?;
    m.add_function(wrap_pyfunction!(tetravalent_graph_order, m)?)?;
    m.add_function(wrap_pyfunction!(small_one_designs, m)?)?;
    Ok(())
}
