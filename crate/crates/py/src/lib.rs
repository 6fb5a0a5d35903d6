//! Python bindings. Words cross the boundary as text (`"a b^-1"`), reports
//! as dicts decoded from their JSON form.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use raag_embed::braid::{plan_configuration, strand_report};
use raag_embed::embed::{self, BuildOptions, BuildStrategy};
use raag_embed::render::render_named;
use raag_embed::verify::{self, VerifyConfig};
use raag_embed::word::{self, Word};

fn err(e: raag_embed::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A simplicial graph; adjacent generators do not commute.
#[pyclass(name = "Graph", module = "raag_embed", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: raag_embed::graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges=Vec::new()))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let inner = raag_embed::graph::Graph::new(&vertices, &edges).map_err(err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: raag_embed::graph::Graph::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        let g = &self.inner;
        g.edges().map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string())).collect()
    }

    fn commutes(&self, a: &str, b: &str) -> PyResult<bool> {
        let g = &self.inner;
        g.commutes(g.vertex(a).map_err(err)?, g.vertex(b).map_err(err)?).map_err(err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_tree(&self) -> bool {
        self.inner.is_tree()
    }

    /// Normal form of `word`.
    fn reduce(&self, word: &str) -> PyResult<String> {
        let g = &self.inner;
        let w = Word::parse(g, word).map_err(err)?;
        Ok(word::reduce(g, &w).map_err(err)?.to_text(g))
    }

    fn word_length(&self, word: &str) -> PyResult<usize> {
        let g = &self.inner;
        word::word_length(g, &Word::parse(g, word).map_err(err)?).map_err(err)
    }

    fn support(&self, word: &str) -> PyResult<Vec<String>> {
        let g = &self.inner;
        let s = word::support(g, &Word::parse(g, word).map_err(err)?).map_err(err)?;
        Ok(s.into_iter().map(|v| g.name(v).to_string()).collect())
    }

    fn equal(&self, u: &str, v: &str) -> PyResult<bool> {
        let g = &self.inner;
        let (u, v) = (Word::parse(g, u).map_err(err)?, Word::parse(g, v).map_err(err)?);
        word::elements_equal(g, &u, &v).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// An embedding into the group of a finite tree, with its build log.
#[pyclass(name = "Embedding", module = "raag_embed", frozen)]
struct PyEmbedding {
    inner: embed::Embedding,
}

#[pymethods]
impl PyEmbedding {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyEmbedding {
            inner: embed::Embedding::from_json(text).map_err(err)?,
        })
    }

    /// The certificate.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn source(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.source().clone(),
        }
    }

    #[getter]
    fn tree(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.tree().clone(),
        }
    }

    #[getter]
    fn tree_size(&self) -> usize {
        self.inner.tree_size()
    }

    #[getter]
    fn f_set(&self) -> Vec<String> {
        let t = self.inner.tree();
        self.inner.f_set().iter().map(|&i| t.name(i).to_string()).collect()
    }

    /// Generator name to the tree vertices over it.
    fn images<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        let (g, t) = (self.inner.source(), self.inner.tree());
        for v in 0..g.vertex_count() {
            let names: Vec<&str> = self.inner.image(v).iter().map(|&i| t.name(i)).collect();
            d.set_item(g.name(v), names)?;
        }
        Ok(d)
    }

    /// Normal form of the image of `word` in the tree group.
    fn phi(&self, word: &str) -> PyResult<String> {
        let w = Word::parse(self.inner.source(), word).map_err(err)?;
        Ok(self.inner.phi(&w).map_err(err)?.to_text(self.inner.tree()))
    }

    fn phi_length(&self, word: &str) -> PyResult<usize> {
        let w = Word::parse(self.inner.source(), word).map_err(err)?;
        self.inner.phi_length(&w).map_err(err)
    }

    /// Whether the image of the reduced word `word` keeps every F-letter.
    fn check_surviving(&self, word: &str) -> PyResult<bool> {
        let w = Word::parse(self.inner.source(), word).map_err(err)?;
        Ok(embed::check_surviving(&self.inner, &w).map_err(err)?.passed())
    }

    fn structural_problems(&self) -> Vec<String> {
        self.inner.structural_problems()
    }

    #[pyo3(signature = (depth=4, samples=1000, max_len=20, seed=42, jobs=0))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        depth: usize,
        samples: usize,
        max_len: usize,
        seed: u64,
        jobs: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = VerifyConfig {
            depth,
            samples,
            max_len,
            seed,
            jobs,
            ..VerifyConfig::default()
        };
        let report = py.detach(|| verify::verify(&self.inner, &cfg)).map_err(err)?;
        json_to_py(py, &report.to_json())
    }

    fn braid_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| strand_report(&self.inner)).map_err(err)?;
        json_to_py(py, &r.to_json())
    }

    /// The puncture configuration as `dot`, `svg` or `json` text.
    #[pyo3(signature = (format="svg"))]
    fn render(&self, py: Python<'_>, format: &str) -> PyResult<String> {
        let cfg = py.detach(|| plan_configuration(self.inner.tree())).map_err(err)?;
        render_named(&cfg, format).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Embedding({} generators into a {}-vertex tree)",
            self.inner.source().vertex_count(),
            self.inner.tree_size()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (graph, strategy="union"))]
fn build_embedding(py: Python<'_>, graph: &PyGraph, strategy: &str) -> PyResult<PyEmbedding> {
    let strategy = match strategy {
        "union" => BuildStrategy::Union,
        "literal" => BuildStrategy::Literal,
        other => return Err(PyValueError::new_err(format!("unknown strategy `{other}`"))),
    };
    let inner = py
        .detach(|| embed::build_embedding_with(&graph.inner, BuildOptions { strategy }))
        .map_err(err)?;
    Ok(PyEmbedding { inner })
}

#[pymodule]
#[pyo3(name = "raag_embed")]
fn raag_embed_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyEmbedding>()?;
    m.add_function(wrap_pyfunction!(build_embedding, m)?)?;
    Ok(())
}
