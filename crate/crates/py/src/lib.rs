//! Python bindings: words, group oracles, spec documents and BS normal forms.

use std::fmt::Display;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use shiftforge::constructions::{faithfulness_probe, nonconjugacy_certificate, Handle};
use shiftforge::format::{parse_word, SpecDocument};
use shiftforge::schreier::DEFAULT_WINDOW;
use shiftforge::surfaces::classify;
use shiftforge::words::{self, GroupOracle};

fn value_err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Word", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord(words::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyWord(parse_word(text).map_err(value_err)?))
    }

    fn free_reduce(&self) -> Self {
        PyWord(self.0.free_reduce())
    }

    fn inverse(&self) -> Self {
        PyWord(self.0.inverse())
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyWord(self.0.clone() * other.0.clone())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }
}

fn word_arg(w: &Bound<'_, PyAny>) -> PyResult<words::Word> {
    if let Ok(pw) = w.cast::<PyWord>() {
        return Ok(pw.get().0.clone());
    }
    parse_word(&w.extract::<String>()?).map_err(value_err)
}

#[pyclass(name = "Group", frozen)]
struct PyGroup(GroupOracle);

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn free(rank: usize) -> Self {
        PyGroup(GroupOracle::free(rank))
    }

    #[staticmethod]
    fn free_abelian(rank: usize) -> Self {
        PyGroup(GroupOracle::free_abelian(rank))
    }

    #[staticmethod]
    fn bs(n: u32) -> Self {
        PyGroup(GroupOracle::bs1n(n))
    }

    fn normalize(&self, w: &Bound<'_, PyAny>) -> PyResult<PyWord> {
        Ok(PyWord(self.0.normalize(&word_arg(w)?).map_err(value_err)?))
    }

    fn is_trivial(&self, w: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0.is_trivial(&word_arg(w)?).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        self.0.describe()
    }
}

#[pyclass(name = "Spec", frozen)]
struct PySpec(SpecDocument);

#[pymethods]
impl PySpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySpec(SpecDocument::from_json(text).map_err(value_err)?))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| value_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// Verdict line, e.g. `TRIVIAL` or `NONTRIVIAL moved-coset ... [window 16]`.
    #[pyo3(signature = (system, word, window = DEFAULT_WINDOW))]
    fn eval(&self, system: &str, word: &Bound<'_, PyAny>, window: usize) -> PyResult<String> {
        let handle = self.0.system(system).map_err(value_err)?;
        Ok(handle.solve(&word_arg(word)?, window).map_err(value_err)?.to_string())
    }

    /// Returns `(compared, diverged, summary)`.
    fn probe(&self, system: &str, claimed: &str, radius: usize) -> PyResult<(usize, usize, String)> {
        let model = match self.0.system(system).map_err(value_err)? {
            Handle::Star(h) => h.diagonal,
            Handle::Indicable(h) => h.diagonal,
            other => return Err(value_err(format!("system {system} is {}; probes need a star or indicable system", other.kind()))),
        };
        let group = self.0.group(claimed).map_err(value_err)?;
        let report = faithfulness_probe(&model, &group, radius).map_err(value_err)?;
        Ok((report.compared, report.divergences.len(), report.summary()))
    }

    fn classify(&self, surface: &str) -> PyResult<String> {
        Ok(classify(&self.0.surface(surface).map_err(value_err)?).to_string())
    }

    /// True when complement invariants separate the m- and n-copy embeddings.
    #[pyo3(signature = (surface, m, n, orbit = None))]
    fn certify(&self, surface: &str, m: usize, n: usize, orbit: Option<String>) -> PyResult<bool> {
        let spec = self.0.surface(surface).map_err(value_err)?;
        let coverage = self.0.coverage(surface, &orbit).map_err(value_err)?;
        Ok(nonconjugacy_certificate(&spec, &coverage, m, n).map_err(value_err)?.is_some())
    }
}

#[pyfunction]
fn bs_normal_form(n: u32, word: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(words::bs_normal_form(n, &word_arg(word)?).map_err(value_err)?.to_string())
}

#[pymodule]
fn shiftforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(bs_normal_form, m)?)?;
    m.add("DEFAULT_WINDOW", DEFAULT_WINDOW)?;
    Ok(())
}
