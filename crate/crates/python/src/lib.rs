//! Python bindings. Words may be passed either as `Word` objects or as text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use relcalc::dgss;
use relcalc::models::{self, check_model, ModelQuery};
use relcalc::peano;
use relcalc::proof::{self, ProofScript};
use relcalc::rules::{make_system, Equation, SystemName};
use relcalc::search::{prove_equal, SearchConfig, SearchOutcome};
use relcalc::suites::{self, SuiteId};
use relcalc::term;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(name: &str) -> PyResult<SystemName> {
    name.parse().map_err(value_error)
}

#[pyclass(
    name = "Word",
    module = "pyrelcalc",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyWord(term::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        term::parse_word(text).map(PyWord).map_err(value_error)
    }

    /// Atom texts, with a trailing apostrophe on inverted atoms.
    fn atoms(&self) -> Vec<String> {
        self.0.atoms().iter().map(ToString::to_string).collect()
    }

    fn concat(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyWord(self.0.concat(&word_arg(other)?)))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?})", self.0.to_string())
    }
}

fn word_arg(obj: &Bound<'_, PyAny>) -> PyResult<term::Word> {
    if let Ok(w) = obj.extract::<PyRef<'_, PyWord>>() {
        return Ok(w.0.clone());
    }
    let text: String = obj.extract()?;
    term::parse_word(&text).map_err(value_error)
}

#[pyclass(name = "Proof", module = "pyrelcalc", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyProof(proof::Proof);

#[pymethods]
impl PyProof {
    #[getter]
    fn system(&self) -> String {
        self.0.system.to_string()
    }

    #[getter]
    fn goal(&self) -> String {
        self.0.goal.to_string()
    }

    #[getter]
    fn hypotheses(&self) -> Vec<String> {
        self.0.hypotheses.iter().map(ToString::to_string).collect()
    }

    /// `(rule, dir, pos, result)` per step.
    #[getter]
    fn steps(&self) -> Vec<(String, String, usize, String)> {
        self.0
            .steps
            .iter()
            .map(|s| {
                (
                    s.rule.clone(),
                    s.dir.to_string(),
                    s.pos,
                    s.result.to_string(),
                )
            })
            .collect()
    }

    fn reversed(&self) -> Self {
        PyProof(self.0.reversed())
    }

    /// `None` if the checker accepts, otherwise the rejection message.
    fn check(&self) -> Option<String> {
        proof::check_proof(&self.0).err().map(|f| f.to_string())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Proof({:?}, {} steps)",
            self.0.goal.to_string(),
            self.0.len()
        )
    }
}

#[pyclass(name = "Model", module = "pyrelcalc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyModel(models::Model);

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        models::Model::from_text(text)
            .map(PyModel)
            .map_err(value_error)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn table(&self) -> Vec<Vec<usize>> {
        (0..self.0.size()).map(|a| self.0.row(a).to_vec()).collect()
    }

    #[getter]
    fn designated<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in self.0.designated() {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn op(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.0.size();
        if a >= n || b >= n {
            return Err(value_error(format!("elements must be below {n}")));
        }
        Ok(self.0.op(a, b))
    }

    /// Violations of the system's axioms; empty when the model satisfies them.
    fn check(&self, system_name: &str) -> PyResult<Vec<String>> {
        Ok(match check_model(&self.0, system(system_name)?) {
            Ok(()) => Vec::new(),
            Err(vs) => vs.iter().map(ToString::to_string).collect(),
        })
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Model(size={})", self.0.size())
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyWord> {
    PyWord::new(text)
}

#[pyfunction]
#[pyo3(signature = (equation, system = "DIT", hypotheses = Vec::new(), max_depth = 30, max_len = 16, max_nodes = 1_000_000))]
fn prove(
    py: Python<'_>,
    equation: &str,
    system: &str,
    hypotheses: Vec<String>,
    max_depth: usize,
    max_len: usize,
    max_nodes: usize,
) -> PyResult<Option<PyProof>> {
    let goal: Equation = equation.parse().map_err(value_error)?;
    let hyps = hypotheses
        .iter()
        .map(|h| h.parse::<Equation>().map_err(value_error))
        .collect::<PyResult<Vec<_>>>()?;
    let sys = make_system(self::system(system)?);
    let config = SearchConfig {
        max_word_len: max_len,
        max_nodes,
        max_depth,
    };
    let out = py
        .detach(|| prove_equal(&goal, &sys, &hyps, &config))
        .map_err(value_error)?;
    Ok(match out {
        SearchOutcome::Found { proof, .. } => Some(PyProof(proof)),
        SearchOutcome::NotFound { .. } => None,
    })
}

/// Checks a JSON proof script: `None` if accepted, else the rejection message.
#[pyfunction]
fn check(script: &str) -> PyResult<Option<String>> {
    let p = ProofScript::from_json(script)
        .and_then(|s| s.to_proof())
        .map_err(value_error)?;
    Ok(proof::check_proof(&p).err().map(|f| f.to_string()))
}

#[pyfunction]
fn run_suite<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyDict>> {
    let id: SuiteId = name.parse().map_err(value_error)?;
    let report = py.detach(|| suites::run_suite(id));
    let d = PyDict::new(py);
    d.set_item("suite", id.as_str())?;
    d.set_item("passed", report.passed())?;
    d.set_item("total", report.cases.len())?;
    d.set_item("summary", report.summary())?;
    d.set_item("report", report.to_string())?;
    Ok(d)
}

#[pyfunction]
fn free_reduce(w: &Bound<'_, PyAny>) -> PyResult<PyWord> {
    Ok(PyWord(dgss::free_reduce(&word_arg(w)?).into_word()))
}

#[pyfunction]
fn invert(w: &Bound<'_, PyAny>) -> PyResult<PyWord> {
    Ok(PyWord(dgss::invert(&word_arg(w)?)))
}

#[pyfunction]
fn equal_dgss(u: &Bound<'_, PyAny>, v: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(dgss::equal_dgss(&word_arg(u)?, &word_arg(v)?))
}

#[pyfunction]
fn count_models(py: Python<'_>, system: &str, size: usize) -> PyResult<u64> {
    let s = self::system(system)?;
    py.detach(|| models::count_models(s, size))
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (system, size, limit = None))]
fn enumerate_models(
    py: Python<'_>,
    system: &str,
    size: usize,
    limit: Option<usize>,
) -> PyResult<Vec<PyModel>> {
    let q = ModelQuery {
        limit,
        ..ModelQuery::new(self::system(system)?, size)
    };
    let ms = py
        .detach(|| models::enumerate_models(&q))
        .map_err(value_error)?;
    Ok(ms.into_iter().map(PyModel).collect())
}

#[pyfunction]
fn numeral(k: usize) -> PyResult<PyWord> {
    peano::numeral(k)
        .map(|n| PyWord(n.word().clone()))
        .map_err(value_error)
}

#[pyfunction]
fn eval_zero(w: &Bound<'_, PyAny>) -> PyResult<PyWord> {
    Ok(PyWord(peano::eval_zero(&word_arg(w)?)))
}

/// `(all_passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (k_max = 64))]
fn verify_peano(k_max: usize) -> PyResult<(bool, String)> {
    let r = peano::verify_peano(k_max).map_err(value_error)?;
    Ok((r.all_passed(), r.to_string()))
}

#[pymodule]
fn pyrelcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyProof>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(free_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(equal_dgss, m)?)?;
    m.add_function(wrap_pyfunction!(count_models, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_models, m)?)?;
    m.add_function(wrap_pyfunction!(numeral, m)?)?;
    m.add_function(wrap_pyfunction!(eval_zero, m)?)?;
    m.add_function(wrap_pyfunction!(verify_peano, m)?)?;
    Ok(())
}
