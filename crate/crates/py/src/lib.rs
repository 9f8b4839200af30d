//! Python bindings: the `sgforge` extension module exposes the semigroup
//! type and the main operations (construction, satisfaction, division,
//! enumeration, classification, catalog verification).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use sgforge_core::catalog;
use sgforge_core::classify;
use sgforge_core::division::{self, DivisionConfig};
use sgforge_core::enumerate;
use sgforge_core::satisfy::{self, SearchBounds};
use sgforge_core::semigroup::{key_to_hex, AdjoinMode, CanonicalMode};
use sgforge_core::term::{word_stats, Pseudoidentity, Word};
use sgforge_core::transform::{self, AugmentMode};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_canonical_mode(mode: &str) -> PyResult<CanonicalMode> {
    match mode {
        "iso" => Ok(CanonicalMode::Iso),
        "equiv" => Ok(CanonicalMode::IsoAntiIso),
        _ => Err(value_err("mode must be 'iso' or 'equiv'")),
    }
}

fn parse_bar_mode(mode: &str) -> PyResult<AugmentMode> {
    match mode {
        "bar" => Ok(AugmentMode::Bar),
        "flat" => Ok(AugmentMode::Flat),
        _ => Err(value_err("mode must be 'bar' or 'flat'")),
    }
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64()
                    .unwrap_or(f64::NAN)
                    .into_pyobject(py)?
                    .unbind()
                    .into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value).map_err(value_err)?;
    json_to_py(py, &json)
}

/// A finite semigroup given by its multiplication table.
#[pyclass(frozen, name = "Semigroup", from_py_object)]
#[derive(Clone)]
struct PySemigroup {
    inner: sgforge_core::Semigroup,
}

impl From<sgforge_core::Semigroup> for PySemigroup {
    fn from(inner: sgforge_core::Semigroup) -> Self {
        PySemigroup { inner }
    }
}

#[pymethods]
impl PySemigroup {
    /// Validates a square table; raises ValueError when it is not closed
    /// or not associative.
    #[new]
    fn new(table: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(sgforge_core::Semigroup::from_rows(&table)
            .map_err(value_err)?
            .into())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(String::from)
    }

    #[getter]
    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.inner.order() || b >= self.inner.order() {
            return Err(value_err("element out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    fn product(&self, other: &PySemigroup) -> PySemigroup {
        self.inner.product(&other.inner).into()
    }

    fn opposite(&self) -> PySemigroup {
        self.inner.opposite().into()
    }

    #[pyo3(signature = (always = true))]
    fn adjoin_identity(&self, always: bool) -> PySemigroup {
        let mode = if always {
            AdjoinMode::Always
        } else {
            AdjoinMode::Bullet
        };
        self.inner.adjoin_identity(mode).into()
    }

    fn closure(&self, seed: Vec<usize>) -> PyResult<Vec<usize>> {
        self.inner.closure(&seed).map_err(value_err)
    }

    fn rees_quotient(&self, ideal: Vec<usize>) -> PyResult<PySemigroup> {
        Ok(self.inner.rees_quotient(&ideal).map_err(value_err)?.into())
    }

    fn idempotents(&self) -> Vec<usize> {
        self.inner.idempotents()
    }

    fn is_monoid(&self) -> bool {
        self.inner.is_monoid()
    }

    fn power(&self, x: usize, k: usize) -> PyResult<usize> {
        if x >= self.inner.order() || k == 0 {
            return Err(value_err("bad element or exponent"));
        }
        Ok(self.inner.power(x, k))
    }

    fn omega_power(&self, x: usize) -> PyResult<usize> {
        if x >= self.inner.order() {
            return Err(value_err("element out of range"));
        }
        Ok(self.inner.omega_power(x))
    }

    /// Green's relation classes for one of "L", "R", "J", "H".
    fn green_classes(&self, relation: &str) -> PyResult<Vec<Vec<usize>>> {
        let rel = match relation {
            "L" => sgforge_core::GreenRelation::L,
            "R" => sgforge_core::GreenRelation::R,
            "J" => sgforge_core::GreenRelation::J,
            "H" => sgforge_core::GreenRelation::H,
            _ => return Err(value_err("relation must be one of L, R, J, H")),
        };
        Ok(sgforge_core::green_partition(&self.inner, rel).blocks())
    }

    fn minimal_ideal(&self) -> Vec<usize> {
        sgforge_core::minimal_ideal(&self.inner)
    }

    fn is_sdi(&self) -> bool {
        sgforge_core::is_sdi(&self.inner)
    }

    /// Canonical key as lowercase hex; equal keys mean isomorphic
    /// (mode "iso") or isomorphic-or-anti-isomorphic (mode "equiv").
    #[pyo3(signature = (mode = "equiv"))]
    fn canonical_key(&self, mode: &str) -> PyResult<String> {
        let mode = parse_canonical_mode(mode)?;
        Ok(key_to_hex(&self.inner.canonical_key(mode)))
    }

    fn is_isomorphic(&self, other: &PySemigroup) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn is_equivalent(&self, other: &PySemigroup) -> bool {
        self.inner.is_equivalent(&other.inner)
    }

    #[pyo3(signature = (mode = "bar"))]
    fn augment(&self, mode: &str) -> PyResult<PySemigroup> {
        Ok(transform::augment(&self.inner, parse_bar_mode(mode)?).into())
    }

    fn rlm(&self) -> PySemigroup {
        transform::rlm(&self.inner).into()
    }

    /// The right regular representation as `{"degree": d, "maps": [...]}`.
    fn right_regular(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &transform::right_regular(&self.inner))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        match self.inner.name() {
            Some(name) => format!("Semigroup({name}, order={})", self.inner.order()),
            None => format!("Semigroup(order={})", self.inner.order()),
        }
    }
}

/// Builds a catalog semigroup by name (e.g. "B2", "Z6", "N3I", "O4").
#[pyfunction]
fn named(name: &str) -> PyResult<PySemigroup> {
    Ok(catalog::build_named(name).map_err(value_err)?.into())
}

/// The Rees matrix semigroup with zero over a group. `matrix[b][a]` is a
/// group element index or None for the zero entry.
#[pyfunction]
fn rees_matrix_zero(
    group: &PySemigroup,
    rows: usize,
    cols: usize,
    matrix: Vec<Vec<Option<usize>>>,
) -> PyResult<PySemigroup> {
    Ok(catalog::rees_matrix_zero(&group.inner, rows, cols, &matrix)
        .map_err(value_err)?
        .into())
}

/// Checks `lhs = rhs` (term grammar) on a semigroup. Returns a dict with
/// `satisfied` and, when violated, a replaying `witness`.
#[pyfunction]
fn check(py: Python<'_>, s: &PySemigroup, pseudoidentity: &str) -> PyResult<Py<PyAny>> {
    let pid = Pseudoidentity::parse(pseudoidentity).map_err(value_err)?;
    let report = satisfy::satisfies(&s.inner, &pid);
    to_py(py, &report)
}

/// True when every local monoid `uSu` satisfies the pseudoidentity.
#[pyfunction]
fn check_local(s: &PySemigroup, pseudoidentity: &str) -> PyResult<bool> {
    let pid = Pseudoidentity::parse(pseudoidentity).map_err(value_err)?;
    Ok(satisfy::in_local(&s.inner, &pid))
}

/// Parses a term and returns its normalized rendering.
#[pyfunction]
fn normalize_term(text: &str) -> PyResult<String> {
    Ok(sgforge_core::parse_term(text)
        .map_err(value_err)?
        .to_string())
}

/// Occurrence counts, content, and initial/final parts of a word.
#[pyfunction]
fn stats(py: Python<'_>, word: &str) -> PyResult<Py<PyAny>> {
    let term = sgforge_core::parse_term(word).map_err(value_err)?;
    let word: Word = term
        .as_plain_word()
        .ok_or_else(|| value_err("expected a plain word"))?;
    let st = word_stats(&word);
    let dict = PyDict::new(py);
    let occ = PyDict::new(py);
    for (l, c) in &st.occ {
        occ.set_item(l.to_string(), c)?;
    }
    dict.set_item("occ", occ)?;
    dict.set_item(
        "con",
        st.con.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    )?;
    dict.set_item("ini", st.ini.to_string())?;
    dict.set_item("fin", st.fin.to_string())?;
    Ok(dict.unbind().into())
}

/// Division test: does `s` divide `t`?
#[pyfunction]
#[pyo3(signature = (s, t, exact_bound = 20, max_generators = 4))]
fn divides(
    py: Python<'_>,
    s: &PySemigroup,
    t: &PySemigroup,
    exact_bound: usize,
    max_generators: usize,
) -> PyResult<Py<PyAny>> {
    let cfg = DivisionConfig {
        exact_bound,
        max_generators,
    };
    to_py(py, &division::divides(&s.inner, &t.inner, &cfg))
}

/// Searches for an identity satisfied by `a` and violated by `b`.
#[pyfunction]
#[pyo3(signature = (a, b, max_letters = 3, max_length = 8, samples = 0, seed = 0x5eed))]
fn separate(
    a: &PySemigroup,
    b: &PySemigroup,
    max_letters: usize,
    max_length: usize,
    samples: usize,
    seed: u64,
) -> Option<String> {
    let bounds = SearchBounds {
        max_letters,
        max_length,
        samples,
        seed,
    };
    satisfy::separation_search(&a.inner, &b.inner, &bounds).map(|p| p.to_string())
}

/// Iterates bar/flat operators from a seed, returning the whole chain.
#[pyfunction]
#[pyo3(signature = (seed, pattern = "bar,flat", depth = 3, cap = 64))]
fn hierarchy(
    seed: &PySemigroup,
    pattern: &str,
    depth: usize,
    cap: usize,
) -> PyResult<Vec<PySemigroup>> {
    let ops: Result<Vec<AugmentMode>, PyErr> = pattern
        .split(',')
        .map(|p| parse_bar_mode(p.trim()))
        .collect();
    let chain = transform::hierarchy_iterate(&seed.inner, &ops?, depth, cap).map_err(value_err)?;
    Ok(chain.into_iter().map(PySemigroup::from).collect())
}

/// Enumerates the semigroups of one order. Returns a dict with the counts
/// and the class representatives.
#[pyfunction]
#[pyo3(signature = (order, mode = "equiv"))]
fn enumerate_order(py: Python<'_>, order: usize, mode: &str) -> PyResult<Py<PyAny>> {
    let result =
        enumerate::enumerate_semigroups(order, parse_canonical_mode(mode)?).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("order", result.order)?;
    dict.set_item("labeled", result.counts.labeled)?;
    dict.set_item("up_to_iso", result.counts.up_to_iso)?;
    dict.set_item("up_to_equivalence", result.counts.up_to_equivalence)?;
    let classes = PyList::empty(py);
    for s in result.classes {
        classes.append(PySemigroup::from(s).into_pyobject(py)?)?;
    }
    dict.set_item("classes", classes)?;
    Ok(dict.unbind().into())
}

/// Classifies one semigroup: ji with a target, non-ji, or unclassified.
#[pyfunction]
fn classify_semigroup(py: Python<'_>, s: &PySemigroup) -> PyResult<Py<PyAny>> {
    let record = classify::classify_one(&s.inner).map_err(value_err)?;
    to_py(py, &record)
}

/// Enumerates and classifies all orders from 2 to `max_order`.
#[pyfunction]
#[pyo3(signature = (max_order = 5))]
fn classify_orders(py: Python<'_>, max_order: usize) -> PyResult<Py<PyAny>> {
    let summary = classify::classify_small_orders(max_order).map_err(value_err)?;
    to_py(py, &summary)
}

/// Re-derives every catalog record; returns a list of check dicts.
#[pyfunction]
fn verify_catalog(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &catalog::verify_catalog().checks)
}

#[pymodule]
fn sgforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemigroup>()?;
    m.add_function(wrap_pyfunction!(named, m)?)?;
    m.add_function(wrap_pyfunction!(rees_matrix_zero, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_local, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_term, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(divides, m)?)?;
    m.add_function(wrap_pyfunction!(separate, m)?)?;
    m.add_function(wrap_pyfunction!(hierarchy, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_order, m)?)?;
    m.add_function(wrap_pyfunction!(classify_semigroup, m)?)?;
    m.add_function(wrap_pyfunction!(classify_orders, m)?)?;
    m.add_function(wrap_pyfunction!(verify_catalog, m)?)?;
    Ok(())
}
