//! Python bindings for the riglab core: exact rational matrices, Groebner
//! bases, elimination ideals, rigidity computations, bound reports, and the
//! verification suite. Exact values cross the boundary as strings (rational
//! texts, polynomial texts); structured results come back as plain dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use riglab_core::cyclo::{bounds_report, build_root_matrix};
use riglab_core::detideals::{
    elimination_ideal_direct_with, elimination_ideal_reduced_with, rigidity_ideal, Pattern,
};
use riglab_core::exactla::{bareiss_rank, RationalMatrix};
use riglab_core::groebner::{buchberger_with, Caps, Ideal, SelectionStrategy};
use riglab_core::polyring::{parse_polynomial, parse_rational, MonomialOrder, VarRegistry};
use riglab_core::rigidity::{
    self, family_instance, max_rigidity_certificate, CertOptions, CertTarget, DocumentedRigidity,
    FamilyKind, RigOptions,
};
use riglab_core::verify::{run_all, VerifyConfig};
use riglab_core::Error;

fn pyerr(e: Error) -> PyErr {
    match e {
        Error::ResourceExceeded(_) | Error::SearchExhausted(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn caps_from(caps: Option<(usize, usize)>) -> Caps {
    match caps {
        Some((max_basis_len, max_terms)) => Caps {
            max_basis_len,
            max_terms,
        },
        None => Caps::default(),
    }
}

fn pattern_from(positions: Vec<(usize, usize)>, n: usize) -> PyResult<Pattern> {
    let p = Pattern::new(positions);
    p.validate(n).map_err(pyerr)?;
    Ok(p)
}

fn pattern_list(p: &Pattern) -> Vec<(usize, usize)> {
    p.to_vec()
}

fn order_from(name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => Err(PyValueError::new_err(format!(
            "unknown order {other:?}; use \"lex\" or \"grevlex\""
        ))),
    }
}

/// Matrix entry given either as an exact rational text or as an integer.
#[derive(FromPyObject)]
enum EntryArg {
    Int(i64),
    Text(String),
}

/// An exact rational matrix.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Matrix {
    inner: RationalMatrix,
}

#[pymethods]
impl Matrix {
    /// Matrix(entries): rows of integers or rational texts like "-2/3".
    #[new]
    fn new(entries: Vec<Vec<EntryArg>>) -> PyResult<Self> {
        let texts: Vec<Vec<String>> = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        EntryArg::Int(v) => v.to_string(),
                        EntryArg::Text(t) => t,
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix {
            inner: RationalMatrix::from_texts(&texts).map_err(pyerr)?,
        })
    }

    /// Parse the JSON interchange form {"rows", "cols", "entries"}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j = serde_json::from_str(text)
            .map_err(|e| PyValueError::new_err(format!("matrix json: {e}")))?;
        Ok(Matrix {
            inner: RationalMatrix::from_json(&j).map_err(pyerr)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("matrix serializes")
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.n_rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.n_cols()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<String> {
        if i >= self.inner.n_rows() || j >= self.inner.n_cols() {
            return Err(PyValueError::new_err(format!("entry ({i},{j}) out of range")));
        }
        Ok(self.inner.get(i, j).to_string())
    }

    fn entries(&self) -> Vec<Vec<String>> {
        self.inner.to_json().entries
    }

    /// Exact rank by fraction-free elimination.
    fn rank(&self) -> usize {
        bareiss_rank(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.entries())
    }
}

/// Reduced Groebner basis of the ideal spanned by `generators`.
#[pyfunction]
#[pyo3(signature = (vars, generators, order="grevlex", caps=None))]
fn groebner_basis(
    py: Python<'_>,
    vars: Vec<String>,
    generators: Vec<String>,
    order: &str,
    caps: Option<(usize, usize)>,
) -> PyResult<Vec<String>> {
    let order = order_from(order)?;
    let registry = VarRegistry::new(vars).map_err(pyerr)?;
    let polys = generators
        .iter()
        .map(|g| parse_polynomial(&registry, order, g))
        .collect::<riglab_core::Result<Vec<_>>>()
        .map_err(pyerr)?;
    let ideal = Ideal::new(registry, polys).map_err(pyerr)?;
    let gb = py
        .detach(|| buchberger_with(&ideal, order, caps_from(caps), SelectionStrategy::default()))
        .map_err(pyerr)?;
    Ok(gb.basis().iter().map(|p| p.to_string()).collect())
}

/// Generators of I(n, r, pattern): (r+1)-minors of the pattern-augmented
/// generic matrix. Returns {"vars": [...], "generators": [...]}.
#[pyfunction]
fn pattern_ideal(py: Python<'_>, n: usize, r: usize, pattern: Vec<(usize, usize)>) -> PyResult<Py<PyDict>> {
    let p = pattern_from(pattern, n)?;
    let ideal = rigidity_ideal(n, r, &p).map_err(pyerr)?;
    let j = ideal.to_json();
    let d = PyDict::new(py);
    d.set_item("vars", j.vars)?;
    d.set_item("generators", j.generators)?;
    Ok(d.into())
}

/// Eliminate the change variables from I(n, r, pattern) by both routes.
/// Returns {"vars", "direct", "reduced", "crosscheck"}.
#[pyfunction]
#[pyo3(signature = (n, r, pattern, caps=None))]
fn eliminate(
    py: Python<'_>,
    n: usize,
    r: usize,
    pattern: Vec<(usize, usize)>,
    caps: Option<(usize, usize)>,
) -> PyResult<Py<PyDict>> {
    let p = pattern_from(pattern, n)?;
    let caps = caps_from(caps);
    let (direct, reduced) = py
        .detach(|| -> riglab_core::Result<_> {
            Ok((
                elimination_ideal_direct_with(n, r, &p, caps)?,
                elimination_ideal_reduced_with(n, r, &p, caps)?,
            ))
        })
        .map_err(pyerr)?;
    let dj = direct.to_json();
    let rj = reduced.to_json();
    let d = PyDict::new(py);
    d.set_item("vars", dj.vars.clone())?;
    d.set_item("crosscheck", dj == rj)?;
    d.set_item("direct", dj.generators)?;
    d.set_item("reduced", rj.generators)?;
    Ok(d.into())
}

/// Can rank(A + T) <= r with changes supported inside `pattern`?
#[pyfunction]
#[pyo3(signature = (matrix, r, pattern, caps=None))]
fn pattern_solvable(
    py: Python<'_>,
    matrix: &Matrix,
    r: usize,
    pattern: Vec<(usize, usize)>,
    caps: Option<(usize, usize)>,
) -> PyResult<bool> {
    let p = pattern_from(pattern, matrix.inner.n_rows().max(1))?;
    let a = matrix.inner.clone();
    py.detach(|| rigidity::pattern_solvable_with(&a, r, &p, caps_from(caps)))
        .map_err(pyerr)
}

/// Exact rigidity Rig(A, r). Returns {"value", "witness_pattern",
/// "witness_changes", "ruled_out"}.
#[pyfunction]
#[pyo3(signature = (matrix, r, max_n=4, orbit_reduction=false, caps=None))]
fn rig_exact(
    py: Python<'_>,
    matrix: &Matrix,
    r: usize,
    max_n: usize,
    orbit_reduction: bool,
    caps: Option<(usize, usize)>,
) -> PyResult<Py<PyDict>> {
    let options = RigOptions {
        max_n,
        caps: caps_from(caps),
        orbit_reduction,
    };
    let a = matrix.inner.clone();
    let (result, changes) = py
        .detach(|| -> riglab_core::Result<_> {
            let result = rigidity::rig_exact_with(&a, r, &options)?;
            let changes = rigidity::witness_changes(&a, r, &result.witness_pattern)?;
            Ok((result, changes))
        })
        .map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("value", result.value)?;
    d.set_item("witness_pattern", pattern_list(&result.witness_pattern))?;
    d.set_item("ruled_out", result.ruled_out)?;
    d.set_item(
        "witness_changes",
        changes.map(|t| Matrix { inner: t }.into_pyobject(py).map(Bound::unbind)).transpose()?,
    )?;
    Ok(d.into())
}

/// Does A lie in the Zariski closure of the rank-r fixable set of `pattern`?
/// Returns {"in_closure", "separating_generator", "nonzero_value"}.
#[pyfunction]
#[pyo3(signature = (matrix, r, pattern, caps=None))]
fn closure_member(
    py: Python<'_>,
    matrix: &Matrix,
    r: usize,
    pattern: Vec<(usize, usize)>,
    caps: Option<(usize, usize)>,
) -> PyResult<Py<PyDict>> {
    let p = pattern_from(pattern, matrix.inner.n_rows().max(1))?;
    let a = matrix.inner.clone();
    let decision = py
        .detach(|| rigidity::closure_member_with(&a, r, &p, caps_from(caps)))
        .map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("in_closure", decision.in_closure)?;
    d.set_item(
        "separating_generator",
        decision.separating_generator.map(|g| g.to_string()),
    )?;
    d.set_item("nonzero_value", decision.nonzero_value.map(|v| v.to_string()))?;
    Ok(d.into())
}

/// Build a named example family instance. Returns {"name", "matrix",
/// "documented_rigidity_at_rank_1", "note"}.
#[pyfunction]
#[pyo3(signature = (name, n=None, delta=None))]
fn family(py: Python<'_>, name: &str, n: Option<usize>, delta: Option<&str>) -> PyResult<Py<PyDict>> {
    let kind = FamilyKind::parse(name).map_err(pyerr)?;
    let delta = delta.map(parse_rational).transpose().map_err(pyerr)?;
    let instance = family_instance(kind, n, delta).map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("name", instance.kind.name())?;
    d.set_item("matrix", Matrix { inner: instance.matrix }.into_pyobject(py)?)?;
    let documented = match instance.documented {
        DocumentedRigidity::Exact(v) => format!("exact {v}"),
        DocumentedRigidity::AtMost(v) => format!("at most {v}"),
    };
    d.set_item("documented_rigidity_at_rank_1", documented)?;
    d.set_item("note", instance.note)?;
    Ok(d.into())
}

/// Root-order and elimination-degree bounds for size n, target rank r.
#[pyfunction]
fn bounds(py: Python<'_>, n: usize, r: usize) -> PyResult<Py<PyDict>> {
    let report = bounds_report(n, r).map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("delta_full", report.delta_full.to_string())?;
    d.set_item("delta_full_value", report.delta_full.value.to_string())?;
    d.set_item("delta_reduced", report.delta_reduced.to_string())?;
    d.set_item("delta_reduced_value", report.delta_reduced.value.to_string())?;
    d.set_item("degree_bound_full", report.degree_bound_full.to_string())?;
    d.set_item("degree_bound_reduced", report.degree_bound_reduced.to_string())?;
    d.set_item("full_below_delta", report.full_below_delta)?;
    d.set_item("reduced_below_delta", report.reduced_below_delta)?;
    Ok(d.into())
}

/// Desk-scale certificate run: build the n x n root-of-unity matrix on the
/// given distinct primes (row-major, one per entry) and certify that every
/// pattern one short of (n-r)^2 cells leaves it unfixable. Returns
/// {"total", "certified", "all_certified", "implied_rigidity"}.
#[pyfunction]
#[pyo3(signature = (n, primes, r, seed=0))]
fn certify_root_matrix(
    py: Python<'_>,
    n: usize,
    primes: Vec<u64>,
    r: usize,
    seed: u64,
) -> PyResult<Py<PyDict>> {
    let matrix = build_root_matrix(n, &primes, true).map_err(pyerr)?;
    let options = CertOptions {
        seed,
        ..CertOptions::default()
    };
    let report = py
        .detach(|| max_rigidity_certificate(CertTarget::Roots(&matrix), r, &options))
        .map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("total", report.total)?;
    d.set_item("certified", report.certified)?;
    d.set_item("all_certified", report.all_certified)?;
    d.set_item("implied_rigidity", report.implied_rigidity)?;
    Ok(d.into())
}

/// Run the verification suite. Returns a list of check dicts.
#[pyfunction]
#[pyo3(signature = (only=None, seed=0, caps=None))]
fn verify_paper(
    py: Python<'_>,
    only: Option<String>,
    seed: u64,
    caps: Option<(usize, usize)>,
) -> PyResult<Py<PyList>> {
    let config = VerifyConfig {
        seed,
        caps: caps_from(caps),
        only,
    };
    let results = py.detach(|| run_all(&config));
    let list = PyList::empty(py);
    for check in results {
        let d = PyDict::new(py);
        d.set_item("id", check.id)?;
        d.set_item("description", check.description)?;
        d.set_item("expected", check.expected)?;
        d.set_item("actual", check.actual)?;
        d.set_item("passed", check.passed)?;
        d.set_item("notes", check.notes)?;
        d.set_item("runtime_ms", check.runtime_ms as u64)?;
        list.append(d)?;
    }
    Ok(list.into())
}

#[pymodule]
fn riglab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matrix>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_solvable, m)?)?;
    m.add_function(wrap_pyfunction!(rig_exact, m)?)?;
    m.add_function(wrap_pyfunction!(closure_member, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(certify_root_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
