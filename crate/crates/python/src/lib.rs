//! Python bindings. Indices are 0-based, edges are `(man, woman)` tuples,
//! matchings are lists of edges and levels are `"weak"`, `"strong"` or
//! `"super"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use smti_core::io;
use smti_core::oracle;
use smti_core::reductions::{self, generate};
use smti_core::solvers::{self, FptOptions};
use smti_core::{Edge, Matching, RestrictedEdgeSets, SatFormula, StabilityLevel, TieGroups, Vertex};

type PyEdge = (usize, usize);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn level(s: &str) -> PyResult<StabilityLevel> {
    s.parse().map_err(value_err)
}

fn edges(list: Option<Vec<PyEdge>>) -> impl Iterator<Item = Edge> {
    list.unwrap_or_default().into_iter().map(|(u, w)| Edge::new(u, w))
}

fn restrictions(
    forbidden: Option<Vec<PyEdge>>,
    forced: Option<Vec<PyEdge>>,
    free: Option<Vec<PyEdge>>,
) -> RestrictedEdgeSets {
    RestrictedEdgeSets::new()
        .with_forbidden(edges(forbidden))
        .with_forced(edges(forced))
        .with_free(edges(free))
}

fn to_py(m: &Matching) -> Vec<PyEdge> {
    m.edges().iter().map(|e| (e.man, e.woman)).collect()
}

fn from_py(inst: &smti_core::Instance, m: Vec<PyEdge>) -> PyResult<Matching> {
    Matching::from_edges(inst.n_men(), inst.n_women(), edges(Some(m))).map_err(value_err)
}

fn set_to_py<'a>(set: impl IntoIterator<Item = &'a Edge>) -> Vec<PyEdge> {
    set.into_iter().map(|e| (e.man, e.woman)).collect()
}

/// A bipartite instance with weakly ordered preference lists.
#[pyclass(frozen, skip_from_py_object, module = "smti")]
#[derive(Clone)]
struct Instance {
    inner: smti_core::Instance,
}

#[pymethods]
impl Instance {
    /// `men[i]` is man `i`'s list as tie-groups of women, best first;
    /// `women` likewise.
    #[new]
    fn new(men: Vec<TieGroups>, women: Vec<TieGroups>) -> PyResult<Self> {
        let inner = smti_core::Instance::from_lists(&men, &women).map_err(value_err)?;
        Ok(Instance { inner })
    }

    /// Parses the text format; returns the instance and a dict of
    /// restricted edge lists.
    #[staticmethod]
    fn from_text(py: Python<'_>, text: &str) -> PyResult<(Instance, Py<PyAny>)> {
        let (inner, r) = io::parse_instance(text).map_err(value_err)?;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("forbidden", set_to_py(&r.forbidden))?;
        d.set_item("forced", set_to_py(&r.forced))?;
        d.set_item("free", set_to_py(&r.free))?;
        Ok((Instance { inner }, d.into_any().unbind()))
    }

    #[pyo3(signature = (forbidden=None, forced=None, free=None))]
    fn to_text(
        &self,
        forbidden: Option<Vec<PyEdge>>,
        forced: Option<Vec<PyEdge>>,
        free: Option<Vec<PyEdge>>,
    ) -> String {
        io::serialize_instance(&self.inner, &restrictions(forbidden, forced, free))
    }

    #[getter]
    fn n_men(&self) -> usize {
        self.inner.n_men()
    }

    #[getter]
    fn n_women(&self) -> usize {
        self.inner.n_women()
    }

    #[getter]
    fn edges(&self) -> Vec<PyEdge> {
        set_to_py(self.inner.edges())
    }

    fn men_list(&self, i: usize) -> PyResult<TieGroups> {
        if i >= self.inner.n_men() {
            return Err(value_err(format!("no man {i}")));
        }
        Ok(self.inner.preference_list(Vertex::Man(i)))
    }

    fn women_list(&self, j: usize) -> PyResult<TieGroups> {
        if j >= self.inner.n_women() {
            return Err(value_err(format!("no woman {j}")));
        }
        Ok(self.inner.preference_list(Vertex::Woman(j)))
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n_men={}, n_women={}, edges={})",
            self.inner.n_men(),
            self.inner.n_women(),
            self.inner.n_edges()
        )
    }
}

/// Violation messages; an empty list means the matching is stable.
#[pyfunction]
#[pyo3(signature = (instance, matching, level, forbidden=None, forced=None, free=None))]
fn verify(
    instance: &Instance,
    matching: Vec<PyEdge>,
    level: &str,
    forbidden: Option<Vec<PyEdge>>,
    forced: Option<Vec<PyEdge>>,
    free: Option<Vec<PyEdge>>,
) -> PyResult<Vec<String>> {
    let m = from_py(&instance.inner, matching)?;
    let r = restrictions(forbidden, forced, free);
    let v = smti_core::verify_stable(&instance.inner, &r, &m, self::level(level)?);
    Ok(v.violations.iter().map(ToString::to_string).collect())
}

/// Edges blocking `matching` at `level`, ignoring restrictions.
#[pyfunction]
fn blocking_edges(instance: &Instance, matching: Vec<PyEdge>, level: &str) -> PyResult<Vec<PyEdge>> {
    let m = from_py(&instance.inner, matching)?;
    let report = smti_core::blocking_report(&instance.inner, &m).map_err(value_err)?;
    Ok(set_to_py(report.blocking(self::level(level)?)))
}

#[pyfunction]
#[pyo3(signature = (instance, level, forbidden=None, forced=None, free=None))]
fn solve(
    py: Python<'_>,
    instance: &Instance,
    level: &str,
    forbidden: Option<Vec<PyEdge>>,
    forced: Option<Vec<PyEdge>>,
    free: Option<Vec<PyEdge>>,
) -> PyResult<Option<Vec<PyEdge>>> {
    let r = restrictions(forbidden, forced, free);
    let level = self::level(level)?;
    let out = py
        .detach(|| solvers::solve(&instance.inner, &r, level))
        .map_err(value_err)?;
    Ok(out.as_ref().map(to_py))
}

/// Returns `(matching or None, number of subproblems evaluated)`.
#[pyfunction]
#[pyo3(signature = (instance, level, free, forbidden=None, forced=None, parallel=false))]
fn solve_free_fpt(
    py: Python<'_>,
    instance: &Instance,
    level: &str,
    free: Vec<PyEdge>,
    forbidden: Option<Vec<PyEdge>>,
    forced: Option<Vec<PyEdge>>,
    parallel: bool,
) -> PyResult<(Option<Vec<PyEdge>>, u64)> {
    let r = restrictions(forbidden, forced, Some(free));
    let level = self::level(level)?;
    let options = FptOptions {
        parallel,
        allow_forced_forbidden: true,
    };
    let out = py
        .detach(|| solvers::solve_free_fpt(&instance.inner, &r, level, &options))
        .map_err(value_err)?;
    Ok((out.matching.as_ref().map(to_py), out.calls))
}

/// Exhaustive search; first stable matching in lexicographic order.
#[pyfunction]
#[pyo3(signature = (instance, level, forbidden=None, forced=None, free=None))]
fn oracle_exists(
    instance: &Instance,
    level: &str,
    forbidden: Option<Vec<PyEdge>>,
    forced: Option<Vec<PyEdge>>,
    free: Option<Vec<PyEdge>>,
) -> PyResult<Option<Vec<PyEdge>>> {
    let r = restrictions(forbidden, forced, free);
    let out = oracle::oracle_exists(&instance.inner, &r, self::level(level)?).map_err(value_err)?;
    Ok(out.as_ref().map(to_py))
}

#[pyfunction]
fn oracle_perfect_weak(instance: &Instance) -> Option<Vec<PyEdge>> {
    oracle::oracle_perfect_weak(&instance.inner).as_ref().map(to_py)
}

#[pyfunction]
fn stable_cardinalities(instance: &Instance, level: &str) -> PyResult<Vec<usize>> {
    Ok(oracle::stable_cardinalities(&instance.inner, self::level(level)?)
        .into_iter()
        .collect())
}

fn formula(n_vars: usize, clauses: Vec<[usize; 3]>) -> PyResult<SatFormula> {
    SatFormula::new(n_vars, clauses).map_err(value_err)
}

/// Exactly-one-in-three assignment of a positive formula, or None.
#[pyfunction]
fn solve_1in3(n_vars: usize, clauses: Vec<[usize; 3]>) -> PyResult<Option<Vec<bool>>> {
    Ok(oracle::solve_1in3_bruteforce(&formula(n_vars, clauses)?).map(|a| a.0))
}

#[pyfunction]
#[pyo3(signature = (n_men, n_women, density, tie_probability, seed))]
fn gen_random_smti(n_men: usize, n_women: usize, density: f64, tie_probability: f64, seed: u64) -> PyResult<Instance> {
    let inner = generate::gen_random_smti(n_men, n_women, density, tie_probability, seed).map_err(value_err)?;
    Ok(Instance { inner })
}

/// Returns the clauses of a random formula with `n` variables.
#[pyfunction]
fn gen_random_1in3(n: usize, seed: u64) -> PyResult<Vec<[usize; 3]>> {
    Ok(generate::gen_random_1in3(n, seed).map_err(value_err)?.clauses().to_vec())
}

/// Returns `(instance, forbidden_edge)`.
#[pyfunction]
fn reduce_perfect_to_forbidden1(instance: &Instance) -> PyResult<(Instance, PyEdge)> {
    let red = reductions::reduce_perfect_to_forbidden1(&instance.inner).map_err(value_err)?;
    let e = red.forbidden_edge();
    Ok((Instance { inner: red.output.instance }, (e.man, e.woman)))
}

#[pyfunction]
fn reduce_forbidden1_to_dense(instance: &Instance, forbidden: PyEdge) -> PyResult<Instance> {
    let r = RestrictedEdgeSets::new().with_forbidden([Edge::new(forbidden.0, forbidden.1)]);
    let inner = reductions::reduce_forbidden1_to_dense(&instance.inner, &r).map_err(value_err)?;
    Ok(Instance { inner })
}

/// Returns `(instance, free_edges, roles)` where `roles` maps
/// `"m<i>"`/`"w<j>"` (1-based) to the gadget role name.
#[pyfunction]
fn reduce_sat_to_ssmti_free(
    n_vars: usize,
    clauses: Vec<[usize; 3]>,
) -> PyResult<(Instance, Vec<PyEdge>, Vec<(String, String)>)> {
    let red = reductions::reduce_sat_to_ssmti_free(&formula(n_vars, clauses)?).map_err(value_err)?;
    let out = red.output;
    let roles = out
        .registry
        .men
        .iter()
        .enumerate()
        .map(|(i, r)| (Vertex::Man(i).to_string(), r.to_string()))
        .chain(
            out.registry
                .women
                .iter()
                .enumerate()
                .map(|(j, r)| (Vertex::Woman(j).to_string(), r.to_string())),
        )
        .collect();
    Ok((Instance { inner: out.instance }, set_to_py(&out.restricted.free), roles))
}

/// Returns `(complete_instance, free_edges)`.
#[pyfunction]
#[pyo3(signature = (instance, free=None))]
fn complete_with_free(instance: &Instance, free: Option<Vec<PyEdge>>) -> PyResult<(Instance, Vec<PyEdge>)> {
    let r = RestrictedEdgeSets::new().with_free(edges(free));
    r.validate(&instance.inner).map_err(value_err)?;
    let (inner, r) = reductions::complete_with_free(&instance.inner, &r);
    Ok((Instance { inner }, set_to_py(&r.free)))
}

#[pymodule]
fn smti(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(blocking_edges, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_free_fpt, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_exists, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_perfect_weak, m)?)?;
    m.add_function(wrap_pyfunction!(stable_cardinalities, m)?)?;
    m.add_function(wrap_pyfunction!(solve_1in3, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_smti, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_1in3, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_perfect_to_forbidden1, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_forbidden1_to_dense, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_sat_to_ssmti_free, m)?)?;
    m.add_function(wrap_pyfunction!(complete_with_free, m)?)?;
    Ok(())
}
