//! Python bindings for `steenrod_ext`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use steenrod_ext::catalog::{Family, Generator};
use steenrod_ext::{ext, families, monomial, pattern};

fn value_error(e: steenrod_ext::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Basis report for one bidegree.
#[pyclass(name = "ExtBasisReport", frozen)]
struct PyExtBasisReport {
    inner: ext::ExtBasisReport,
}

#[pymethods]
impl PyExtBasisReport {
    #[getter]
    fn k(&self) -> u32 {
        self.inner.query.k()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.query.n()
    }

    #[getter]
    fn t(&self) -> u64 {
        self.inner.query.t()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension
    }

    #[getter]
    fn relation_rank(&self) -> usize {
        self.inner.relation_rank
    }

    #[getter]
    fn potential_generators(&self) -> Vec<String> {
        self.inner.potential_generators.iter().map(|m| m.format()).collect()
    }

    #[getter]
    fn simplified_relations(&self) -> Vec<String> {
        self.inner.simplified_relations.iter().map(|r| r.render()).collect()
    }

    /// Representatives in report order.
    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis.iter().map(|b| b.representative.format()).collect()
    }

    /// `(representative, equivalents)` pairs.
    #[getter]
    fn classes(&self) -> Vec<(String, Vec<String>)> {
        self.inner
            .basis
            .iter()
            .map(|b| {
                (
                    b.representative.format(),
                    b.equivalents.iter().map(|m| m.format()).collect(),
                )
            })
            .collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.inner.to_json())
    }

    fn render_text(&self) -> String {
        self.inner.render_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "ExtBasisReport(k={}, t={}, dimension={})",
            self.inner.query.k(),
            self.inner.query.t(),
            self.inner.dimension
        )
    }
}

/// Result of a grid sweep over `n = 2^(s+t+u) + 2^(s+t) + 2^s - 3`.
#[pyclass(name = "SweepResult", frozen)]
struct PySweepResult {
    inner: families::SweepResult,
}

#[pymethods]
impl PySweepResult {
    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn total_cases(&self) -> usize {
        self.inner.totals.cases
    }

    #[getter]
    fn nonzero_cases(&self) -> usize {
        self.inner.totals.nonzero
    }

    /// `(s, t, u, n, dimension, representatives)` tuples in sweep order.
    #[getter]
    fn cases(&self) -> Vec<(u32, u32, u32, u64, usize, Vec<String>)> {
        self.inner
            .cases
            .iter()
            .map(|c| (c.s, c.t, c.u, c.n, c.dimension, c.representatives.clone()))
            .collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    /// Mined patterns as `(pattern, condition, case_count)` tuples.
    fn discover_patterns(&self) -> Vec<(String, String, usize)> {
        pattern::discover_patterns(&self.inner.one_dimensional())
            .into_iter()
            .map(|p| (p.pattern, p.condition, p.case_count))
            .collect()
    }

    /// Theorem block for the mined patterns.
    fn render_theorem(&self) -> String {
        let patterns = pattern::discover_patterns(&self.inner.one_dimensional());
        pattern::render_theorem(
            &patterns,
            self.inner.totals.cases,
            self.inner.s_max,
            self.inner.t_max,
            self.inner.u_max,
        )
    }

    fn __len__(&self) -> usize {
        self.inner.cases.len()
    }
}

#[pyfunction]
#[pyo3(signature = (k, n, paper_compat = false))]
fn compute_ext_basis(py: Python<'_>, k: u32, n: i64, paper_compat: bool) -> PyResult<PyExtBasisReport> {
    let options = ext::ExtOptions { paper_compat };
    let inner = py
        .detach(|| ext::compute_ext_basis(k, n, options))
        .map_err(value_error)?;
    Ok(PyExtBasisReport { inner })
}

/// Monomials of homological degree `k` and internal degree `t`, in report order.
#[pyfunction]
fn enumerate_monomials(k: u32, t: u64) -> PyResult<Vec<String>> {
    let ms = monomial::enumerate_in(k, t).map_err(value_error)?;
    Ok(ms.iter().map(|m| m.format()).collect())
}

/// Internal degree of a generator given by family name (`"h"`, `"c"`, `"D3"`, ...).
#[pyfunction]
#[pyo3(signature = (family, index = 0))]
fn internal_degree(family: &str, index: u32) -> PyResult<u64> {
    let family = Family::from_name(family)
        .ok_or_else(|| PyValueError::new_err(format!("unknown family {family:?}")))?;
    let g = Generator::new(family, index).map_err(value_error)?;
    Ok(g.internal_degree())
}

#[pyfunction]
fn stem_stu(s: i64, t: i64, u: i64) -> PyResult<u64> {
    families::stem_stu(s, t, u).map_err(value_error)
}

#[pyfunction]
fn stem_power(s: i64, m: i64) -> PyResult<u64> {
    families::stem_power(s, m).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (k, s_max, t_max, u_max, jobs = None, paper_compat = false))]
fn sweep_stu(
    py: Python<'_>,
    k: u32,
    s_max: u32,
    t_max: u32,
    u_max: u32,
    jobs: Option<usize>,
    paper_compat: bool,
) -> PyResult<PySweepResult> {
    let options = families::SweepOptions {
        jobs,
        ext: ext::ExtOptions { paper_compat },
    };
    let inner = py
        .detach(|| families::sweep_stu(k, s_max, t_max, u_max, options))
        .map_err(value_error)?;
    Ok(PySweepResult { inner })
}

#[pymodule]
fn steenrod_ext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExtBasisReport>()?;
    m.add_class::<PySweepResult>()?;
    m.add_function(wrap_pyfunction!(compute_ext_basis, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_monomials, m)?)?;
    m.add_function(wrap_pyfunction!(internal_degree, m)?)?;
    m.add_function(wrap_pyfunction!(stem_stu, m)?)?;
    m.add_function(wrap_pyfunction!(stem_power, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_stu, m)?)?;
    Ok(())
}
