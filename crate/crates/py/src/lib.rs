//! Python bindings. Polynomials cross the boundary as strings in the same
//! syntax the CLI accepts, e.g. `q^2*x[1,2]*x[2,3] - q*x[1,3]`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use spa::cli::{parse_algebra, parse_ordering, parse_qmode, run_command};
use spa::dims::{
    check_elimination_lemma, eliminate_with, gk_dimension, hilbert_truncated, EliminationCertificate,
    EliminationConfig, VariableSubset,
};
use spa::groebner::{buchberger_with, ideal_membership, normal_form, GbConfig, GroebnerBasis, Side, DEFAULT_GB_BUDGET};
use spa::rewrite::pbw_consistency;
use spa::syntax::{parse_generator_list, parse_polynomial};
use spa::{AlgebraPresentation, Element, Error, OrderingSpec};

create_exception!(spa_py, BudgetExceeded, PyException);

fn py_err(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "left" => Ok(Side::Left),
        "two" | "two-sided" => Ok(Side::TwoSided),
        _ => Err(PyValueError::new_err(format!("side must be `left` or `two`, got `{side}`"))),
    }
}

/// A presented algebra together with its monomial ordering.
#[pyclass(name = "Algebra", module = "spa_py")]
struct PyAlgebra {
    inner: AlgebraPresentation,
    budget: u64,
}

impl PyAlgebra {
    fn parse_all(&self, polys: &[String]) -> PyResult<Vec<Element>> {
        polys
            .iter()
            .map(|p| parse_polynomial(p, &self.inner).map_err(py_err))
            .collect()
    }

    fn format_all(&self, elems: &[Element]) -> Vec<String> {
        elems.iter().map(|e| self.inner.format_element(e)).collect()
    }

    fn basis(&self, gens: &[String], side: &str) -> PyResult<GroebnerBasis> {
        let gens = self.parse_all(gens)?;
        buchberger_with(&self.inner, &gens, parse_side(side)?, &GbConfig { budget: self.budget }).map_err(py_err)
    }
}

#[pymethods]
impl PyAlgebra {
    /// `spec` is `uq+ N`, `uq- N`, `A (x) B` or `gr(A)`; `q` is `symbolic` or a
    /// rational; `ordering` defaults to degree-lexicographic.
    #[new]
    #[pyo3(signature = (spec, q = "symbolic", ordering = None, budget = DEFAULT_GB_BUDGET))]
    fn new(spec: &str, q: &str, ordering: Option<&str>, budget: u64) -> PyResult<Self> {
        let a = parse_algebra(spec, parse_qmode(q).map_err(py_err)?).map_err(py_err)?;
        let ord = match ordering {
            Some(o) => parse_ordering(o, &a).map_err(py_err)?,
            None => OrderingSpec::DegLex,
        };
        let inner = a.with_ordering(ord).map_err(py_err)?;
        Ok(PyAlgebra { inner, budget })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        (0..self.inner.num_generators())
            .map(|k| self.inner.format_element(&self.inner.generator(k)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, ordering={:?})", self.inner.name(), self.inner.ordering())
    }

    /// Parses and reprints a polynomial in PBW normal order.
    fn normalize(&self, f: &str) -> PyResult<String> {
        let e = parse_polynomial(f, &self.inner).map_err(py_err)?;
        Ok(self.inner.format_element(&e))
    }

    fn multiply(&self, f: &str, g: &str) -> PyResult<String> {
        let f = parse_polynomial(f, &self.inner).map_err(py_err)?;
        let g = parse_polynomial(g, &self.inner).map_err(py_err)?;
        let p = self.inner.multiply(&f, &g).map_err(py_err)?;
        Ok(self.inner.format_element(&p))
    }

    fn leading_monomial(&self, f: &str) -> PyResult<Option<String>> {
        let f = parse_polynomial(f, &self.inner).map_err(py_err)?;
        Ok(self.inner.leading_monomial(&f).map(|m| self.inner.format_monomial(&m)))
    }

    fn is_solvable(&self) -> bool {
        self.inner.check_solvable().is_solvable()
    }

    fn pbw_consistent(&self) -> PyResult<bool> {
        Ok(pbw_consistency(&self.inner).map_err(py_err)?.passed())
    }

    /// Reduced Gröbner basis, sorted by leading monomial.
    #[pyo3(signature = (gens, side = "left"))]
    fn groebner(&self, gens: Vec<String>, side: &str) -> PyResult<Vec<String>> {
        Ok(self.format_all(&self.basis(&gens, side)?.elements))
    }

    #[pyo3(signature = (f, gens, side = "left"))]
    fn normal_form(&self, f: &str, gens: Vec<String>, side: &str) -> PyResult<String> {
        let gb = self.basis(&gens, side)?;
        let f = parse_polynomial(f, &self.inner).map_err(py_err)?;
        let r = normal_form(&self.inner, &f, &gb.elements).map_err(py_err)?;
        Ok(self.inner.format_element(&r))
    }

    #[pyo3(signature = (f, gens, side = "left"))]
    fn contains(&self, f: &str, gens: Vec<String>, side: &str) -> PyResult<bool> {
        let gb = self.basis(&gens, side)?;
        let f = parse_polynomial(f, &self.inner).map_err(py_err)?;
        ideal_membership(&self.inner, &f, &gb).map_err(py_err)
    }

    #[pyo3(signature = (gens, side = "left"))]
    fn gk_dimension(&self, gens: Vec<String>, side: &str) -> PyResult<usize> {
        let gb = self.basis(&gens, side)?;
        gk_dimension(&self.inner, &gb).map_err(py_err)
    }

    #[pyo3(signature = (gens, dmax, side = "left"))]
    fn hilbert(&self, gens: Vec<String>, dmax: u32, side: &str) -> PyResult<Vec<u64>> {
        let gb = self.basis(&gens, side)?;
        hilbert_truncated(&self.inner, &gb, dmax).map_err(py_err)
    }

    /// Elements of the ideal that only involve `keep`, with a flag telling
    /// whether the answer is exact or only complete up to a degree bound.
    #[pyo3(signature = (gens, keep, side = "left", max_degree = 8))]
    fn eliminate(&self, gens: Vec<String>, keep: &str, side: &str, max_degree: u32) -> PyResult<(Vec<String>, bool)> {
        let gb = self.basis(&gens, side)?;
        let members = parse_generator_list(keep, &self.inner).map_err(py_err)?;
        let u = VariableSubset::new(&self.inner, members).map_err(py_err)?;
        let r = eliminate_with(&self.inner, &gb.elements, &u, &EliminationConfig { max_degree }).map_err(py_err)?;
        let exact = r.certificate == EliminationCertificate::Exact;
        Ok((self.format_all(&r.elements), exact))
    }

    /// Subsets of size GKdim+1 whose intersection with the ideal came back empty.
    #[pyo3(signature = (gens, side = "left"))]
    fn elimination_lemma_failures(&self, gens: Vec<String>, side: &str) -> PyResult<Vec<Vec<String>>> {
        let gb = self.basis(&gens, side)?;
        Ok(check_elimination_lemma(&self.inner, &gb).map_err(py_err)?.failures)
    }
}

/// Runs the `spa` command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = run_command(std::iter::once("spa".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn spa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
