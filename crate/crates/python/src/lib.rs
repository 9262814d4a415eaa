//! Python bindings: `import fszlab`.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fszlab_core::constructions::{build_family, load_group, FamilySpec};
use fszlab_core::indicator::{abelian_centralizer_indicators, count_gn, is_fsz, is_fsz_n, zeta_table};
use fszlab_core::{ElementId, FszError, FszOptions, Group};

fn to_py(e: FszError) -> PyErr {
    match e {
        FszError::Io(_) => PyIOError::new_err(e.to_string()),
        FszError::Usage(_) | FszError::Parse { .. } | FszError::Json(_) | FszError::Csv(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Group", module = "fszlab", frozen)]
struct PyGroup {
    inner: Group,
}

impl PyGroup {
    fn element(&self, a: u32) -> PyResult<ElementId> {
        if (a as usize) < self.inner.order() {
            Ok(ElementId(a))
        } else {
            Err(PyIndexError::new_err(format!("element {a} out of range for order {}", self.inner.order())))
        }
    }
}

fn options(workers: usize, reductions: bool, fail_fast: bool) -> PyResult<FszOptions> {
    if workers == 0 {
        return Err(PyValueError::new_err("workers must be at least 1"));
    }
    Ok(FszOptions { workers, reductions, fail_fast })
}

#[pymethods]
impl PyGroup {
    /// Build from family tokens, e.g. `Group.family("wreath", "cyclic", "3", "3")`
    /// or `Group.family("symmetric 4")`.
    #[staticmethod]
    #[pyo3(signature = (*tokens))]
    fn family(tokens: Vec<String>) -> PyResult<PyGroup> {
        let split: Vec<String> = tokens.iter().flat_map(|t| t.split_whitespace().map(str::to_string)).collect();
        let spec = FamilySpec::parse(&split).map_err(to_py)?;
        Ok(PyGroup { inner: build_family(&spec).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: load_group(&path).map_err(to_py)? })
    }

    /// Generators are 0-based image lists on `degree` points.
    #[staticmethod]
    fn from_permutations(name: String, degree: usize, generators: Vec<Vec<u32>>) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: Group::from_permutations(name, degree, &generators).map_err(to_py)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.element(a)?, self.element(b)?).0)
    }

    fn inverse(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.inverse(self.element(a)?).0)
    }

    fn power(&self, a: u32, k: i64) -> PyResult<u32> {
        Ok(self.inner.power(self.element(a)?, k).0)
    }

    fn element_order(&self, a: u32) -> PyResult<u64> {
        Ok(self.inner.element_order(self.element(a)?))
    }

    /// `(representative, size)` per conjugacy class; class 0 is the identity.
    fn conjugacy_classes(&self) -> Vec<(u32, usize)> {
        self.inner.conjugacy_classes().iter().map(|c| (c.representative.0, c.size())).collect()
    }

    fn centralizer(&self, elements: Vec<u32>) -> PyResult<Vec<u32>> {
        let set = elements.into_iter().map(|a| self.element(a)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.centralizer(&set).map_err(to_py)?.into_iter().map(|a| a.0).collect())
    }

    fn permutation(&self, a: u32) -> PyResult<Option<Vec<u32>>> {
        Ok(self.inner.permutation_of(self.element(a)?))
    }

    /// `|{a : a^n = (a u^-1)^n = g}|`.
    fn count(&self, u: u32, g: u32, n: u64) -> PyResult<u64> {
        count_gn(&self.inner, self.element(u)?, self.element(g)?, n).map_err(to_py)
    }

    /// Nonzero-or-not, every element of `C(u)` mapped to its count.
    fn zeta<'py>(&self, py: Python<'py>, u: u32, n: u64) -> PyResult<Bound<'py, PyDict>> {
        let table = zeta_table(&self.inner, self.element(u)?, n).map_err(to_py)?;
        let d = PyDict::new(py);
        for (g, k) in table.entries() {
            d.set_item(g.0, k)?;
        }
        Ok(d)
    }

    /// Indicator values for the linear characters of an abelian `C(u)`, as
    /// `(label, value string, class)` triples.
    fn indicators(&self, u: u32, n: u64) -> PyResult<Vec<(Vec<u32>, String, String)>> {
        let vals = abelian_centralizer_indicators(&self.inner, self.element(u)?, n).map_err(to_py)?;
        Ok(vals.into_iter().map(|cv| (cv.label, cv.value.to_string(), cv.value.classify().to_string())).collect())
    }

    /// Full verdict as a dict (same shape as the JSON report).
    #[pyo3(signature = (plus = false, workers = 1, reductions = true, fail_fast = false))]
    fn fsz<'py>(
        &self,
        py: Python<'py>,
        plus: bool,
        workers: usize,
        reductions: bool,
        fail_fast: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v = is_fsz(&self.inner, plus, &options(workers, reductions, fail_fast)?).map_err(to_py)?;
        let d = json_to_py(py, &v)?;
        d.set_item("passed", v.passed())?;
        Ok(d)
    }

    #[pyo3(signature = (n, workers = 1, reductions = true))]
    fn is_fsz_n(&self, n: u64, workers: usize, reductions: bool) -> PyResult<bool> {
        let v = is_fsz_n(&self.inner, n, &options(workers, reductions, false)?).map_err(to_py)?;
        Ok(v.passed())
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

#[pymodule]
fn fszlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
