//! Python bindings: finite groupoids, comorphisms, bisections, partial
//! bisections, and the verification entry points.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use grpdco::bisection;
use grpdco::caps::Caps;
use grpdco::comorphism;
use grpdco::group::GroupTable;
use grpdco::groupoid::FiniteGroupoid;
use grpdco::inner;
use grpdco::pseudogroup;

fn err(e: grpdco::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, name = "Groupoid")]
struct PyGroupoid {
    inner: Arc<FiniteGroupoid>,
}

#[pyclass(frozen, name = "Comorphism")]
struct PyComorphism {
    inner: comorphism::Comorphism,
}

#[pyclass(frozen, name = "Bisection")]
struct PyBisection {
    inner: bisection::Bisection,
}

#[pyclass(frozen, name = "PartialBisection")]
struct PyPartialBisection {
    inner: pseudogroup::PartialBisection,
}

#[pymethods]
impl PyGroupoid {
    #[staticmethod]
    fn discrete(n: usize) -> Self {
        PyGroupoid {
            inner: Arc::new(FiniteGroupoid::discrete(n)),
        }
    }

    #[staticmethod]
    fn indiscrete(n: usize) -> Self {
        PyGroupoid {
            inner: Arc::new(FiniteGroupoid::indiscrete(n)),
        }
    }

    #[staticmethod]
    fn interval() -> Self {
        PyGroupoid {
            inner: Arc::new(FiniteGroupoid::interval()),
        }
    }

    #[staticmethod]
    fn terminal() -> Self {
        PyGroupoid {
            inner: Arc::new(FiniteGroupoid::terminal()),
        }
    }

    /// One-object groupoid of the cyclic group of order n.
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("cyclic group needs order >= 1"));
        }
        Ok(PyGroupoid {
            inner: Arc::new(FiniteGroupoid::sigma(&GroupTable::cyclic(n))),
        })
    }

    /// One-object groupoid of an arbitrary group multiplication table.
    #[staticmethod]
    fn from_group_table(table: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyGroupoid {
            inner: Arc::new(FiniteGroupoid::sigma_from_table(table).map_err(err)?),
        })
    }

    /// Parse the GRPD v1 text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGroupoid {
            inner: Arc::new(grpdco::io::parse_grpd(text).map_err(err)?),
        })
    }

    fn to_text(&self) -> String {
        grpdco::io::serialize_grpd(&self.inner)
    }

    fn n_objects(&self) -> usize {
        self.inner.n_objects()
    }

    fn n_morphisms(&self) -> usize {
        self.inner.n_morphisms()
    }

    fn source(&self, m: usize) -> usize {
        self.inner.source(m)
    }

    fn target(&self, m: usize) -> usize {
        self.inner.target(m)
    }

    fn identity(&self, u: usize) -> usize {
        self.inner.identity(u)
    }

    fn inverse(&self, m: usize) -> usize {
        self.inner.inverse(m)
    }

    fn compose(&self, b: usize, a: usize) -> Option<usize> {
        self.inner.compose(b, a)
    }

    fn bisections(&self) -> PyResult<Vec<PyBisection>> {
        let caps = Caps::default();
        Ok(bisection::enumerate_bisections(&self.inner, &caps)
            .map_err(err)?
            .into_iter()
            .map(|b| PyBisection { inner: b })
            .collect())
    }

    fn bisection_count(&self) -> PyResult<usize> {
        Ok(self.bisections()?.len())
    }

    fn partial_bisections(&self) -> PyResult<Vec<PyPartialBisection>> {
        let caps = Caps::default();
        Ok(
            pseudogroup::enumerate_partial_bisections(&self.inner, &caps)
                .map_err(err)?
                .into_iter()
                .map(|p| PyPartialBisection { inner: p })
                .collect(),
        )
    }

    fn partial_bisection_count(&self) -> PyResult<usize> {
        Ok(self.partial_bisections()?.len())
    }

    fn identity_comorphism(&self) -> PyComorphism {
        PyComorphism {
            inner: comorphism::Comorphism::identity(&self.inner),
        }
    }

    fn comorphisms_to(&self, other: &PyGroupoid) -> PyResult<Vec<PyComorphism>> {
        let caps = Caps::default();
        Ok(
            comorphism::enumerate_comorphisms(&self.inner, &other.inner, &caps)
                .map_err(err)?
                .into_iter()
                .map(|c| PyComorphism { inner: c })
                .collect(),
        )
    }

    fn functor_count_to(&self, other: &PyGroupoid) -> PyResult<usize> {
        let caps = Caps::default();
        Ok(grpdco::functor::enumerate_functors(&self.inner, &other.inner, &caps)
            .map_err(err)?
            .len())
    }

    /// Natural automorphism families over comorphisms vs bisections.
    fn verify_theorem1<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = inner::verify_theorem1(&self.inner, &Caps::default(), None).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("bisections", r.bisections)?;
        d.set_item("families", r.families)?;
        d.set_item("extraction_round_trip", r.extraction_round_trip)?;
        d.set_item("group_isomorphic", r.group_isomorphic)?;
        d.set_item("universe_groupoids", r.universe.groupoids)?;
        d.set_item("universe_arrows", r.universe.arrows)?;
        d.set_item("pass", r.pass)?;
        Ok(d)
    }

    /// Natural automorphism families over homomorphisms (identity only).
    fn verify_prop1<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = inner::verify_prop1(&self.inner, &Caps::default(), None).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("families", r.families)?;
        d.set_item("identity_only", r.identity_only)?;
        d.set_item("universe_groupoids", r.universe.groupoids)?;
        d.set_item("universe_arrows", r.universe.arrows)?;
        d.set_item("pass", r.pass)?;
        Ok(d)
    }

    /// Natural partial-automorphism families vs partial bisections.
    fn verify_partial<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = inner::verify_partial(&self.inner, &Caps::default(), None).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("partial_bisections", r.partial_bisections)?;
        d.set_item("families", r.families)?;
        d.set_item("extraction_round_trip", r.extraction_round_trip)?;
        d.set_item("monoid_isomorphic", r.monoid_isomorphic)?;
        d.set_item("pass", r.pass)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Groupoid(objects={}, morphisms={})",
            self.inner.n_objects(),
            self.inner.n_morphisms()
        )
    }
}

#[pymethods]
impl PyComorphism {
    fn object_map(&self) -> Vec<usize> {
        self.inner.object_map().to_vec()
    }

    fn lift(&self, u: usize, a: usize) -> usize {
        self.inner.lift(u, a)
    }

    fn compose(&self, inner_first: &PyComorphism) -> PyResult<PyComorphism> {
        Ok(PyComorphism {
            inner: comorphism::Comorphism::compose(&self.inner, &inner_first.inner)
                .map_err(err)?,
        })
    }

    fn is_invertible(&self) -> bool {
        comorphism::invert_comorphism(&self.inner).is_some()
    }

    /// Splits through the intermediate groupoid; returns (mid, recomposes).
    fn factorize(&self) -> PyResult<(PyGroupoid, bool)> {
        let fac = comorphism::factorize(&self.inner);
        let ok = fac.recompose().map_err(err)? == self.inner;
        Ok((PyGroupoid { inner: fac.mid }, ok))
    }

    fn push(&self, alpha: &PyBisection) -> PyResult<PyBisection> {
        Ok(PyBisection {
            inner: bisection::pushforward(&self.inner, &alpha.inner).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        grpdco::io::serialize_comor(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Comorphism(dom_objects={}, cod_objects={})",
            self.inner.dom().n_objects(),
            self.inner.cod().n_objects()
        )
    }
}

#[pymethods]
impl PyBisection {
    fn components(&self) -> Vec<usize> {
        self.inner.components().to_vec()
    }

    fn multiply(&self, other: &PyBisection) -> PyResult<PyBisection> {
        Ok(PyBisection {
            inner: bisection::Bisection::multiply(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn inverse(&self) -> PyBisection {
        PyBisection {
            inner: self.inner.inverse(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Bisection(components={:?})", self.inner.components())
    }
}

#[pymethods]
impl PyPartialBisection {
    fn components(&self) -> Vec<Option<usize>> {
        self.inner.components().to_vec()
    }

    fn domain(&self) -> Vec<usize> {
        self.inner.domain()
    }

    fn multiply(&self, other: &PyPartialBisection) -> PyResult<PyPartialBisection> {
        Ok(PyPartialBisection {
            inner: pseudogroup::PartialBisection::multiply(&self.inner, &other.inner)
                .map_err(err)?,
        })
    }

    fn star(&self) -> PyPartialBisection {
        PyPartialBisection {
            inner: self.inner.star(),
        }
    }

    fn __repr__(&self) -> String {
        format!("PartialBisection(components={:?})", self.inner.components())
    }
}

#[pymodule]
fn grpdco_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupoid>()?;
    m.add_class::<PyComorphism>()?;
    m.add_class::<PyBisection>()?;
    m.add_class::<PyPartialBisection>()?;
    Ok(())
}
