//! Python bindings. Rationals go in as `int`, `str` ("p/q") or
//! `fractions.Fraction` and come back as `Fraction`; roots are lists of ints.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use parahoric::io;
use parahoric::rational::{fmt_q, parse_q};
use parahoric::seriesgroup::sample_member;
use parahoric::{
    ApartmentPoint, BoundedSet, ConcaveTuple, Error, FacetScaling, FibreRootDatum, Q, Root, SampleParams,
    TypeWitness,
};

create_exception!(parahoric_py, ParahoricError, PyException, "Domain error raised by the library.");

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => ParahoricError::new_err(format!("{}: {e}", e.name())),
    }
}

fn to_q(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Q::from_integer(n.into()));
    }
    parse_q(&obj.str()?.to_string()).map_err(err)
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_q(x),))
}

fn fractions<'py>(py: Python<'py>, xs: &[Q]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| fraction(py, x)).collect()
}

fn roots_list(f: &FibreRootDatum) -> Vec<Vec<i64>> {
    f.roots().iter().map(|r| r.coeffs.clone()).collect()
}

#[pyclass(name = "RootSystem", module = "parahoric_py", frozen)]
struct PyRootSystem {
    inner: parahoric::RootSystem,
}

impl PyRootSystem {
    fn point(&self, coords: Vec<Bound<'_, PyAny>>) -> PyResult<ApartmentPoint> {
        let coords = coords.iter().map(to_q).collect::<PyResult<Vec<_>>>()?;
        if coords.len() != self.inner.rank() {
            return Err(err(Error::RankMismatch {
                expected: self.inner.rank().to_string(),
                found: coords.len().to_string(),
            }));
        }
        Ok(ApartmentPoint::new(self.inner.dynkin(), coords))
    }

    fn check(&self, f: &PyConcaveMap) -> PyResult<()> {
        if f.inner.dynkin != self.inner.dynkin() {
            return Err(err(Error::RankMismatch {
                expected: self.inner.dynkin().to_string(),
                found: f.inner.dynkin.to_string(),
            }));
        }
        Ok(())
    }

    fn wrap(&self, f: parahoric::ConcaveMap) -> PyConcaveMap {
        PyConcaveMap { inner: f }
    }
}

#[pymethods]
#[allow(clippy::wrong_self_convention)]
impl PyRootSystem {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyRootSystem { inner: parahoric::RootSystem::from_name(name).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.dynkin().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.dynkin())
    }

    /// Roots in canonical order.
    fn roots(&self) -> Vec<Vec<i64>> {
        self.inner.roots().iter().map(|r| r.coeffs.clone()).collect()
    }

    fn highest(&self) -> Vec<i64> {
        self.inner.highest().coeffs.clone()
    }

    fn constants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let g = self.inner.group_constants();
        let d = PyDict::new(py);
        d.set_item("coxeter", g.coxeter)?;
        d.set_item("mixed_char_bound", g.mixed_char_bound)?;
        d.set_item("bound_is_strict", g.bound_is_strict)?;
        d.set_item("min_faithful_dim", g.min_faithful_dim)?;
        Ok(d)
    }

    fn pairing<'py>(&self, py: Python<'py>, root: Vec<i64>, theta: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.pairing(&Root::new(root), &self.point(theta)?).map_err(err)?;
        fraction(py, &v)
    }

    fn m_point(&self, root: Vec<i64>, theta: Vec<Bound<'_, PyAny>>) -> PyResult<i64> {
        self.inner.m_point(&Root::new(root), &self.point(theta)?).map_err(err)
    }

    fn alcove_vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.alcove_vertices().iter().map(|p| fractions(py, &p.coords)).collect()
    }

    fn alcove_reduce<'py>(&self, py: Python<'py>, theta: Vec<Bound<'py, PyAny>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let p = self.inner.alcove_reduce(&self.point(theta)?).map_err(err)?;
        fractions(py, &p.coords)
    }

    fn denominator(&self, theta: Vec<Bound<'_, PyAny>>) -> PyResult<i64> {
        self.inner.denominator(&self.point(theta)?).map_err(err)
    }

    fn from_point(&self, theta: Vec<Bound<'_, PyAny>>) -> PyResult<PyConcaveMap> {
        Ok(self.wrap(self.inner.from_point(&self.point(theta)?).map_err(err)?))
    }

    fn from_set(&self, points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<PyConcaveMap> {
        let pts = points.into_iter().map(|p| self.point(p)).collect::<PyResult<Vec<_>>>()?;
        let omega = BoundedSet::new(pts).map_err(err)?;
        Ok(self.wrap(self.inner.from_set(&omega).map_err(err)?))
    }

    /// `None` if concave, otherwise a description of the first violation.
    fn is_concave(&self, f: &PyConcaveMap) -> PyResult<Option<String>> {
        self.check(f)?;
        Ok(self.inner.is_concave(&f.inner).map_err(err)?.map(|v| v.to_string()))
    }

    /// `(label, witness)`: a point, a list of points, or a certificate root.
    fn classify<'py>(&self, py: Python<'py>, f: &PyConcaveMap) -> PyResult<(String, Bound<'py, PyAny>)> {
        self.check(f)?;
        let w = self.inner.classify(&f.inner).map_err(err)?;
        let witness = match &w {
            TypeWitness::TypeI(p) => fractions(py, &p.coords)?.into_pyobject(py)?.into_any(),
            TypeWitness::TypeII(o) => o
                .points()
                .iter()
                .map(|p| fractions(py, &p.coords))
                .collect::<PyResult<Vec<_>>>()?
                .into_pyobject(py)?
                .into_any(),
            TypeWitness::TypeIII(r) => r.coeffs.clone().into_pyobject(py)?.into_any(),
        };
        Ok((w.label().to_string(), witness))
    }

    fn regularize(&self, f: &PyConcaveMap) -> PyResult<PyConcaveMap> {
        self.check(f)?;
        Ok(self.wrap(self.inner.regularize(&f.inner).map_err(err)?))
    }

    fn ceiling(&self, f: &PyConcaveMap) -> PyResult<PyConcaveMap> {
        self.check(f)?;
        Ok(self.wrap(self.inner.ceiling(&f.inner).map_err(err)?))
    }

    fn fibre_roots(&self, f: &PyConcaveMap) -> PyResult<Vec<Vec<i64>>> {
        self.check(f)?;
        Ok(roots_list(&self.inner.fibre_roots(&f.inner).map_err(err)?))
    }

    fn phi_theta(&self, theta: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Vec<i64>>> {
        Ok(roots_list(&self.inner.phi_theta(&self.point(theta)?).map_err(err)?))
    }

    #[pyo3(signature = (nodes, scaling = "vertex"))]
    fn facet_fibre(&self, nodes: Vec<usize>, scaling: &str) -> PyResult<Vec<Vec<i64>>> {
        let s: FacetScaling = scaling.parse().map_err(err)?;
        Ok(roots_list(&self.inner.facet_fibre(s, &nodes).map_err(err)?))
    }

    /// McKay data as a JSON string.
    fn mckay(&self, d: i64, tau: Vec<i64>) -> PyResult<String> {
        let data = self.inner.mckay_ad(d, &tau).map_err(err)?;
        Ok(io::to_pretty(&io::mckay_to_json(&self.inner, &data)))
    }

    /// `SL_m` valuation pattern of a tuple of maps on this type-A system.
    fn pattern(&self, maps: Vec<PyRef<'_, PyConcaveMap>>) -> PyResult<PyPattern> {
        let fs = ConcaveTuple::new(maps.iter().map(|f| f.inner.clone()).collect()).map_err(err)?;
        Ok(PyPattern { inner: parahoric::ValuationPattern::from_tuple(&self.inner, &fs).map_err(err)? })
    }
}

#[pyclass(name = "ConcaveMap", module = "parahoric_py", frozen, eq)]
#[derive(PartialEq)]
struct PyConcaveMap {
    inner: parahoric::ConcaveMap,
}

#[pymethods]
impl PyConcaveMap {
    /// Values on the roots in canonical order; `zero` is the value at 0.
    #[new]
    #[pyo3(signature = (dynkin, values, zero = None))]
    fn new(dynkin: &str, values: Vec<Bound<'_, PyAny>>, zero: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        let rs = parahoric::RootSystem::from_name(dynkin).map_err(err)?;
        let values = values.iter().map(to_q).collect::<PyResult<Vec<_>>>()?;
        let zero = match zero {
            Some(z) => to_q(&z)?,
            None => Q::from_integer(0.into()),
        };
        Ok(PyConcaveMap { inner: parahoric::ConcaveMap::new(&rs, zero, values).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyConcaveMap { inner: io::concave_from_json(&io::parse(text).map_err(err)?).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        let rs = parahoric::RootSystem::build(self.inner.dynkin).map_err(err)?;
        Ok(io::to_pretty(&io::concave_to_json(&rs, &self.inner)))
    }

    #[getter]
    fn dynkin(&self) -> String {
        self.inner.dynkin.to_string()
    }

    fn values<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.inner.values)
    }

    fn __add__(&self, other: &PyConcaveMap) -> PyResult<Self> {
        let fs = ConcaveTuple::new(vec![self.inner.clone(), other.inner.clone()]).map_err(err)?;
        Ok(PyConcaveMap { inner: fs.combine(&[0, 1]).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("ConcaveMap({})", self.inner)
    }
}

#[pyclass(name = "Pattern", module = "parahoric_py", frozen)]
struct PyPattern {
    inner: parahoric::ValuationPattern,
}

#[pymethods]
impl PyPattern {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPattern { inner: io::pattern_from_json(&io::parse(text).map_err(err)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::to_pretty(&io::pattern_to_json(&self.inner))
    }

    /// Seeded random member of the pattern.
    #[pyo3(signature = (seed, cap = 4, generators = 6, coeff_range = 3, max_terms = 3))]
    fn sample(&self, seed: u64, cap: u32, generators: usize, coeff_range: i64, max_terms: usize) -> PyResult<PyMatrix> {
        let p = SampleParams { cap, pole_cap: self.inner.max_pole(), generators, coeff_range, max_terms };
        Ok(PyMatrix { inner: sample_member(&self.inner, seed, &p).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Pattern(\n{})", self.inner)
    }
}

#[pyclass(name = "Matrix", module = "parahoric_py", frozen, eq)]
#[derive(PartialEq)]
struct PyMatrix {
    inner: parahoric::TruncatedLaurentMatrix,
}

#[pymethods]
impl PyMatrix {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMatrix { inner: io::matrix_from_json(&io::parse(text).map_err(err)?).map_err(err)? })
    }

    #[staticmethod]
    fn identity(m: usize, nvars: usize, cap: u32) -> Self {
        PyMatrix { inner: parahoric::TruncatedLaurentMatrix::identity(m, nvars, cap, 0) }
    }

    fn to_json(&self) -> String {
        io::to_pretty(&io::matrix_to_json(&self.inner))
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(PyMatrix { inner: self.inner.multiply(&other.inner).map_err(err)? })
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(PyMatrix { inner: self.inner.inverse().map_err(err)? })
    }

    fn det_is_one(&self) -> PyResult<bool> {
        self.inner.det_is_one().map_err(err)
    }

    fn is_member(&self, pattern: &PyPattern) -> PyResult<bool> {
        self.inner.is_member(&pattern.inner).map_err(err)
    }

    fn specialize_diag(&self) -> PyResult<Self> {
        Ok(PyMatrix { inner: self.inner.specialize_diag().map_err(err)? })
    }

    fn embed_uniformizer(&self, n: usize) -> PyResult<Self> {
        Ok(PyMatrix { inner: self.inner.embed_uniformizer(n).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Matrix(\n{})", self.inner)
    }
}

#[pymodule]
fn parahoric_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ParahoricError", m.py().get_type::<ParahoricError>())?;
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyConcaveMap>()?;
    m.add_class::<PyPattern>()?;
    m.add_class::<PyMatrix>()?;
    Ok(())
}
