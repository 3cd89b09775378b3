//! Python bindings: partial bijections, inverse semigroups with their
//! natural order, the fixture families, and the law checkers.
//!
//! The module mirrors the Rust API shape. Elements cross the boundary as
//! plain carrier indices; joins and meets come back as `int | None`; law
//! checks return the canonical report JSON as a string.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use isgkit::constructors;
use isgkit::io::{self, ReportFile, SemigroupFile};
use isgkit::verify::{self, SubsetBudget, DEFAULT_SUBSET_CEILING};
use isgkit::{ElementId, InverseSemigroup, NaturalOrder, PartialBijection};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An injective partial self-map of {0, .., degree-1}.
#[pyclass(name = "PartialBijection", frozen, from_py_object)]
#[derive(Clone)]
struct PyPartialBijection {
    inner: PartialBijection,
}

#[pymethods]
impl PyPartialBijection {
    /// Builds a map from one image slot per point; `None` marks undefined.
    #[new]
    fn new(images: Vec<Option<usize>>) -> PyResult<Self> {
        PartialBijection::new(images)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        Self {
            inner: PartialBijection::identity(degree),
        }
    }

    #[staticmethod]
    fn empty(degree: usize) -> Self {
        Self {
            inner: PartialBijection::empty(degree),
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn images(&self) -> Vec<Option<usize>> {
        self.inner.images().to_vec()
    }

    fn image(&self, point: usize) -> PyResult<Option<usize>> {
        if point >= self.inner.degree() {
            return Err(value_error(format!(
                "point {point} is not in 0..{}",
                self.inner.degree()
            )));
        }
        Ok(self.inner.image(point))
    }

    /// `(p.compose(q))(i) = p(q(i))`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.inner
            .compose(&other.inner)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    fn invert(&self) -> Self {
        Self {
            inner: self.inner.invert(),
        }
    }

    fn is_partial_identity(&self) -> bool {
        self.inner.is_partial_identity()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn __richcmp__(&self, other: &Self, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(value_error("partial bijections are not totally ordered")),
        }
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut hasher);
        hasher.finish()
    }

    fn __repr__(&self) -> String {
        format!("PartialBijection(\"{}\")", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A finite inverse semigroup with its natural partial order precomputed.
#[pyclass(name = "InverseSemigroup", frozen)]
struct PyInverseSemigroup {
    semigroup: InverseSemigroup,
    order: NaturalOrder,
}

impl PyInverseSemigroup {
    fn wrap(semigroup: InverseSemigroup) -> Self {
        let order = NaturalOrder::new(&semigroup);
        Self { semigroup, order }
    }

    fn id(&self, index: usize) -> PyResult<ElementId> {
        self.semigroup.element(index).ok_or_else(|| {
            value_error(format!(
                "element {index} is not in 0..{}",
                self.semigroup.size()
            ))
        })
    }

    fn ids(&self, indices: Vec<usize>) -> PyResult<Vec<ElementId>> {
        indices.into_iter().map(|i| self.id(i)).collect()
    }
}

#[pymethods]
impl PyInverseSemigroup {
    /// Validates a Cayley table (and optional inverse table and labels).
    #[new]
    #[pyo3(signature = (product, inverse=None, labels=None))]
    fn new(
        product: Vec<Vec<usize>>,
        inverse: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> PyResult<Self> {
        InverseSemigroup::from_cayley_table(&product, inverse.as_deref(), labels)
            .map(Self::wrap)
            .map_err(value_error)
    }

    /// Smallest inverse semigroup of partial bijections containing the
    /// generators.
    #[staticmethod]
    #[pyo3(signature = (generators, cap=None))]
    fn close_under_ops(generators: Vec<PyPartialBijection>, cap: Option<usize>) -> PyResult<Self> {
        let gens: Vec<PartialBijection> = generators.into_iter().map(|g| g.inner).collect();
        let result = match cap {
            Some(cap) => InverseSemigroup::close_under_ops_with_cap(&gens, cap),
            None => InverseSemigroup::close_under_ops(&gens),
        };
        result.map(Self::wrap).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_semigroup(text.as_bytes())
            .map(Self::wrap)
            .map_err(value_error)
    }

    fn to_json(&self) -> String {
        io::emit_semigroup(&self.semigroup)
    }

    fn digest(&self) -> String {
        io::semigroup_digest(&self.semigroup)
    }

    #[getter]
    fn size(&self) -> usize {
        self.semigroup.size()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.semigroup.mul(self.id(a)?, self.id(b)?).index())
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        Ok(self.semigroup.inv(self.id(a)?).index())
    }

    fn idempotents(&self) -> Vec<usize> {
        self.semigroup
            .idempotents()
            .into_iter()
            .map(|e| e.index())
            .collect()
    }

    fn is_idempotent(&self, e: usize) -> PyResult<bool> {
        Ok(self.semigroup.is_idempotent(self.id(e)?))
    }

    fn label(&self, e: usize) -> PyResult<String> {
        Ok(self.semigroup.label(self.id(e)?))
    }

    /// The concrete partial bijection behind an element, when this carrier
    /// was built from maps.
    fn bijection(&self, e: usize) -> PyResult<Option<PyPartialBijection>> {
        let id = self.id(e)?;
        Ok(self
            .semigroup
            .bijections()
            .map(|c| PyPartialBijection {
                inner: c[id.index()].clone(),
            }))
    }

    /// `s <= t` in the natural partial order.
    fn leq(&self, s: usize, t: usize) -> PyResult<bool> {
        Ok(self.order.leq(self.id(s)?, self.id(t)?))
    }

    fn downsegment(&self, t: usize) -> PyResult<Vec<usize>> {
        Ok(self
            .order
            .downsegment(self.id(t)?)
            .iter()
            .map(|e| e.index())
            .collect())
    }

    fn upper_bounds(&self, xs: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .order
            .upper_bounds(&self.ids(xs)?)
            .into_iter()
            .map(|e| e.index())
            .collect())
    }

    fn lower_bounds(&self, xs: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .order
            .lower_bounds(&self.ids(xs)?)
            .into_iter()
            .map(|e| e.index())
            .collect())
    }

    /// Least upper bound of a subset, or `None` when it does not exist.
    fn join(&self, xs: Vec<usize>) -> PyResult<Option<usize>> {
        Ok(self.order.join(&self.ids(xs)?).exists().map(|e| e.index()))
    }

    /// Greatest lower bound of a pair, or `None` when it does not exist.
    fn meet(&self, x: usize, y: usize) -> PyResult<Option<usize>> {
        Ok(self
            .order
            .meet(self.id(x)?, self.id(y)?)
            .exists()
            .map(|e| e.index()))
    }

    /// The meet computed through the idempotent-join route.
    fn meet_via_lemma1(&self, x: usize, y: usize) -> PyResult<Option<usize>> {
        Ok(
            verify::meet_via_lemma1(&self.semigroup, &self.order, self.id(x)?, self.id(y)?)
                .exists()
                .map(|e| e.index()),
        )
    }

    fn minimum(&self) -> Option<usize> {
        self.order.minimum().map(|e| e.index())
    }

    fn comparable_pairs(&self) -> u64 {
        self.order.comparable_pairs()
    }

    fn with_zero_adjoined(&self) -> Self {
        Self::wrap(constructors::adjoin_zero(&self.semigroup))
    }

    /// Runs a law check and returns the canonical report JSON.
    ///
    /// Laws: "distributive", "lemma1", "lemma2", "theorem", "prop17",
    /// "prop20".
    #[pyo3(signature = (
        law,
        exhaustive=false,
        max_subset_size=3,
        samples=0,
        seed=0,
        include_empty_set=true,
        subset_ceiling=None,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn check(
        &self,
        law: &str,
        exhaustive: bool,
        max_subset_size: usize,
        samples: u64,
        seed: u64,
        include_empty_set: bool,
        subset_ceiling: Option<u64>,
    ) -> PyResult<String> {
        let mut budget = if exhaustive {
            SubsetBudget::exhaustive()
        } else {
            SubsetBudget::bounded(max_subset_size).with_samples(samples, seed)
        };
        budget.include_empty_set = include_empty_set;
        budget.subset_ceiling = subset_ceiling.unwrap_or(DEFAULT_SUBSET_CEILING);

        let s = &self.semigroup;
        let ord = &self.order;
        let report = match law {
            "distributive" | "distributivity" => {
                verify::is_infinitely_distributive(s, ord, &budget).map_err(value_error)?
            }
            "lemma1" => verify::check_lemma1(s, ord),
            "lemma2" => verify::check_lemma2(s, ord, &budget).map_err(value_error)?,
            "theorem" => verify::check_theorem(s, ord, &budget).map_err(value_error)?,
            "prop17" => verify::check_prop17(s, ord, &budget).map_err(value_error)?,
            "prop20" | "prop20-corpus" => {
                verify::check_prop20_corpus(std::slice::from_ref(s), &budget)
                    .map_err(value_error)?
            }
            other => return Err(value_error(format!("unknown law '{other}'"))),
        };
        let file = SemigroupFile::new(s.clone());
        Ok(ReportFile::new(&report, &file).to_canonical_string())
    }

    fn __len__(&self) -> usize {
        self.semigroup.size()
    }

    fn __repr__(&self) -> String {
        format!("InverseSemigroup(size={})", self.semigroup.size())
    }
}

#[pyfunction]
fn symmetric_inverse_monoid(n: usize) -> PyResult<PyInverseSemigroup> {
    constructors::symmetric_inverse_monoid(n)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

#[pyfunction]
fn cyclic_group(n: usize) -> PyResult<PyInverseSemigroup> {
    constructors::cyclic_group(n)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

#[pyfunction]
fn brandt(n: usize) -> PyResult<PyInverseSemigroup> {
    constructors::brandt(n)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

#[pyfunction]
fn chain(n: usize) -> PyResult<PyInverseSemigroup> {
    constructors::chain(n)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

#[pyfunction]
fn semilattice_from_meet_table(table: Vec<Vec<usize>>) -> PyResult<PyInverseSemigroup> {
    constructors::semilattice_from_meet_table(&table, None)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

/// Named fixtures: n5, m3, trivial, i<k>, c<k>, b<k>, chain<k>.
#[pyfunction]
fn builtin(name: &str) -> PyResult<PyInverseSemigroup> {
    constructors::builtin(name)
        .map(PyInverseSemigroup::wrap)
        .map_err(value_error)
}

#[pymodule]
fn isgkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartialBijection>()?;
    m.add_class::<PyInverseSemigroup>()?;
    m.add_function(wrap_pyfunction!(symmetric_inverse_monoid, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_group, m)?)?;
    m.add_function(wrap_pyfunction!(brandt, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(semilattice_from_meet_table, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
