//! Closed-fibre root data and degeneration data.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::apartment::ApartmentPoint;
use crate::concave::{ConcaveMap, ConcaveTuple};
use crate::error::{Error, Result};
use crate::rational::{frac, int, Q};
use crate::rootsystem::{DynkinType, Root, RootSystem};

/// A negation-closed subset of `Φ`, listed as `r, −r` pairs with the
/// positive roots in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreRootDatum {
    pub dynkin: DynkinType,
    roots: Vec<Root>,
}

impl FibreRootDatum {
    fn from_positive_indices(rs: &RootSystem, mut positives: Vec<usize>) -> Self {
        positives.sort_unstable();
        positives.dedup();
        let roots = positives
            .into_iter()
            .flat_map(|i| [rs.root(i).clone(), rs.root(rs.neg_index(i)).clone()])
            .collect();
        FibreRootDatum { dynkin: rs.dynkin(), roots }
    }

    /// Validates and normalizes an arbitrary list of roots.
    pub fn from_roots(rs: &RootSystem, roots: &[Root]) -> Result<Self> {
        let mut positives = Vec::new();
        for r in roots {
            let i = rs.require_index(r)?;
            let p = if i < rs.num_positive() { i } else { rs.neg_index(i) };
            let other = rs.neg_index(i);
            if !roots.contains(rs.root(other)) {
                return Err(Error::Parse(format!("root set is not closed under negation at {r}")));
            }
            positives.push(p);
        }
        Ok(Self::from_positive_indices(rs, positives))
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn is_subset_of(&self, other: &FibreRootDatum) -> bool {
        self.roots.iter().all(|r| other.contains(r))
    }

    /// Negation-closed and closed under sums that land in `Φ`.
    pub fn is_closed_subsystem(&self, rs: &RootSystem) -> bool {
        let neg_closed = self.roots.iter().all(|r| self.contains(&r.neg()));
        let add_closed = self.roots.iter().all(|r| {
            self.roots.iter().all(|s| {
                let t = r.add(s);
                rs.index_of(&t).is_none() || self.contains(&t)
            })
        });
        neg_closed && add_closed
    }
}

impl fmt::Display for FibreRootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// How the alcove vertices are rescaled in [`RootSystem::facet_fibre`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetScaling {
    /// `θ_α`.
    Vertex,
    /// `θ_α / (ℓ + 1)`.
    Shrunk,
    /// `L · θ_α` with `L = lcm(c_α)`.
    Lattice,
}

impl FromStr for FacetScaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vertex" => Ok(FacetScaling::Vertex),
            "shrunk" => Ok(FacetScaling::Shrunk),
            "lattice" => Ok(FacetScaling::Lattice),
            _ => Err(Error::Parse(format!("unknown scaling {s:?} (expected vertex, shrunk or lattice)"))),
        }
    }
}

impl fmt::Display for FacetScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FacetScaling::Vertex => "vertex",
            FacetScaling::Shrunk => "shrunk",
            FacetScaling::Lattice => "lattice",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McKayComponent {
    pub s: i64,
    pub tau_s: Vec<i64>,
    pub theta: ApartmentPoint,
}

/// Local types along the exceptional chain of an `A_{d−1}` singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McKayData {
    pub d: i64,
    pub tau: Vec<i64>,
    /// Components `s = 1, …, d−1`.
    pub components: Vec<McKayComponent>,
    /// `(τ, τ̄)` with `τ̄ = −τ mod d`.
    pub end_types: (Vec<i64>, Vec<i64>),
    /// `f_s = m(θ_s) + m(θ_{s+1})` for `s = 1, …, d−2`.
    pub node_functions: Vec<ConcaveMap>,
    pub node_fibres: Vec<FibreRootDatum>,
    /// The points `θ_s` are alcove representatives rather than raw classes.
    pub alcove_reduced: bool,
}

impl RootSystem {
    /// `{r : ⌈f⌉(−r) = −⌈f⌉(r)}`.
    pub fn fibre_roots(&self, f: &ConcaveMap) -> Result<FibreRootDatum> {
        let c = self.ceiling(f)?;
        let positives = (0..self.num_positive())
            .filter(|&i| (c.value(i) + c.value(self.neg_index(i))).is_zero())
            .collect();
        Ok(FibreRootDatum::from_positive_indices(self, positives))
    }

    /// `Φ_θ = {r : r(θ) ∈ ℤ}`.
    pub fn phi_theta(&self, theta: &ApartmentPoint) -> Result<FibreRootDatum> {
        let mut positives = Vec::new();
        for (i, r) in self.positives().iter().enumerate() {
            if self.pairing(r, theta)?.is_integer() {
                positives.push(i);
            }
        }
        Ok(FibreRootDatum::from_positive_indices(self, positives))
    }

    /// Smallest closed subsystem containing `±gens`.
    pub fn generated_subsystem(&self, gens: &[Root]) -> Result<FibreRootDatum> {
        let mut members: Vec<bool> = vec![false; self.len()];
        for g in gens {
            let i = self.require_index(g)?;
            members[i] = true;
            members[self.neg_index(i)] = true;
        }
        loop {
            let mut grew = false;
            for &(i, j, target) in self.sum_pairs() {
                if let crate::rootsystem::SumTarget::Root(k) = target {
                    if members[i] && members[j] && !members[k] {
                        members[k] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let positives = (0..self.num_positive()).filter(|&i| members[i]).collect();
        Ok(FibreRootDatum::from_positive_indices(self, positives))
    }

    fn scaled_vertex(&self, scaling: FacetScaling, node: usize) -> Result<ApartmentPoint> {
        let v = self.alcove_vertex(node)?;
        let k = match scaling {
            FacetScaling::Vertex => int(1),
            FacetScaling::Shrunk => frac(1, self.rank() as i64 + 1),
            FacetScaling::Lattice => int(self.highest_coeffs().iter().fold(1i64, |acc, c| acc.lcm(c))),
        };
        Ok(v.scale(&k))
    }

    /// Fibre of the sum of the point maps at the rescaled vertices `θ_α`,
    /// `α ∈ I` (1-based simple-root labels).
    pub fn facet_fibre(&self, scaling: FacetScaling, nodes: &[usize]) -> Result<FibreRootDatum> {
        if nodes.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut maps = Vec::with_capacity(nodes.len());
        for &a in nodes {
            if a == 0 || a > self.rank() {
                return Err(Error::IndexOutOfRange { index: a, valid: format!("1..={}", self.rank()) });
            }
            maps.push(self.from_point(&self.scaled_vertex(scaling, a)?)?);
        }
        let fs = ConcaveTuple::new(maps)?;
        self.fibre_roots(&fs.combine(&(0..nodes.len()).collect::<Vec<_>>())?)
    }

    /// Fibre of `Σ_{i∈I} f_i` for 0-based indices `I`.
    pub fn subdiagonal_fibre(&self, fs: &ConcaveTuple, subset: &[usize]) -> Result<FibreRootDatum> {
        self.fibre_roots(&fs.combine(subset)?)
    }

    fn mckay_point(&self, d: i64, tau: &[i64], s: i64) -> Result<(Vec<i64>, ApartmentPoint)> {
        let tau_s: Vec<i64> = tau.iter().map(|a| (s * a).rem_euclid(d)).collect();
        let coords: Vec<Q> = tau_s.iter().map(|&a| frac(a, d)).collect();
        let theta = self.alcove_reduce(&ApartmentPoint::new(self.dynkin(), coords))?;
        Ok((tau_s, theta))
    }

    /// Component points, end types and node data for the type vector `τ`
    /// of a `μ_d` action.
    pub fn mckay_ad(&self, d: i64, tau: &[i64]) -> Result<McKayData> {
        if d < 2 {
            return Err(Error::BadTypeVector(format!("order d = {d} must be at least 2")));
        }
        if tau.len() != self.rank() {
            return Err(Error::BadTypeVector(format!("{} entries for rank {}", tau.len(), self.rank())));
        }
        if let Some(a) = tau.iter().find(|&&a| !(0..d).contains(&a)) {
            return Err(Error::BadTypeVector(format!("entry {a} is not reduced mod {d}")));
        }
        let mut components = Vec::new();
        for s in 1..d {
            let (tau_s, theta) = self.mckay_point(d, tau, s)?;
            components.push(McKayComponent { s, tau_s, theta });
        }
        let mut node_functions = Vec::new();
        let mut node_fibres = Vec::new();
        for w in components.windows(2) {
            let fs = ConcaveTuple::new(vec![self.from_point(&w[0].theta)?, self.from_point(&w[1].theta)?])?;
            let f = fs.combine(&[0, 1])?;
            node_fibres.push(self.fibre_roots(&f)?);
            node_functions.push(f);
        }
        let tau_bar = tau.iter().map(|a| (-a).rem_euclid(d)).collect();
        Ok(McKayData {
            d,
            tau: tau.to_vec(),
            components,
            end_types: (tau.to_vec(), tau_bar),
            node_functions,
            node_fibres,
            alcove_reduced: true,
        })
    }
}
