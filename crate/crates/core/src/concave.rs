//! Concave functions on `Φ ∪ {0}` and their classification.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::apartment::{ApartmentPoint, BoundedSet};
use crate::error::{Error, Result};
use crate::lp::{LpError, StandardLp};
use crate::polyhedron::{Constraint, System};
use crate::rational::{ceil_i64, floor_i64, fmt_q, int, is_integral, Q};
use crate::rootsystem::{DynkinType, Root, RootSystem, SumTarget};

/// A total map `Φ ∪ {0} → ℚ`; `values[i]` belongs to the `i`-th root in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveMap {
    pub dynkin: DynkinType,
    pub zero: Q,
    pub values: Vec<Q>,
}

impl ConcaveMap {
    pub fn new(rs: &RootSystem, zero: Q, values: Vec<Q>) -> Result<Self> {
        if values.len() != rs.len() {
            return Err(Error::SizeMismatch(format!(
                "{} values for {} roots of {}",
                values.len(),
                rs.len(),
                rs.dynkin()
            )));
        }
        Ok(ConcaveMap { dynkin: rs.dynkin(), zero, values })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(rs: &RootSystem, zero: i64, values: &[i64]) -> Result<Self> {
        ConcaveMap::new(rs, int(zero), values.iter().map(|&v| int(v)).collect())
    }

    pub fn constant_zero(rs: &RootSystem) -> Self {
        ConcaveMap { dynkin: rs.dynkin(), zero: Q::zero(), values: vec![Q::zero(); rs.len()] }
    }

    pub fn value(&self, i: usize) -> &Q {
        &self.values[i]
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.zero) && self.values.iter().all(is_integral)
    }

    /// Pointwise ceiling, including the value at `0`.
    fn ceil_unchecked(&self) -> ConcaveMap {
        ConcaveMap {
            dynkin: self.dynkin,
            zero: self.zero.ceil(),
            values: self.values.iter().map(|v| v.ceil()).collect(),
        }
    }
}

impl fmt::Display for ConcaveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(fmt_q).collect();
        write!(f, "{} 0:{} ({})", self.dynkin, fmt_q(&self.zero), vals.join(","))
    }
}

/// An `n`-concave function `(f_1, …, f_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveTuple {
    entries: Vec<ConcaveMap>,
}

impl ConcaveTuple {
    pub fn new(entries: Vec<ConcaveMap>) -> Result<Self> {
        let first = entries.first().ok_or(Error::EmptySubset)?;
        if let Some(bad) = entries.iter().find(|f| f.dynkin != first.dynkin) {
            return Err(Error::RankMismatch { expected: first.dynkin.to_string(), found: bad.dynkin.to_string() });
        }
        Ok(ConcaveTuple { entries })
    }

    pub fn entries(&self) -> &[ConcaveMap] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dynkin(&self) -> DynkinType {
        self.entries[0].dynkin
    }

    /// `r ↦ Σ_{i∈I} f_i(r)` for 0-based indices `I`.
    pub fn combine(&self, subset: &[usize]) -> Result<ConcaveMap> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut acc = ConcaveMap {
            dynkin: self.dynkin(),
            zero: Q::zero(),
            values: vec![Q::zero(); self.entries[0].values.len()],
        };
        for &i in subset {
            let f = self.entries.get(i).ok_or_else(|| Error::IndexOutOfRange {
                index: i,
                valid: format!("0..{}", self.entries.len()),
            })?;
            acc.zero += &f.zero;
            for (a, v) in acc.values.iter_mut().zip(&f.values) {
                *a += v;
            }
        }
        Ok(acc)
    }

    /// Pointwise maximum of the entries.
    pub fn sup(&self) -> ConcaveMap {
        let mut acc = self.entries[0].clone();
        for f in &self.entries[1..] {
            if f.zero > acc.zero {
                acc.zero = f.zero.clone();
            }
            for (a, v) in acc.values.iter_mut().zip(&f.values) {
                if *v > *a {
                    *a = v.clone();
                }
            }
        }
        acc
    }
}

/// The first failure of concavity found by [`RootSystem::is_concave`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `f(0) < 0`.
    NegativeAtZero,
    /// `f(r + s) > f(r) + f(s)` with `r + s ∈ Φ ∪ {0}`.
    Pair(Root, Root),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeAtZero => write!(f, "f(0) < 0"),
            Violation::Pair(r, s) => write!(f, "({r},{s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeWitness {
    TypeI(ApartmentPoint),
    TypeII(BoundedSet),
    /// A root whose realization system has no solution.
    TypeIII(Root),
}

impl TypeWitness {
    pub fn label(&self) -> &'static str {
        match self {
            TypeWitness::TypeI(_) => "TypeI",
            TypeWitness::TypeII(_) => "TypeII",
            TypeWitness::TypeIII(_) => "TypeIII",
        }
    }
}

impl fmt::Display for TypeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeWitness::TypeI(p) => write!(f, "TypeI theta={p}"),
            TypeWitness::TypeII(omega) => {
                let pts: Vec<String> = omega.points().iter().map(|p| p.to_string()).collect();
                write!(f, "TypeII omega={{{}}}", pts.join(","))
            }
            TypeWitness::TypeIII(r) => write!(f, "TypeIII certificate={r}"),
        }
    }
}

/// Depth-`e′` filtration data at `θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoyPrasadDatum {
    pub theta: ApartmentPoint,
    pub depth: Q,
    /// `r ↦ −⌊r(θ) − e′⌋` in canonical root order.
    pub root_values: Vec<i64>,
    /// `⌈e′⌉`.
    pub torus_level: i64,
}

impl MoyPrasadDatum {
    /// The root levels as a concave map with `0` at the zero slot.
    pub fn to_concave_map(&self) -> ConcaveMap {
        ConcaveMap {
            dynkin: self.theta.dynkin,
            zero: Q::zero(),
            values: self.root_values.iter().map(|&v| int(v)).collect(),
        }
    }
}

impl RootSystem {
    fn check_map(&self, f: &ConcaveMap) -> Result<()> {
        if f.dynkin != self.dynkin() || f.values.len() != self.len() {
            return Err(Error::RankMismatch { expected: self.dynkin().to_string(), found: f.dynkin.to_string() });
        }
        Ok(())
    }

    /// Pairwise concavity test; `None` means concave.
    pub fn is_concave(&self, f: &ConcaveMap) -> Result<Option<Violation>> {
        self.check_map(f)?;
        if f.zero.is_negative() {
            return Ok(Some(Violation::NegativeAtZero));
        }
        for &(i, j, target) in self.sum_pairs() {
            let lhs = match target {
                SumTarget::Zero => &f.zero,
                SumTarget::Root(k) => &f.values[k],
            };
            if *lhs > &f.values[i] + &f.values[j] {
                return Ok(Some(Violation::Pair(self.root(i).clone(), self.root(j).clone())));
            }
        }
        Ok(None)
    }

    fn require_concave(&self, f: &ConcaveMap) -> Result<()> {
        match self.is_concave(f)? {
            None => Ok(()),
            Some(v) => Err(Error::NotConcave(v.to_string())),
        }
    }

    /// `m_θ`: `r ↦ m_r(θ)`, `0 ↦ 0`.
    pub fn from_point(&self, theta: &ApartmentPoint) -> Result<ConcaveMap> {
        let values = self.roots().iter().map(|r| self.m_point(r, theta).map(int)).collect::<Result<_>>()?;
        Ok(ConcaveMap { dynkin: self.dynkin(), zero: Q::zero(), values })
    }

    /// `f_Ω`: `r ↦ m_r(Ω)`, `0 ↦ 0`.
    pub fn from_set(&self, omega: &BoundedSet) -> Result<ConcaveMap> {
        let values = self.roots().iter().map(|r| self.m_set(r, omega).map(int)).collect::<Result<_>>()?;
        Ok(ConcaveMap { dynkin: self.dynkin(), zero: Q::zero(), values })
    }

    /// `⌈f⌉`.
    pub fn ceiling(&self, f: &ConcaveMap) -> Result<ConcaveMap> {
        self.require_concave(f)?;
        Ok(f.ceil_unchecked())
    }

    /// Linear system whose solutions realize `f`.
    ///
    /// With `root = None` this is `−f(r) ≤ r(θ) < −f(r) + 1` for every root.
    /// With `root = Some(i)` the window is imposed only at root `i` and every
    /// other root gets the one-sided bound `s(θ) ≥ −f(s)`.
    pub fn realization_system(&self, f: &ConcaveMap, root: Option<usize>) -> System {
        let mut sys = System::new(self.rank());
        for (i, r) in self.roots().iter().enumerate() {
            let coeffs: Vec<Q> = r.coeffs.iter().map(|&c| int(c)).collect();
            let low = -f.values[i].clone();
            if root.is_none_or(|k| k == i) {
                sys.push(Constraint::lt(coeffs.clone(), &low + int(1)));
            }
            sys.push(Constraint::ge(coeffs, low));
        }
        sys
    }

    /// Decides whether an integral concave `f` comes from a point, from a
    /// bounded set, or from neither.
    pub fn classify(&self, f: &ConcaveMap) -> Result<TypeWitness> {
        self.check_map(f)?;
        if !f.is_integral() {
            return Err(Error::NotIntegral(f.to_string()));
        }
        self.require_concave(f)?;

        if let Some(x) = self.realization_system(f, None).solve() {
            return Ok(TypeWitness::TypeI(ApartmentPoint::new(self.dynkin(), x)));
        }
        let mut points: Vec<ApartmentPoint> = Vec::new();
        for i in 0..self.len() {
            match self.realization_system(f, Some(i)).solve() {
                Some(x) => {
                    let p = ApartmentPoint::new(self.dynkin(), x);
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                None => return Ok(TypeWitness::TypeIII(self.root(i).clone())),
            }
        }
        Ok(TypeWitness::TypeII(BoundedSet::new(points)?))
    }

    /// `f′(α) = ⌈min Σ λ_β f(β)⌉` over `λ ≥ 0` with `Σ λ_β β = α`; `f′(0) = f(0)`.
    pub fn regularize(&self, f: &ConcaveMap) -> Result<ConcaveMap> {
        self.require_concave(f)?;
        let n = self.rank();
        let a: Vec<Vec<Q>> =
            (0..n).map(|row| self.roots().iter().map(|r| int(r.coeffs[row])).collect()).collect();
        let mut values = Vec::with_capacity(self.len());
        for (i, alpha) in self.roots().iter().enumerate() {
            let lp = StandardLp { a: a.clone(), b: alpha.coeffs.iter().map(|&c| int(c)).collect(), c: f.values.clone() };
            let sol = lp.solve().map_err(|e| match e {
                LpError::Unbounded => Error::UnboundedRegularization(alpha.to_string()),
                LpError::Infeasible => Error::InfeasibleRegularization(alpha.to_string()),
            })?;
            debug_assert!(sol.objective <= f.values[i]);
            values.push(sol.objective.ceil());
        }
        Ok(ConcaveMap { dynkin: self.dynkin(), zero: f.zero.clone(), values })
    }

    /// Root levels `−⌊r(θ) − e′⌋` and torus level `⌈e′⌉`.
    pub fn moy_prasad(&self, theta: &ApartmentPoint, depth: &Q) -> Result<MoyPrasadDatum> {
        if depth.is_negative() {
            return Err(Error::NegativeDepth(fmt_q(depth)));
        }
        let root_values = self
            .roots()
            .iter()
            .map(|r| Ok(-floor_i64(&(self.pairing(r, theta)? - depth))))
            .collect::<Result<_>>()?;
        Ok(MoyPrasadDatum { theta: theta.clone(), depth: depth.clone(), root_values, torus_level: ceil_i64(depth) })
    }
}
