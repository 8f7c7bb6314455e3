//! Root systems of the simple Dynkin types, generated from Cartan matrices.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::apartment::ApartmentPoint;
use crate::error::{Error, Result};
use crate::rational::{self, int, Q};

/// Largest rank accepted for the classical families.
pub const MAX_CLASSICAL_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=MAX_CLASSICAL_RANK).contains(&rank),
            Family::B | Family::C => (2..=MAX_CLASSICAL_RANK).contains(&rank),
            Family::D => (3..=MAX_CLASSICAL_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::BadDynkin(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadDynkin(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A root as its coefficient vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Root {
    type Err = Error;

    /// Accepts `[3,2]`, `3,2` or `[-1, -1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad root {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Root { coeffs })
    }
}

/// Where the sum of two roots lands, if anywhere in `Φ ∪ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumTarget {
    Zero,
    Root(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupConstants {
    pub coxeter: i64,
    /// Residue characteristics must satisfy `p ≥ bound` when
    /// `bound_is_strict` is false and `p > bound` otherwise.
    pub mixed_char_bound: i64,
    pub bound_is_strict: bool,
    pub min_faithful_dim: i64,
}

impl GroupConstants {
    pub fn admits_prime(&self, p: u64) -> bool {
        let p = p as i64;
        if self.bound_is_strict {
            p > self.mixed_char_bound
        } else {
            p >= self.mixed_char_bound
        }
    }
}

/// Full root datum of a simple type.
///
/// `cartan[i][j] = ⟨α_j, α_i^∨⟩`, so row `i` is the coroot `α_i^∨` written in
/// the fundamental-coweight basis.
#[derive(Debug, Clone)]
pub struct RootSystem {
    dynkin: DynkinType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    /// `(α_i, α_i) / 2` for a symmetrization of the Cartan matrix.
    half_lengths: Vec<Q>,
    sums: Vec<(usize, usize, SumTarget)>,
    /// `(Cᵀ)⁻¹`, converting coweight coordinates into coroot coordinates.
    cartan_t_inv: Vec<Vec<Q>>,
}

fn cartan_matrix(d: DynkinType) -> Vec<Vec<i64>> {
    let n = d.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match d.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        Family::F => (0..3).for_each(|i| link(i, i + 1)),
        Family::G => link(0, 1),
    }
    match d.family {
        // α_n short
        Family::B => c[n - 1][n - 2] = -2,
        // α_n long
        Family::C => c[n - 2][n - 1] = -2,
        // α_1, α_2 long; α_3, α_4 short
        Family::F => c[2][1] = -2,
        // α_1 short, α_2 long
        Family::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// Solves `l_i C[i][j] = l_j C[j][i]` along the (connected) Dynkin graph.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<Q> {
    let n = c.len();
    let mut l: Vec<Option<Q>> = vec![None; n];
    l[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && c[i][j] != 0 && l[j].is_none() {
                let li = l[i].clone().unwrap();
                l[j] = Some(li * int(c[i][j]) / int(c[j][i]));
                stack.push(j);
            }
        }
    }
    let l: Vec<Q> = l.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    // normalize so the short roots have (α, α)/2 = 1
    let min = l.iter().min().unwrap().clone();
    l.into_iter().map(|x| x / &min).collect()
}

fn generate_positive_roots(c: &[Vec<i64>]) -> Vec<Root> {
    let n = c.len();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| Root::simple(n, i).coeffs).collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        for r in &layer {
            all.insert(r.clone());
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = length of the α_i-string below β
                let mut p = 0i64;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * c[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        out.extend(layer.drain(..).map(Root::new));
        layer = next;
    }
    out
}

impl RootSystem {
    pub fn build(dynkin: DynkinType) -> Result<Self> {
        let dynkin = DynkinType::new(dynkin.family, dynkin.rank)?;
        let cartan = cartan_matrix(dynkin);
        let mut positives = generate_positive_roots(&cartan);
        positives.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
        let npos = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(Root::neg));
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();

        let mut sums = Vec::new();
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let s = roots[i].add(&roots[j]);
                if s.coeffs.iter().all(|&x| x == 0) {
                    sums.push((i, j, SumTarget::Zero));
                } else if let Some(&k) = index.get(&s.coeffs) {
                    sums.push((i, j, SumTarget::Root(k)));
                }
            }
        }
        let half_lengths = symmetrizer(&cartan);
        let ct: Vec<Vec<Q>> = (0..dynkin.rank)
            .map(|i| (0..dynkin.rank).map(|j| int(cartan[j][i])).collect())
            .collect();
        let cartan_t_inv = rational::invert(&ct).expect("Cartan matrix is invertible");
        Ok(RootSystem { dynkin, cartan, roots, npos, index, half_lengths, sums, cartan_t_inv })
    }

    pub fn from_name(name: &str) -> Result<Self> {
        RootSystem::build(name.parse()?)
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Row `i` is `α_i^∨` in the fundamental-coweight basis.
    pub fn coroot_in_coweight(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positives in canonical order, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Index of `-roots[i]`.
    pub fn neg_index(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.coeffs).copied()
    }

    pub fn require_index(&self, r: &Root) -> Result<usize> {
        if r.coeffs.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank().to_string(),
                found: r.coeffs.len().to_string(),
            });
        }
        self.index_of(r).ok_or_else(|| Error::NotARoot(r.coeffs.clone()))
    }

    pub fn highest(&self) -> &Root {
        &self.roots[self.npos - 1]
    }

    /// Coefficients `c_α` of the highest root.
    pub fn highest_coeffs(&self) -> &[i64] {
        &self.highest().coeffs
    }

    /// Pairs `(i, j)` with `i < j` whose sum lies in `Φ ∪ {0}`.
    pub fn sum_pairs(&self) -> &[(usize, usize, SumTarget)] {
        &self.sums
    }

    /// Invariant inner product `(r, s)` with short roots of squared length 2.
    pub fn inner(&self, r: &Root, s: &Root) -> Q {
        let n = self.rank();
        let mut acc = Q::zero();
        for i in 0..n {
            if r.coeffs[i] == 0 {
                continue;
            }
            for j in 0..n {
                if s.coeffs[j] != 0 && self.cartan[i][j] != 0 {
                    acc += int(r.coeffs[i] * s.coeffs[j] * self.cartan[i][j]) * &self.half_lengths[i];
                }
            }
        }
        acc
    }

    /// The coroot `r^∨` in the fundamental-coweight basis: entry `j` is `⟨α_j, r^∨⟩`.
    pub fn coroot_coweight(&self, r: &Root) -> Vec<Q> {
        let rr = self.inner(r, r);
        (0..self.rank())
            .map(|j| int(2) * self.inner(&Root::simple(self.rank(), j), r) / &rr)
            .collect()
    }

    /// `r(θ)`: the simple-root coefficients dotted with the coweight coordinates.
    pub fn pairing(&self, r: &Root, theta: &ApartmentPoint) -> Result<Q> {
        self.check_point(theta)?;
        if r.coeffs.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank().to_string(),
                found: r.coeffs.len().to_string(),
            });
        }
        Ok(dot(&r.coeffs, &theta.coords))
    }

    pub(crate) fn check_point(&self, theta: &ApartmentPoint) -> Result<()> {
        if theta.dynkin != self.dynkin || theta.coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.dynkin.to_string(),
                found: format!("{} with {} coordinates", theta.dynkin, theta.coords.len()),
            });
        }
        Ok(())
    }

    pub(crate) fn cartan_t_inv(&self) -> &[Vec<Q>] {
        &self.cartan_t_inv
    }

    pub fn group_constants(&self) -> GroupConstants {
        let coxeter = 1 + self.highest_coeffs().iter().sum::<i64>();
        let n = self.rank() as i64;
        let (mixed_char_bound, bound_is_strict) = match (self.dynkin.family, self.dynkin.rank) {
            (Family::E, 6) => (27, true),
            (Family::E, 7) => (56, true),
            (Family::B | Family::C | Family::D, _) => (2 * n + 1, true),
            _ => (coxeter, false),
        };
        let min_faithful_dim = match (self.dynkin.family, self.dynkin.rank) {
            (Family::A, _) => n + 1,
            (Family::B, _) => 2 * n + 1,
            (Family::C | Family::D, _) => 2 * n,
            (Family::E, 6) => 27,
            (Family::E, 7) => 56,
            (Family::E, _) => 248,
            (Family::F, _) => 26,
            (Family::G, _) => 7,
        };
        GroupConstants { coxeter, mixed_char_bound, bound_is_strict, min_faithful_dim }
    }
}

pub(crate) fn dot(coeffs: &[i64], coords: &[Q]) -> Q {
    coeffs
        .iter()
        .zip(coords)
        .filter(|(c, _)| **c != 0)
        .fold(Q::zero(), |acc, (c, x)| acc + int(*c) * x)
}

pub fn group_constants(dynkin: DynkinType) -> Result<GroupConstants> {
    Ok(RootSystem::build(dynkin)?.group_constants())
}
