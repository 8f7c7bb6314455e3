//! Independent test oracles. They use plain integers or brute force and share
//! no code paths with the library's decision procedures.
#![allow(dead_code, clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use parahoric::rational::{frac, int};
use parahoric::{ApartmentPoint, ConcaveMap, Q, Root, RootSystem};
use rand::Rng;

/// Index into `Φ̃ = Φ ∪ {0}`: `None` is the zero slot.
pub type Slot = Option<usize>;

/// Every multiset of 2..=max_len elements of `Φ̃` whose sum lies in `Φ̃`,
/// with the slot of that sum.
pub fn multisets(rs: &RootSystem, max_len: usize) -> Vec<(Vec<Slot>, Slot)> {
    let slots: Vec<Slot> = std::iter::once(None).chain((0..rs.len()).map(Some)).collect();
    let vec_of = |s: Slot| match s {
        None => vec![0; rs.rank()],
        Some(i) => rs.root(i).coeffs.clone(),
    };
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<i64>)> = vec![(vec![], vec![0; rs.rank()])];
    while let Some((picked, sum)) = stack.pop() {
        if picked.len() >= 2 {
            let target = if sum.iter().all(|&x| x == 0) {
                Some(None)
            } else {
                rs.index_of(&Root::new(sum.clone())).map(Some)
            };
            if let Some(t) = target {
                out.push((picked.iter().map(|&k| slots[k]).collect(), t));
            }
        }
        if picked.len() == max_len {
            continue;
        }
        let start = picked.last().copied().unwrap_or(0);
        for k in start..slots.len() {
            let v = vec_of(slots[k]);
            let mut p = picked.clone();
            p.push(k);
            stack.push((p, sum.iter().zip(&v).map(|(a, b)| a + b).collect()));
        }
    }
    out
}

/// Integer concavity over all sums of at most `max_len` terms.
pub fn exhaustively_concave(zero: i64, values: &[i64], sums: &[(Vec<Slot>, Slot)]) -> bool {
    let val = |s: &Slot| match s {
        None => zero,
        Some(i) => values[*i],
    };
    zero >= 0 && sums.iter().all(|(terms, target)| val(target) <= terms.iter().map(val).sum::<i64>())
}

pub fn to_ints(f: &ConcaveMap) -> (i64, Vec<i64>) {
    let conv = |q: &Q| {
        assert!(q.is_integer());
        i64::try_from(q.to_integer()).unwrap()
    };
    (conv(&f.zero), f.values.iter().map(conv).collect())
}

/// Solves a square system exactly; `None` if singular.
fn solve_square(cols: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = rhs.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let prow = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// `min Σ λ_β f(β)` over `λ ≥ 0`, `Σ λ_β β = α`, by enumerating every basis
/// of linearly independent roots.
pub fn lp_min_by_vertices(rs: &RootSystem, f: &ConcaveMap, alpha: &Root) -> Q {
    let n = rs.rank();
    let cols: Vec<Vec<Q>> = rs.roots().iter().map(|r| r.coeffs.iter().map(|&c| int(c)).collect()).collect();
    let rhs: Vec<Q> = alpha.coeffs.iter().map(|&c| int(c)).collect();
    let mut best: Option<Q> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let basis: Vec<Vec<Q>> = idx.iter().map(|&i| cols[i].clone()).collect();
        if let Some(lambda) = solve_square(&basis, &rhs) {
            if lambda.iter().all(|l| !l.is_negative()) {
                let v = idx.iter().zip(&lambda).fold(Q::zero(), |acc, (&i, l)| acc + l * &f.values[i]);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        // next combination
        let m = cols.len();
        let mut k = n;
        while k > 0 && idx[k - 1] == m - n + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for j in k..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
    best.expect("α itself is a feasible combination")
}

fn floor(x: &Q) -> i64 {
    i64::try_from(x.floor().to_integer()).unwrap()
}

/// Whether `θ` satisfies the realization system of `f` at root `k`:
/// `m_k(θ) = f(k)` and `m_s(θ) ≤ f(s)` elsewhere.
pub fn realizes_at(rs: &RootSystem, values: &[i64], k: usize, theta: &[Q]) -> bool {
    rs.roots().iter().enumerate().all(|(i, r)| {
        let x: Q = r.coeffs.iter().zip(theta).fold(Q::zero(), |acc, (&c, t)| acc + int(c) * t);
        let m = -floor(&x);
        if i == k {
            m == values[i]
        } else {
            m <= values[i]
        }
    })
}

/// Searches `[lo, hi]^rank` on a lattice of step `1/den`.
pub fn grid_witness(rs: &RootSystem, values: &[i64], k: usize, lo: i64, hi: i64, den: i64) -> Option<Vec<Q>> {
    let n = rs.rank();
    let steps = (hi - lo) * den;
    let mut idx = vec![0i64; n];
    loop {
        let theta: Vec<Q> = idx.iter().map(|&i| frac(lo * den + i, den)).collect();
        if realizes_at(rs, values, k, &theta) {
            return Some(theta);
        }
        let mut d = 0;
        while d < n && idx[d] == steps {
            idx[d] = 0;
            d += 1;
        }
        if d == n {
            return None;
        }
        idx[d] += 1;
    }
}

/// A random point of the half-open alcove `α_i(θ) ≥ 0`, `α̃(θ) < 1`.
pub fn random_alcove_point(rs: &RootSystem, rng: &mut impl Rng) -> ApartmentPoint {
    let csum: i64 = rs.highest_coeffs().iter().sum();
    let n = rng.random_range(2..=12i64);
    let coords = (0..rs.rank()).map(|_| frac(rng.random_range(0..n), n * csum)).collect();
    ApartmentPoint::new(rs.dynkin(), coords)
}

/// A random point with small-denominator coordinates in `[-3, 3]`.
pub fn random_point(rs: &RootSystem, rng: &mut impl Rng) -> ApartmentPoint {
    let coords = (0..rs.rank())
        .map(|_| {
            let d = rng.random_range(1..=12i64);
            frac(rng.random_range(-3 * d..=3 * d), d)
        })
        .collect();
    ApartmentPoint::new(rs.dynkin(), coords)
}

/// A random integer-valued concave map with values in `[lo, hi]` and
/// `f(0) = 0`, produced by repairing a random assignment; `None` on rejection.
pub fn random_concave(rs: &RootSystem, rng: &mut impl Rng, lo: i64, hi: i64) -> Option<ConcaveMap> {
    let mut v: Vec<i64> = (0..rs.len()).map(|_| rng.random_range(lo..=hi)).collect();
    loop {
        let mut changed = false;
        for &(i, j, target) in rs.sum_pairs() {
            if let parahoric::rootsystem::SumTarget::Root(k) = target {
                if v[k] > v[i] + v[j] {
                    v[k] = v[i] + v[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        if v.iter().any(|&x| x < lo) {
            return None;
        }
    }
    if (0..rs.num_positive()).any(|i| v[i] + v[rs.neg_index(i)] < 0) {
        return None;
    }
    Some(ConcaveMap::from_ints(rs, 0, &v).unwrap())
}

pub fn q(n: i64, d: i64) -> BigRational {
    frac(n, d)
}
