//! Exact feasibility of linear inequality systems with strict bounds.
//!
//! Right-hand sides live in the ordered field `ℚ(ε)` restricted to linear
//! terms `a + bε`, compared lexicographically with `ε` a positive
//! infinitesimal. A strict bound `x < c` is stored as `x ≤ c − ε`. Fourier–
//! Motzkin elimination only forms positive combinations, so right-hand sides
//! stay linear in `ε` and the decision is exact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Q};

/// `re + eps·ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsRational {
    pub re: Q,
    pub eps: Q,
}

impl EpsRational {
    pub fn new(re: Q, eps: Q) -> Self {
        EpsRational { re, eps }
    }

    pub fn real(re: Q) -> Self {
        EpsRational { re, eps: Q::zero() }
    }

    pub fn zero() -> Self {
        EpsRational::real(Q::zero())
    }

    pub fn scale(&self, k: &Q) -> Self {
        EpsRational { re: &self.re * k, eps: &self.eps * k }
    }

    pub fn at(&self, epsilon: &Q) -> Q {
        &self.re + &self.eps * epsilon
    }

    pub fn is_negative(&self) -> bool {
        *self < EpsRational::zero()
    }
}

impl Ord for EpsRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.eps.cmp(&other.eps))
    }
}

impl PartialOrd for EpsRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &EpsRational {
    type Output = EpsRational;
    fn add(self, o: &EpsRational) -> EpsRational {
        EpsRational { re: &self.re + &o.re, eps: &self.eps + &o.eps }
    }
}

impl Sub for &EpsRational {
    type Output = EpsRational;
    fn sub(self, o: &EpsRational) -> EpsRational {
        EpsRational { re: &self.re - &o.re, eps: &self.eps - &o.eps }
    }
}

impl Neg for &EpsRational {
    type Output = EpsRational;
    fn neg(self) -> EpsRational {
        EpsRational { re: -&self.re, eps: -&self.eps }
    }
}

impl Mul<&Q> for &EpsRational {
    type Output = EpsRational;
    fn mul(self, k: &Q) -> EpsRational {
        self.scale(k)
    }
}

/// `Σ coeffs[j]·x_j ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rhs: EpsRational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Q>, rhs: Q) -> Self {
        Constraint { coeffs, rhs: EpsRational::real(rhs) }
    }

    pub fn lt(coeffs: Vec<Q>, rhs: Q) -> Self {
        Constraint { coeffs, rhs: EpsRational::new(rhs, -Q::one()) }
    }

    pub fn ge(coeffs: Vec<Q>, rhs: Q) -> Self {
        Constraint::le(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn gt(coeffs: Vec<Q>, rhs: Q) -> Self {
        Constraint::lt(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scales so the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= &lead;
            }
            self.rhs = self.rhs.scale(&lead.recip());
        }
        self
    }

    fn slack(&self, x: &[EpsRational]) -> EpsRational {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .fold(EpsRational::zero(), |acc, (c, v)| &acc + &v.scale(c));
        &self.rhs - &lhs
    }
}

/// A conjunction of linear constraints over `nvars` rational unknowns.
#[derive(Debug, Clone)]
pub struct System {
    nvars: usize,
    constraints: Vec<Constraint>,
}

/// Keeps only the tightest bound per normalized direction.
fn reduce(constraints: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut tightest: HashMap<Vec<Q>, EpsRational> = HashMap::new();
    let mut order: Vec<Vec<Q>> = Vec::new();
    for c in constraints {
        if c.is_trivial() {
            if c.rhs.is_negative() {
                return None;
            }
            continue;
        }
        let c = c.normalized();
        match tightest.get_mut(&c.coeffs) {
            Some(rhs) => {
                if c.rhs < *rhs {
                    *rhs = c.rhs;
                }
            }
            None => {
                order.push(c.coeffs.clone());
                tightest.insert(c.coeffs, c.rhs);
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|coeffs| {
                let rhs = tightest.remove(&coeffs).unwrap();
                Constraint { coeffs, rhs }
            })
            .collect(),
    )
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System { nvars, constraints: Vec::new() }
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.nvars);
        self.constraints.push(c);
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_feasible(&self) -> bool {
        self.solve_eps().is_some()
    }

    /// A solution over `ℚ(ε)`, or `None` when infeasible.
    pub fn solve_eps(&self) -> Option<Vec<EpsRational>> {
        // stages[k] holds the constraints over x_0..=x_k, before eliminating x_k
        let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); self.nvars];
        let mut current = reduce(self.constraints.clone())?;
        for k in (0..self.nvars).rev() {
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            let mut rest = Vec::new();
            for c in &current {
                if c.coeffs[k].is_positive() {
                    upper.push(c);
                } else if c.coeffs[k].is_negative() {
                    lower.push(c);
                } else {
                    rest.push(c.clone());
                }
            }
            for u in &upper {
                for l in &lower {
                    let a = u.coeffs[k].clone();
                    let b = -l.coeffs[k].clone();
                    // b·u + a·l cancels x_k
                    let coeffs = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| &b * x + &a * y).collect();
                    let rhs = &u.rhs.scale(&b) + &l.rhs.scale(&a);
                    rest.push(Constraint { coeffs, rhs });
                }
            }
            stages[k] = current;
            current = reduce(rest)?;
        }
        debug_assert!(current.is_empty());

        let mut x: Vec<EpsRational> = Vec::with_capacity(self.nvars);
        for (k, stage) in stages.iter().enumerate() {
            let mut lo: Option<EpsRational> = None;
            let mut hi: Option<EpsRational> = None;
            for c in stage {
                let a = &c.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                let known = c.coeffs[..k]
                    .iter()
                    .zip(&x)
                    .fold(EpsRational::zero(), |acc, (ci, xi)| &acc + &xi.scale(ci));
                let bound = (&c.rhs - &known).scale(&a.recip());
                if a.is_positive() {
                    if hi.as_ref().is_none_or(|h| bound < *h) {
                        hi = Some(bound);
                    }
                } else if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            }
            let value = match (lo, hi) {
                (Some(l), Some(h)) => {
                    debug_assert!(l <= h);
                    (&l + &h).scale(&rational::frac(1, 2))
                }
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => EpsRational::zero(),
            };
            x.push(value);
        }
        Some(x)
    }

    /// A rational solution with the infinitesimal replaced by a small positive
    /// rational, or `None` when infeasible.
    pub fn solve(&self) -> Option<Vec<Q>> {
        let x = self.solve_eps()?;
        let mut epsilon = Q::one();
        for c in &self.constraints {
            let s = c.slack(&x);
            debug_assert!(!s.is_negative());
            if s.re.is_positive() && s.eps.is_negative() {
                let limit = &s.re / -&s.eps;
                if limit < epsilon {
                    epsilon = limit;
                }
            }
        }
        epsilon /= rational::int(2);
        let point: Vec<Q> = x.iter().map(|v| v.at(&epsilon)).collect();
        debug_assert!(self.satisfied_by(&point));
        Some(point)
    }

    /// Whether a concrete rational point satisfies every constraint, reading
    /// an `ε` term in a right-hand side as a strict inequality.
    pub fn satisfied_by(&self, point: &[Q]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs = c.coeffs.iter().zip(point).fold(Q::zero(), |acc, (a, b)| acc + a * b);
            match lhs.cmp(&c.rhs.re) {
                Ordering::Less => true,
                Ordering::Equal => !c.rhs.eps.is_negative(),
                Ordering::Greater => false,
            }
        })
    }
}
