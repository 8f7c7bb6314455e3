//! Truncated multivariate Laurent series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// Coefficient field of the series.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Option<Self>;

    /// Image of a rational, `None` if its denominator is not invertible.
    fn from_q(q: &Q) -> Option<Self>;

    /// Rational representative used for serialization.
    fn to_q(&self) -> Q;
}

impl Coeff for Q {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_q(q: &Q) -> Option<Self> {
        Some(q.clone())
    }

    fn to_q(&self) -> Q {
        self.clone()
    }
}

/// The prime field `ℤ/P`. `P` must be prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }

    fn from_q(q: &Q) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |n: &BigInt| Fp::<P>(n.mod_floor(&p).to_u64().expect("residue fits"));
        reduce(q.denom()).inv().map(|d| reduce(q.numer()) * d)
    }

    fn to_q(&self) -> Q {
        Q::from_integer(BigInt::from(self.0))
    }
}

/// Exponent vector of a monomial `z_1^{e_1} ⋯ z_n^{e_n}`.
pub type Exponent = Vec<i64>;

/// A Laurent series in `nvars` variables, kept modulo `z_k^{cap+1}` in every
/// variable, with poles of order at most `pole_cap`.
///
/// Terms above the cap are dropped silently; a term below `-pole_cap` is a
/// [`Error::PoleOverflow`].
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff = Q> {
    nvars: usize,
    cap: u32,
    pole_cap: u32,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(nvars: usize, cap: u32, pole_cap: u32) -> Self {
        TruncatedSeries { nvars, cap, pole_cap, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, cap: u32, pole_cap: u32, c: C) -> Self {
        let mut s = Self::zero(nvars, cap, pole_cap);
        s.add_term(vec![0; nvars], c).expect("constant term is in range");
        s
    }

    pub fn one(nvars: usize, cap: u32, pole_cap: u32) -> Self {
        Self::constant(nvars, cap, pole_cap, C::one())
    }

    /// `c · z^exp`, or zero if some exponent exceeds the cap.
    pub fn monomial(nvars: usize, cap: u32, pole_cap: u32, exp: Exponent, c: C) -> Result<Self> {
        let mut s = Self::zero(nvars, cap, pole_cap);
        s.add_term(exp, c)?;
        Ok(s)
    }

    /// Builds a series from raw terms, summing repeated exponents.
    pub fn from_terms(
        nvars: usize,
        cap: u32,
        pole_cap: u32,
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(nvars, cap, pole_cap);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::SizeMismatch(format!("exponent {e:?} in {nvars} variables")));
            }
            s.add_term(e, c)?;
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn pole_cap(&self) -> u32 {
        self.pole_cap
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&vec![0; self.nvars]).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, exp: &[i64]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, exp: Exponent, c: C) -> Result<()> {
        if c.is_zero() || exp.iter().any(|&e| e > self.cap as i64) {
            return Ok(());
        }
        if let Some(&low) = exp.iter().filter(|&&e| e < -(self.pole_cap as i64)).min() {
            return Err(Error::PoleOverflow { order: low, cap: self.pole_cap });
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.nvars, self.cap, self.pole_cap) != (other.nvars, other.cap, other.pole_cap) {
            return Err(Error::SizeMismatch(format!(
                "series windows differ: (n={}, D={}, P={}) vs (n={}, D={}, P={})",
                self.nvars, self.cap, self.pole_cap, other.nvars, other.cap, other.pole_cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.nvars, self.cap, self.pole_cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k.clone()).expect("exponents unchanged");
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.cap, self.pole_cap);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone())?;
            }
        }
        Ok(out)
    }

    /// Same terms in a different window.
    pub fn rewindow(&self, cap: u32, pole_cap: u32) -> Result<Self> {
        Self::from_terms(self.nvars, cap, pole_cap, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Smallest exponent of each variable among the nonzero terms.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Every term has exponents `≥ bound` componentwise.
    pub fn has_order_at_least(&self, bound: &[i64]) -> bool {
        self.terms.keys().all(|e| e.iter().zip(bound).all(|(x, b)| x >= b))
    }

    /// Every term other than the constant has total degree `≥ level`.
    pub fn is_unit_congruent(&self, level: u32) -> bool {
        let one = Self::one(self.nvars, self.cap, self.pole_cap);
        match self.sub(&one) {
            Ok(d) => d.terms.keys().all(|e| e.iter().sum::<i64>() >= level as i64),
            Err(_) => false,
        }
    }

    /// Inverse of a power series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let zero_exp = vec![0; self.nvars];
        if self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::NotUnit(format!("{self} has poles")));
        }
        let c0 = self.coefficient(&zero_exp);
        let c0_inv = c0.inv().ok_or_else(|| Error::NotUnit(format!("{self} has no invertible constant term")))?;
        // u = c0 (1 - x) with x of positive total degree, so x is nilpotent
        let one = Self::one(self.nvars, self.cap, self.pole_cap);
        let x = one.sub(&self.scale(&c0_inv))?;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..(self.nvars as u32 * self.cap) {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Substitutes `z_1 = ⋯ = z_n = t`.
    pub fn specialize_diag(&self) -> Result<Self> {
        Self::from_terms(
            1,
            self.cap,
            self.pole_cap,
            self.terms.iter().map(|(e, c)| (vec![e.iter().sum()], c.clone())),
        )
    }

    /// Substitutes `t = z_1 ⋯ z_n` into a one-variable series.
    pub fn embed_uniformizer(&self, n: usize) -> Result<Self> {
        if self.nvars != 1 {
            return Err(Error::SizeMismatch(format!("expected one variable, found {}", self.nvars)));
        }
        Self::from_terms(n, self.cap, self.pole_cap, self.terms.iter().map(|(e, c)| (vec![e[0]; n], c.clone())))
    }
}

impl<C: Coeff> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |k: usize| if self.nvars == 1 { "t".to_string() } else { format!("z{}", k + 1) };
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| if x == 1 { var(k) } else { format!("{}^{x}", var(k)) })
                .collect();
            let coef = fmt_q(&c.to_q());
            match (mono.is_empty(), coef.as_str()) {
                (true, _) => write!(f, "{coef}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{coef}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    type S = TruncatedSeries<Q>;

    fn mono(e: &[i64], c: i64) -> S {
        S::monomial(e.len(), 4, 2, e.to_vec(), int(c)).unwrap()
    }

    #[test]
    fn truncation_and_poles() {
        let a = mono(&[3, 0], 1);
        assert!(a.mul(&a).unwrap().is_zero());
        let p = mono(&[-2, 0], 1);
        assert_eq!(p.mul(&a).unwrap(), mono(&[1, 0], 1));
        assert_eq!(p.mul(&p), Err(Error::PoleOverflow { order: -4, cap: 2 }));
        assert!(S::monomial(2, 4, 2, vec![5, 0], int(1)).unwrap().is_zero());
    }

    #[test]
    fn unit_inverse() {
        // 2 + z1 + z1 z2
        let u = S::from_terms(2, 4, 0, vec![(vec![0, 0], int(2)), (vec![1, 0], int(1)), (vec![1, 1], int(1))]).unwrap();
        let inv = u.inverse().unwrap();
        assert!(u.mul(&inv).unwrap().is_one());
        assert_eq!(inv.coefficient(&[0, 0]), frac(1, 2));
        assert!(matches!(mono(&[1, 0], 1).inverse(), Err(Error::NotUnit(_))));
    }

    #[test]
    fn substitutions() {
        let s = S::from_terms(2, 4, 1, vec![(vec![1, 1], int(3)), (vec![2, 3], int(1)), (vec![-1, 0], int(1))]).unwrap();
        let d = s.specialize_diag().unwrap();
        assert_eq!(d.terms().len(), 2);
        assert_eq!(d.coefficient(&[2]), int(3));
        assert_eq!(d.coefficient(&[-1]), int(1));

        let t = S::from_terms(1, 4, 1, vec![(vec![2], int(5)), (vec![-1], int(1))]).unwrap();
        let e = t.embed_uniformizer(3).unwrap();
        assert_eq!(e.coefficient(&[2, 2, 2]), int(5));
        assert_eq!(e.coefficient(&[-1, -1, -1]), int(1));
        assert!(matches!(s.embed_uniformizer(2), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn prime_field() {
        type F7 = Fp<7>;
        assert_eq!(F7::new(3) * F7::new(5), F7::new(1));
        assert_eq!(F7::new(3).inv(), Some(F7::new(5)));
        assert_eq!(F7::from_q(&frac(1, 2)), Some(F7::new(4)));
        assert_eq!(F7::from_q(&frac(1, 7)), None);
        assert_eq!(-F7::new(0), F7::new(0));

        let u = TruncatedSeries::<F7>::from_terms(1, 6, 0, vec![(vec![0], F7::new(3)), (vec![1], F7::new(1))]).unwrap();
        assert!(u.mul(&u.inverse().unwrap()).unwrap().is_one());
    }

    #[test]
    fn display() {
        let s = S::from_terms(2, 4, 1, vec![(vec![0, 0], int(1)), (vec![1, 2], frac(-1, 3))]).unwrap();
        assert_eq!(s.to_string(), "1 + -1/3*z1*z2^2");
        assert_eq!(S::zero(1, 4, 0).to_string(), "0");
    }
}
