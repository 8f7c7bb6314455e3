//! Exact combinatorics for higher-dimensional Bruhat-Tits data.
//!
//! Everything here is computed over exact rationals: root systems generated
//! from Cartan matrices, points and bounded subsets of the apartment,
//! concave functions on `Φ ∪ {0}` with their type I/II/III classification,
//! truncated Laurent-series matrix models of n-bounded subgroups of `SL_m`,
//! and closed-fibre root data.
//!
//! Conventions shared by every module:
//!
//! * Simple roots use Bourbaki numbering; public node labels are 1-based and
//!   `0` denotes the affine simple root `α₀`.
//! * Roots are integer coefficient vectors in the simple-root basis, listed in
//!   a fixed canonical order (positives by height, ties by index of the
//!   leading simple root, then the negatives in the same order).
//! * Apartment points are rational coordinate vectors in the
//!   fundamental-coweight basis, so `r(θ)` is a plain dot product.

#![allow(clippy::needless_range_loop)]

pub mod apartment;
pub mod concave;
mod error;
pub mod fibre;
pub mod io;
pub mod lp;
pub mod polyhedron;
pub mod rational;
pub mod rootsystem;
pub mod series;
pub mod seriesgroup;

pub use apartment::{ApartmentPoint, BoundedSet};
pub use concave::{ConcaveMap, ConcaveTuple, MoyPrasadDatum, TypeWitness, Violation};
pub use error::{Error, Result};
pub use fibre::{FacetScaling, FibreRootDatum, McKayData};
pub use rational::Q;
pub use rootsystem::{DynkinType, Family, GroupConstants, Root, RootSystem};
pub use series::{Coeff, Fp, TruncatedSeries};
pub use seriesgroup::{SampleParams, TruncatedLaurentMatrix, ValuationPattern};
