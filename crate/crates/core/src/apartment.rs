//! Rational points and finite bounded subsets of the apartment, together with
//! alcove geometry.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, floor_i64, fmt_q, int, Q};
use crate::rootsystem::{dot, DynkinType, Root, RootSystem};

/// A point `θ = Σ b_α ω_α^∨`, stored by its coweight coordinates `b_α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApartmentPoint {
    pub dynkin: DynkinType,
    pub coords: Vec<Q>,
}

impl ApartmentPoint {
    pub fn new(dynkin: DynkinType, coords: Vec<Q>) -> Self {
        assert_eq!(coords.len(), dynkin.rank, "coordinate count must equal the rank");
        ApartmentPoint { dynkin, coords }
    }

    pub fn zero(dynkin: DynkinType) -> Self {
        ApartmentPoint { dynkin, coords: vec![Q::zero(); dynkin.rank] }
    }

    /// `ω_i^∨` for a 1-based node label.
    pub fn fundamental_coweight(dynkin: DynkinType, node: usize) -> Self {
        let mut p = ApartmentPoint::zero(dynkin);
        p.coords[node - 1] = Q::one();
        p
    }

    pub fn scale(&self, k: &Q) -> Self {
        ApartmentPoint { dynkin: self.dynkin, coords: self.coords.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &ApartmentPoint) -> Self {
        ApartmentPoint {
            dynkin: self.dynkin,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ApartmentPoint) -> Self {
        ApartmentPoint {
            dynkin: self.dynkin,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A close bounded subset `Ω`, given by the vertices of its convex hull.
///
/// Roots are linear, so the infimum over the hull is the minimum over the
/// listed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedSet {
    points: Vec<ApartmentPoint>,
}

impl BoundedSet {
    pub fn new(points: Vec<ApartmentPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        if let Some(bad) = points.iter().find(|p| p.dynkin != first.dynkin) {
            return Err(Error::RankMismatch { expected: first.dynkin.to_string(), found: bad.dynkin.to_string() });
        }
        Ok(BoundedSet { points })
    }

    pub fn singleton(p: ApartmentPoint) -> Self {
        BoundedSet { points: vec![p] }
    }

    pub fn points(&self) -> &[ApartmentPoint] {
        &self.points
    }

    pub fn dynkin(&self) -> DynkinType {
        self.points[0].dynkin
    }
}

/// Affine simple root label: `0` is `α₀`, `1..=ℓ` the simple roots.
pub type AffineNode = usize;

impl RootSystem {
    /// `m_r(θ) = −⌊r(θ)⌋`.
    pub fn m_point(&self, r: &Root, theta: &ApartmentPoint) -> Result<i64> {
        Ok(-floor_i64(&self.pairing(r, theta)?))
    }

    /// `m_r(Ω) = −⌊min_{θ∈Ω} r(θ)⌋`.
    pub fn m_set(&self, r: &Root, omega: &BoundedSet) -> Result<i64> {
        let mut min: Option<Q> = None;
        for p in omega.points() {
            let v = self.pairing(r, p)?;
            if min.as_ref().is_none_or(|m| v < *m) {
                min = Some(v);
            }
        }
        let min = min.ok_or(Error::EmptySet)?;
        Ok(-floor_i64(&min))
    }

    /// The nonzero alcove vertices `θ_α = ω_α^∨ / c_α`, indexed by simple root.
    /// The remaining vertex is the origin.
    pub fn alcove_vertices(&self) -> Vec<ApartmentPoint> {
        (1..=self.rank()).map(|i| self.alcove_vertex(i).expect("node in range")).collect()
    }

    /// Vertex for an affine node; `θ_{α₀} = 0`.
    pub fn alcove_vertex(&self, node: AffineNode) -> Result<ApartmentPoint> {
        if node > self.rank() {
            return Err(Error::IndexOutOfRange { index: node, valid: format!("0..={}", self.rank()) });
        }
        if node == 0 {
            return Ok(ApartmentPoint::zero(self.dynkin()));
        }
        let c = self.highest_coeffs()[node - 1];
        Ok(ApartmentPoint::fundamental_coweight(self.dynkin(), node).scale(&rational::frac(1, c)))
    }

    /// Least `d ≥ 1` with `d·θ` in the coroot lattice.
    pub fn denominator(&self, theta: &ApartmentPoint) -> Result<i64> {
        self.check_point(theta)?;
        let coroot_coords: Vec<Q> = self
            .cartan_t_inv()
            .iter()
            .map(|row| row.iter().zip(&theta.coords).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        let d: BigInt = rational::lcm_denominators(&coroot_coords);
        Ok(d.abs().to_i64().expect("denominator fits in i64"))
    }

    /// `d_α = e_α · c_α` where `e_α` is the order of `ω_α^∨` modulo the coroot lattice.
    pub fn d_alpha(&self, node: usize) -> Result<i64> {
        if node == 0 || node > self.rank() {
            return Err(Error::IndexOutOfRange { index: node, valid: format!("1..={}", self.rank()) });
        }
        let e = self.denominator(&ApartmentPoint::fundamental_coweight(self.dynkin(), node))?;
        Ok(e * self.highest_coeffs()[node - 1])
    }

    /// Barycenter of the facet of the closed alcove labelled by a nonempty
    /// set of affine nodes.
    pub fn barycenter(&self, nodes: &[AffineNode]) -> Result<ApartmentPoint> {
        if nodes.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut acc = ApartmentPoint::zero(self.dynkin());
        for &n in nodes {
            acc = acc.add(&self.alcove_vertex(n)?);
        }
        Ok(acc.scale(&rational::frac(1, nodes.len() as i64)))
    }

    /// Whether `θ` lies in the closed fundamental alcove.
    pub fn in_closed_alcove(&self, theta: &ApartmentPoint) -> bool {
        theta.coords.iter().all(|x| !x.is_negative()) && dot(self.highest_coeffs(), &theta.coords) <= Q::one()
    }

    /// Affine-Weyl representative of `θ` in the closed fundamental alcove.
    pub fn alcove_reduce(&self, theta: &ApartmentPoint) -> Result<ApartmentPoint> {
        self.check_point(theta)?;
        let n = self.rank();
        let highest_coroot = self.coroot_coweight(self.highest());
        let mut coords = theta.coords.clone();
        loop {
            if let Some(i) = (0..n).find(|&i| coords[i].is_negative()) {
                // s_i: θ ↦ θ − α_i(θ) α_i^∨
                let a = coords[i].clone();
                for (x, c) in coords.iter_mut().zip(&self.cartan()[i]) {
                    *x -= &a * int(*c);
                }
                continue;
            }
            let h = dot(self.highest_coeffs(), &coords);
            if h > Q::one() {
                // reflection in the wall α̃ = 1
                let shift = h - Q::one();
                for (x, c) in coords.iter_mut().zip(&highest_coroot) {
                    *x -= &shift * c;
                }
                continue;
            }
            break;
        }
        Ok(ApartmentPoint { dynkin: theta.dynkin, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn rs(name: &str) -> RootSystem {
        RootSystem::from_name(name).unwrap()
    }

    fn pt(rs: &RootSystem, coords: &[(i64, i64)]) -> ApartmentPoint {
        ApartmentPoint::new(rs.dynkin(), coords.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    #[test]
    fn m_point_examples() {
        let g2 = rs("G2");
        let theta = pt(&g2, &[(1, 9), (0, 1)]);
        assert_eq!(g2.m_point(&Root::new(vec![-1, 0]), &theta).unwrap(), 1);
        assert_eq!(g2.m_point(&Root::new(vec![0, -1]), &theta).unwrap(), 0);
        let a2 = rs("A2");
        let b = pt(&a2, &[(1, 3), (1, 3)]);
        assert_eq!(a2.m_point(&Root::new(vec![-1, -1]), &b).unwrap(), 1);
        let zero = ApartmentPoint::zero(a2.dynkin());
        for r in a2.roots() {
            assert_eq!(a2.m_point(r, &zero).unwrap(), 0);
        }
    }

    #[test]
    fn m_point_at_integer_values() {
        // −⌊−1⌋ = 1 and −⌊−1/3⌋ = 1
        let a1 = rs("A1");
        let neg = Root::new(vec![-1]);
        assert_eq!(a1.m_point(&neg, &pt(&a1, &[(1, 1)])).unwrap(), 1);
        assert_eq!(a1.m_point(&neg, &pt(&a1, &[(1, 3)])).unwrap(), 1);
        assert_eq!(a1.m_point(&Root::new(vec![1]), &pt(&a1, &[(1, 1)])).unwrap(), -1);
    }

    #[test]
    fn m_set_examples() {
        let a2 = rs("A2");
        let b = pt(&a2, &[(1, 3), (1, 3)]);
        let omega = BoundedSet::new(vec![b.clone(), b.scale(&int(2))]).unwrap();
        assert_eq!(a2.m_set(&Root::new(vec![-1, -1]), &omega).unwrap(), 2);
        let g2 = rs("G2");
        let omega = BoundedSet::new(vec![
            ApartmentPoint::zero(g2.dynkin()),
            pt(&g2, &[(2, 3), (0, 1)]),
            pt(&g2, &[(0, 1), (1, 1)]),
        ])
        .unwrap();
        assert_eq!(g2.m_set(&Root::new(vec![-1, -1]), &omega).unwrap(), 1);
        assert!(matches!(BoundedSet::new(vec![]), Err(Error::EmptySet)));
    }

    #[test]
    fn alcove_vertices_examples() {
        let g2 = rs("G2");
        assert_eq!(g2.alcove_vertices(), vec![pt(&g2, &[(1, 3), (0, 1)]), pt(&g2, &[(0, 1), (1, 2)])]);
        let a2 = rs("A2");
        assert_eq!(a2.alcove_vertices(), vec![pt(&a2, &[(1, 1), (0, 1)]), pt(&a2, &[(0, 1), (1, 1)])]);
        let b2 = rs("B2");
        assert_eq!(b2.alcove_vertices(), vec![pt(&b2, &[(1, 1), (0, 1)]), pt(&b2, &[(0, 1), (1, 2)])]);
        assert_eq!(g2.alcove_vertex(0).unwrap(), ApartmentPoint::zero(g2.dynkin()));
        assert!(g2.alcove_vertex(3).is_err());
    }

    #[test]
    fn denominators() {
        let a2 = rs("A2");
        let coroot1 = pt(&a2, &[(2, 1), (-1, 1)]);
        assert_eq!(a2.denominator(&coroot1).unwrap(), 1);
        assert_eq!(a2.denominator(&pt(&a2, &[(1, 1), (0, 1)])).unwrap(), 3);
        let g2 = rs("G2");
        assert_eq!(g2.denominator(&pt(&g2, &[(1, 3), (0, 1)])).unwrap(), 3);
    }

    #[test]
    fn d_alpha_examples() {
        assert_eq!(rs("G2").d_alpha(1).unwrap(), 3);
        assert_eq!(rs("A1").d_alpha(1).unwrap(), 2);
        assert_eq!(rs("A2").d_alpha(1).unwrap(), 3);
        assert!(matches!(rs("A2").d_alpha(3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(rs("A2").d_alpha(0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn barycenters() {
        let a1 = rs("A1");
        assert_eq!(a1.barycenter(&[0, 1]).unwrap(), pt(&a1, &[(1, 2)]));
        let g2 = rs("G2");
        assert_eq!(g2.barycenter(&[1]).unwrap(), g2.alcove_vertex(1).unwrap());
        assert_eq!(g2.barycenter(&[1, 2]).unwrap(), pt(&g2, &[(1, 6), (1, 4)]));
        assert!(matches!(g2.barycenter(&[]), Err(Error::EmptySubset)));
    }

    #[test]
    fn alcove_reduce_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.alcove_reduce(&pt(&a1, &[(5, 2)])).unwrap(), pt(&a1, &[(1, 2)]));
        assert_eq!(a1.alcove_reduce(&pt(&a1, &[(-1, 3)])).unwrap(), pt(&a1, &[(1, 3)]));
        let g2 = rs("G2");
        let inside = pt(&g2, &[(1, 9), (1, 6)]);
        assert_eq!(g2.alcove_reduce(&inside).unwrap(), inside);
    }
}
