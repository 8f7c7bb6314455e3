//! Exact rational linear programming: two-phase simplex with Bland's rule.

use num_traits::{Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: Q,
    pub x: Vec<Q>,
}

/// `min c·x` subject to `A x = b`, `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let f = self.rows[r][col].clone();
            for (x, y) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[r] -= &f * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    fn reduced_costs(&self, cost: &[Q]) -> Vec<Q> {
        let mut red = cost.to_vec();
        for (r, &bv) in self.basis.iter().enumerate() {
            if cost[bv].is_zero() {
                continue;
            }
            for (j, x) in self.rows[r].iter().enumerate() {
                if !x.is_zero() {
                    red[j] -= &cost[bv] * x;
                }
            }
        }
        red
    }

    /// Runs simplex iterations over the columns in `allowed`.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> Result<(), LpError> {
        loop {
            let red = self.reduced_costs(cost);
            // Bland: smallest improving column index
            let Some(col) = (0..allowed).find(|&j| red[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if a.is_positive() {
                    let ratio = &self.rhs[r] / a;
                    let better = match &best {
                        None => true,
                        Some((q, _, bv)) => ratio < *q || (ratio == *q && self.basis[r] < *bv),
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, row, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

impl StandardLp {
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let m = self.a.len();
        let n = self.c.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (row, b)) in self.a.iter().zip(&self.b).enumerate() {
            let flip = b.is_negative();
            let mut r: Vec<Q> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
            r.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
            rows.push(r);
            rhs.push(if flip { -b } else { b.clone() });
        }
        let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };

        let mut phase1 = vec![Q::zero(); n + m];
        for c in phase1[n..].iter_mut() {
            *c = Q::from_integer(1.into());
        }
        t.optimize(&phase1, n + m)?;
        let infeasibility: Q = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(bv, _)| **bv >= n)
            .fold(Q::zero(), |acc, (_, v)| acc + v);
        if infeasibility.is_positive() {
            return Err(LpError::Infeasible);
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n {
                if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, col);
                } else {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }

        let mut cost = self.c.clone();
        cost.extend((0..m).map(|_| Q::zero()));
        t.optimize(&cost, n)?;
        let mut x = vec![Q::zero(); n];
        for (bv, v) in t.basis.iter().zip(&t.rhs) {
            if *bv < n {
                x[*bv] = v.clone();
            }
        }
        let objective = self.c.iter().zip(&x).fold(Q::zero(), |acc, (c, v)| acc + c * v);
        Ok(LpSolution { objective, x })
    }
}
