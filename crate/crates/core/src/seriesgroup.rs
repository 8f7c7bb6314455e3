//! Matrix models of n-bounded subgroups of `SL_m` over truncated Laurent series.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concave::{ConcaveTuple, MoyPrasadDatum};
use crate::error::{Error, Result};
use crate::rational::{floor_i64, Q};
use crate::rootsystem::{Family, Root, RootSystem};
use crate::series::{Coeff, Exponent, TruncatedSeries};

/// Required minimal orders of each matrix entry, per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationPattern {
    pub m: usize,
    pub nvars: usize,
    /// `bounds[i][j]` for `i ≠ j`; diagonal slots hold zeros.
    pub bounds: Vec<Vec<Vec<i64>>>,
    /// Diagonal entries must be `≡ 1` modulo total degree `diag_unit_level`.
    pub diag_unit_level: u32,
}

/// The root `ε_i − ε_j` (0-based `i ≠ j`) of `A_{m−1}`.
pub fn entry_root(m: usize, i: usize, j: usize) -> Root {
    let (lo, hi) = (i.min(j), i.max(j));
    let sign = if i < j { 1 } else { -1 };
    Root::new((0..m - 1).map(|k| if (lo..hi).contains(&k) { sign } else { 0 }).collect())
}

fn require_type_a(rs: &RootSystem) -> Result<usize> {
    if rs.dynkin().family != Family::A {
        return Err(Error::WrongType(rs.dynkin().to_string()));
    }
    Ok(rs.rank() + 1)
}

impl ValuationPattern {
    /// `v(i,j)[k] = f_k(ε_i − ε_j)`.
    pub fn from_tuple(rs: &RootSystem, fs: &ConcaveTuple) -> Result<Self> {
        let m = require_type_a(rs)?;
        if fs.dynkin() != rs.dynkin() {
            return Err(Error::RankMismatch { expected: rs.dynkin().to_string(), found: fs.dynkin().to_string() });
        }
        if let Some(f) = fs.entries().iter().find(|f| !f.is_integral()) {
            return Err(Error::NotIntegral(f.to_string()));
        }
        let n = fs.len();
        let mut bounds = vec![vec![vec![0; n]; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let r = rs.require_index(&entry_root(m, i, j))?;
                bounds[i][j] = fs.entries().iter().map(|f| floor_i64(f.value(r))).collect();
            }
        }
        Ok(ValuationPattern { m, nvars: n, bounds, diag_unit_level: 0 })
    }

    /// One-variable pattern of a depth filtration, with the torus level on
    /// the diagonal.
    pub fn from_moy_prasad(rs: &RootSystem, datum: &MoyPrasadDatum) -> Result<Self> {
        let fs = ConcaveTuple::new(vec![datum.to_concave_map()])?;
        let mut pat = ValuationPattern::from_tuple(rs, &fs)?;
        pat.diag_unit_level = datum.torus_level.max(0) as u32;
        Ok(pat)
    }

    pub fn bound(&self, i: usize, j: usize) -> &[i64] {
        &self.bounds[i][j]
    }

    /// Largest pole order any bound allows.
    pub fn max_pole(&self) -> u32 {
        self.bounds.iter().flatten().flatten().map(|&b| (-b).max(0) as u32).max().unwrap_or(0)
    }
}

impl fmt::Display for ValuationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m)
                .map(|j| {
                    if i == j {
                        "*".to_string()
                    } else {
                        let b: Vec<String> = self.bounds[i][j].iter().map(|x| x.to_string()).collect();
                        format!("({})", b.join(","))
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// An `m × m` matrix of series sharing one truncation window.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedLaurentMatrix<C: Coeff = Q> {
    m: usize,
    entries: Vec<Vec<TruncatedSeries<C>>>,
}

impl<C: Coeff> TruncatedLaurentMatrix<C> {
    pub fn from_rows(entries: Vec<Vec<TruncatedSeries<C>>>) -> Result<Self> {
        let m = entries.len();
        let first = entries.first().and_then(|r| r.first()).ok_or(Error::SizeMismatch("empty matrix".into()))?;
        let window = (first.nvars(), first.cap(), first.pole_cap());
        for row in &entries {
            if row.len() != m {
                return Err(Error::SizeMismatch(format!("row of length {} in a {m}×{m} matrix", row.len())));
            }
            if let Some(s) = row.iter().find(|s| (s.nvars(), s.cap(), s.pole_cap()) != window) {
                return Err(Error::SizeMismatch(format!(
                    "entry window (n={}, D={}, P={}) differs from (n={}, D={}, P={})",
                    s.nvars(),
                    s.cap(),
                    s.pole_cap(),
                    window.0,
                    window.1,
                    window.2
                )));
            }
        }
        Ok(TruncatedLaurentMatrix { m, entries })
    }

    pub fn identity(m: usize, nvars: usize, cap: u32, pole_cap: u32) -> Self {
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            TruncatedSeries::one(nvars, cap, pole_cap)
                        } else {
                            TruncatedSeries::zero(nvars, cap, pole_cap)
                        }
                    })
                    .collect()
            })
            .collect();
        TruncatedLaurentMatrix { m, entries }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.entries[0][0].nvars()
    }

    pub fn cap(&self) -> u32 {
        self.entries[0][0].cap()
    }

    pub fn pole_cap(&self) -> u32 {
        self.entries[0][0].pole_cap()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries<C> {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<TruncatedSeries<C>>] {
        &self.entries
    }

    fn zero_series(&self) -> TruncatedSeries<C> {
        TruncatedSeries::zero(self.nvars(), self.cap(), self.pole_cap())
    }

    fn map_entries(&self, f: impl Fn(&TruncatedSeries<C>) -> Result<TruncatedSeries<C>>) -> Result<Self> {
        let entries =
            self.entries.iter().map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(TruncatedLaurentMatrix { m: self.m, entries })
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::SizeMismatch(format!("{}×{} times {}×{}", self.m, self.m, rhs.m, rhs.m)));
        }
        let mut entries = Vec::with_capacity(self.m);
        for i in 0..self.m {
            let mut row = Vec::with_capacity(self.m);
            for j in 0..self.m {
                let mut acc = self.zero_series();
                for k in 0..self.m {
                    acc = acc.add(&self.entries[i][k].mul(&rhs.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(TruncatedLaurentMatrix { m: self.m, entries })
    }

    /// Products of up to `m` entries are formed in a window wide enough that
    /// no intermediate term is lost, then cut back.
    fn widened(&self) -> Result<Self> {
        let slack = (self.m as u32).saturating_sub(1) * self.pole_cap();
        self.map_entries(|s| s.rewindow(s.cap() + slack, s.pole_cap() * self.m as u32))
    }

    fn narrowed(&self, s: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
        s.rewindow(self.cap(), self.pole_cap())
    }

    pub fn determinant(&self) -> Result<TruncatedSeries<C>> {
        let wide = self.widened()?;
        let cols: Vec<usize> = (0..self.m).collect();
        self.narrowed(&laplace(&wide.entries, 0, &cols)?)
    }

    pub fn adjugate(&self) -> Result<Self> {
        let wide = self.widened()?;
        let mut entries = vec![vec![self.zero_series(); self.m]; self.m];
        if self.m == 1 {
            entries[0][0] = TruncatedSeries::one(self.nvars(), self.cap(), self.pole_cap());
            return Ok(TruncatedLaurentMatrix { m: 1, entries });
        }
        for i in 0..self.m {
            for j in 0..self.m {
                // cofactor C_ij goes to position (j, i)
                let rows: Vec<Vec<TruncatedSeries<C>>> = wide
                    .entries
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| row.clone())
                    .collect();
                let cols: Vec<usize> = (0..self.m).filter(|&c| c != j).collect();
                let mut minor = laplace(&rows, 0, &cols)?;
                if (i + j) % 2 == 1 {
                    minor = minor.neg();
                }
                entries[j][i] = self.narrowed(&minor)?;
            }
        }
        Ok(TruncatedLaurentMatrix { m: self.m, entries })
    }

    /// `det⁻¹ · adj`; for determinant-one matrices this is the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let adj = self.adjugate()?;
        let det = self.determinant()?;
        if det.is_one() {
            return Ok(adj);
        }
        let inv = det.inverse()?;
        adj.map_entries(|s| inv.mul(s))
    }

    pub fn det_is_one(&self) -> Result<bool> {
        Ok(self.determinant()?.is_one())
    }

    pub fn is_member(&self, pat: &ValuationPattern) -> Result<bool> {
        if pat.m != self.m || pat.nvars != self.nvars() {
            return Err(Error::SizeMismatch(format!(
                "{}×{} matrix in {} variables against a {}×{} pattern in {} variables",
                self.m,
                self.m,
                self.nvars(),
                pat.m,
                pat.m,
                pat.nvars
            )));
        }
        let zeros = vec![0; self.nvars()];
        for i in 0..self.m {
            for j in 0..self.m {
                let e = &self.entries[i][j];
                let ok = if i == j {
                    e.has_order_at_least(&zeros)
                        && (pat.diag_unit_level == 0 || e.is_unit_congruent(pat.diag_unit_level))
                } else {
                    e.has_order_at_least(&pat.bounds[i][j])
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        self.det_is_one()
    }

    /// Sets every variable equal to `t`.
    pub fn specialize_diag(&self) -> Result<Self> {
        self.map_entries(|s| s.specialize_diag())
    }

    /// Substitutes `t = z_1 ⋯ z_n`.
    pub fn embed_uniformizer(&self, n: usize) -> Result<Self> {
        self.map_entries(|s| s.embed_uniformizer(n))
    }

    /// `I + x·E_ij`.
    pub fn root_element(m: usize, i: usize, j: usize, x: TruncatedSeries<C>) -> Self {
        let mut out = Self::identity(m, x.nvars(), x.cap(), x.pole_cap());
        out.entries[i][j] = x;
        out
    }

    /// `diag(1, …, u, u⁻¹, …, 1)` with `u` at position `i`.
    pub fn torus_element(m: usize, i: usize, u: &TruncatedSeries<C>) -> Result<Self> {
        let mut out = Self::identity(m, u.nvars(), u.cap(), u.pole_cap());
        out.entries[i + 1][i + 1] = u.inverse()?;
        out.entries[i][i] = u.clone();
        Ok(out)
    }
}

fn laplace<C: Coeff>(rows: &[Vec<TruncatedSeries<C>>], start: usize, cols: &[usize]) -> Result<TruncatedSeries<C>> {
    let row = &rows[start];
    if cols.len() == 1 {
        return Ok(row[cols[0]].clone());
    }
    let mut acc = TruncatedSeries::zero(row[0].nvars(), row[0].cap(), row[0].pole_cap());
    for (k, &c) in cols.iter().enumerate() {
        if row[c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = row[c].mul(&laplace(rows, start + 1, &rest)?)?;
        acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

impl<C: Coeff> fmt::Display for TruncatedLaurentMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|s| format!("[{s}]")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Knobs for [`sample_member`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleParams {
    pub cap: u32,
    pub pole_cap: u32,
    /// Number of generators multiplied together.
    pub generators: usize,
    /// Coefficients are drawn from `-coeff_range..=coeff_range`.
    pub coeff_range: i64,
    /// Maximum number of extra terms in each random series.
    pub max_terms: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { cap: 4, pole_cap: 0, generators: 6, coeff_range: 3, max_terms: 3 }
    }
}

fn random_exponent(rng: &mut ChaCha8Rng, nvars: usize, cap: u32) -> Exponent {
    (0..nvars).map(|_| rng.random_range(0..=cap as i64)).collect()
}

fn random_coeff<C: Coeff>(rng: &mut ChaCha8Rng, range: i64, nonzero: bool) -> C {
    loop {
        let v = rng.random_range(-range..=range);
        if nonzero && v == 0 {
            continue;
        }
        if let Some(c) = C::from_q(&Q::from_integer(v.into())) {
            if !nonzero || !c.is_zero() {
                return c;
            }
        }
    }
}

/// A unit of `O_n`, congruent to 1 modulo total degree `level` when `level > 0`.
fn random_unit<C: Coeff>(rng: &mut ChaCha8Rng, nvars: usize, p: &SampleParams, level: u32) -> Result<TruncatedSeries<C>> {
    let c0 = if level > 0 { C::one() } else { random_coeff(rng, p.coeff_range, true) };
    let mut terms = vec![(vec![0; nvars], c0)];
    for _ in 0..rng.random_range(0..=p.max_terms) {
        let e = random_exponent(rng, nvars, p.cap);
        let degree: i64 = e.iter().sum();
        if degree > 0 && degree >= level as i64 {
            terms.push((e, random_coeff(rng, p.coeff_range, false)));
        }
    }
    TruncatedSeries::from_terms(nvars, p.cap, p.pole_cap, terms)
}

/// A seeded product of torus elements and root elements, each satisfying
/// the pattern.
pub fn sample_member<C: Coeff>(pat: &ValuationPattern, seed: u64, p: &SampleParams) -> Result<TruncatedLaurentMatrix<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n) = (pat.m, pat.nvars);
    let mut acc = TruncatedLaurentMatrix::identity(m, n, p.cap, p.pole_cap);
    for _ in 0..p.generators {
        let g = if m > 1 && rng.random_bool(0.75) {
            let i = rng.random_range(0..m);
            let j = (i + rng.random_range(1..m)) % m;
            let shift = &pat.bounds[i][j];
            let mut terms = Vec::new();
            for _ in 0..rng.random_range(1..=p.max_terms.max(1)) {
                let e: Exponent =
                    random_exponent(&mut rng, n, p.cap).iter().zip(shift).map(|(a, b)| a + b).collect();
                terms.push((e, random_coeff::<C>(&mut rng, p.coeff_range, false)));
            }
            TruncatedLaurentMatrix::root_element(m, i, j, TruncatedSeries::from_terms(n, p.cap, p.pole_cap, terms)?)
        } else if m > 1 {
            let i = rng.random_range(0..m - 1);
            let u = random_unit::<C>(&mut rng, n, p, pat.diag_unit_level)?;
            TruncatedLaurentMatrix::torus_element(m, i, &u)?
        } else {
            continue;
        };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}
