//! Exact rational linear algebra: ranks (fraction-free and naive), random
//! samplers for rank varieties and the rigidity parametrization, and exact
//! Jacobian ranks at rational points.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detideals::{determinant, Pattern};
use crate::error::{Error, Result};
use crate::polyring::{parse_rational, MonomialOrder, Polynomial, Rational, VarRegistry};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Rational>,
}

/// Wire form of a matrix: entries as rational texts.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl RationalMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        RationalMatrix {
            n_rows,
            n_cols,
            entries: vec![Rational::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::Argument("ragged rows in matrix".into()));
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Parse a grid of rational texts (e.g. `[["1", "-7/2"], ...]`).
    pub fn from_texts(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_rows(parsed)
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n_cols + j] = v;
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::Argument("matrix shape mismatch in add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RationalMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
        })
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::Argument("matrix shape mismatch in sub".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RationalMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
        })
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.n_cols != other.n_rows {
            return Err(Error::Argument("matrix shape mismatch in mul".into()));
        }
        let mut out = RationalMatrix::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(rows.len(), cols.len());
        for (oi, &i) in rows.iter().enumerate() {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by exact Gaussian elimination. Square only.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Argument("determinant of a non-square matrix".into()));
        }
        let n = self.n_rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot else {
                return Ok(Rational::zero());
            };
            if p != k {
                for j in 0..n {
                    let a = m.get(k, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(k, j, b);
                    m.set(p, j, a);
                }
                det = -det;
            }
            let pk = m.get(k, k).clone();
            det *= pk.clone();
            for i in (k + 1)..n {
                let factor = m.get(i, k) / &pk;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &(&factor * m.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse via Gauss-Jordan. Errors on non-square or singular.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::Argument("inverse of a non-square matrix".into()));
        }
        let n = self.n_rows;
        let mut m = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot else {
                return Err(Error::Argument("inverse of a singular matrix".into()));
            };
            if p != k {
                for j in 0..n {
                    let (a, b) = (m.get(k, j).clone(), m.get(p, j).clone());
                    m.set(k, j, b);
                    m.set(p, j, a);
                    let (a, b) = (inv.get(k, j).clone(), inv.get(p, j).clone());
                    inv.set(k, j, b);
                    inv.set(p, j, a);
                }
            }
            let pk = m.get(k, k).clone();
            for j in 0..n {
                let v = m.get(k, j) / &pk;
                m.set(k, j, v);
                let v = inv.get(k, j) / &pk;
                inv.set(k, j, v);
            }
            for i in 0..n {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let factor = m.get(i, k).clone();
                for j in 0..n {
                    let v = m.get(i, j) - &(&factor * m.get(k, j));
                    m.set(i, j, v);
                    let v = inv.get(i, j) - &(&factor * inv.get(k, j));
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Positions of the nonzero entries.
    pub fn support(&self) -> Pattern {
        let mut positions = Vec::new();
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                if !self.get(i, j).is_zero() {
                    positions.push((i, j));
                }
            }
        }
        Pattern::new(positions)
    }

    /// Entries flattened row-major (the convention shared with x1..x(n^2)).
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.n_rows,
            cols: self.n_cols,
            entries: (0..self.n_rows)
                .map(|i| (0..self.n_cols).map(|j| self.get(i, j).to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<RationalMatrix> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Parse(format!(
                "matrix dimensions {}x{} do not match entry grid",
                j.rows, j.cols
            )));
        }
        RationalMatrix::from_texts(&j.entries)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank by fraction-free (Bareiss) elimination over integers after clearing
/// row denominators; no intermediate fractions, exact division throughout.
pub fn bareiss_rank(m: &RationalMatrix) -> usize {
    let (rows, cols) = (m.n_rows, m.n_cols);
    // Per-row denominator clearing preserves rank.
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let lcm = (0..cols).fold(BigInt::one(), |l, j| l.lcm(m.get(i, j).denom()));
            (0..cols)
                .map(|j| {
                    let q = m.get(i, j);
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let bound = rows.min(cols);
    for k in 0..bound {
        // Pivot anywhere in the untouched block; swaps only permute minors.
        let mut pivot = None;
        'search: for j in k..cols {
            for i in k..rows {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            return k;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        for i in (k + 1)..rows {
            for j in (k + 1)..cols {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss exact division");
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    bound
}

/// Rank by plain Gaussian elimination over rationals. Slower than
/// [`bareiss_rank`]; kept as the independent reference the dual-route rank
/// tests compare against.
pub fn naive_gauss_rank(m: &RationalMatrix) -> usize {
    let (rows, cols) = (m.n_rows, m.n_cols);
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in (rank + 1)..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] / &pivot;
            for j in col..cols {
                let v = &a[i][j] - &(&factor * &a[rank][j]);
                a[i][j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A selection of rows and columns naming one minor: strictly increasing,
/// equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<MinorSpec> {
        if rows.len() != cols.len() {
            return Err(Error::Argument("minor spec rows/cols length mismatch".into()));
        }
        for v in [&rows, &cols] {
            if v.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Argument(
                    "minor spec indices must be strictly increasing".into(),
                ));
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.rows.iter().chain(&self.cols).any(|&i| i >= n) {
            return Err(Error::Argument(format!(
                "minor spec index out of range for n={n}"
            )));
        }
        Ok(())
    }
}

/// The sampling distribution used everywhere: numerator in [-20, 20],
/// denominator in {1, 2, 3}.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let numer: i64 = rng.random_range(-20..=20);
    let denom: i64 = rng.random_range(1..=3);
    Rational::new(numer.into(), denom.into())
}

/// Like [`random_rational`] but never zero.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_matrix<R: Rng>(n_rows: usize, n_cols: usize, rng: &mut R) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n_rows, n_cols);
    for i in 0..n_rows {
        for j in 0..n_cols {
            m.set(i, j, random_rational(rng));
        }
    }
    m
}

fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    loop {
        let m = random_matrix(n, n, rng);
        if n == 0 || !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Deterministic RNG for a seed; all samplers in this module draw from it.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sample an n x n matrix of rank exactly `s` whose minor at `spec` is
/// invertible: fill the spec block with a random invertible matrix, the
/// spec rows/cols freely, and complete the complement as C21 C11^-1 C12,
/// which pins every remaining row to the span of the spec rows.
pub fn sample_rank_variety(
    n: usize,
    s: usize,
    spec: &MinorSpec,
    seed: u64,
) -> Result<RationalMatrix> {
    if spec.size() != s {
        return Err(Error::Argument(format!(
            "minor spec has size {}, expected {s}",
            spec.size()
        )));
    }
    spec.validate(n)?;
    let mut rng = seeded_rng(seed);
    let comp_rows: Vec<usize> = (0..n).filter(|i| !spec.rows.contains(i)).collect();
    let comp_cols: Vec<usize> = (0..n).filter(|j| !spec.cols.contains(j)).collect();
    let c11 = random_invertible(s, &mut rng);
    let c12 = random_matrix(s, comp_cols.len(), &mut rng);
    let c21 = random_matrix(comp_rows.len(), s, &mut rng);
    let c22 = c21.mul(&c11.inverse()?)?.mul(&c12)?;
    let mut out = RationalMatrix::zeros(n, n);
    let scatter = |out: &mut RationalMatrix,
                   block: &RationalMatrix,
                   rows: &[usize],
                   cols: &[usize]| {
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                out.set(i, j, block.get(bi, bj).clone());
            }
        }
    };
    scatter(&mut out, &c11, &spec.rows, &spec.cols);
    scatter(&mut out, &c12, &spec.rows, &comp_cols);
    scatter(&mut out, &c21, &comp_rows, &spec.cols);
    scatter(&mut out, &c22, &comp_rows, &comp_cols);
    Ok(out)
}

/// A rational point in the rigidity parametrization: an invertible r x r
/// block G, off-diagonal blocks A and B, and one value per pattern position.
#[derive(Debug, Clone)]
pub struct ParamPoint {
    pub g: RationalMatrix,
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    /// Values for the pattern coordinates, in row-major pattern order.
    pub x_values: Vec<Rational>,
}

/// Check that `pattern` lies inside the bottom-right (n-r) x (n-r) block.
fn validate_bottom_pattern(n: usize, r: usize, pattern: &Pattern) -> Result<()> {
    pattern.validate(n)?;
    for (i, j) in pattern.iter() {
        if i < r || j < r {
            return Err(Error::Pattern(format!(
                "position ({i},{j}) outside the bottom-right block (r={r})"
            )));
        }
    }
    Ok(())
}

/// Sample a parametrization point: G is redrawn until invertible.
pub fn sample_param_point(n: usize, r: usize, pattern: &Pattern, seed: u64) -> Result<ParamPoint> {
    if r == 0 || r >= n {
        return Err(Error::Argument(format!(
            "parametrization needs 0 < r < n, got r={r}, n={n}"
        )));
    }
    validate_bottom_pattern(n, r, pattern)?;
    let mut rng = seeded_rng(seed);
    let g = random_invertible(r, &mut rng);
    let a = random_matrix(r, n - r, &mut rng);
    let b = random_matrix(n - r, r, &mut rng);
    let x_values = (0..pattern.len()).map(|_| random_rational(&mut rng)).collect();
    Ok(ParamPoint { g, a, b, x_values })
}

/// Assemble U = [[G, A], [B, X_pi + B G^-1 A]] at a parametrization point.
/// Subtracting the pattern values from the bottom-right block leaves a
/// matrix of rank exactly r.
pub fn sample_u(n: usize, r: usize, pattern: &Pattern, point: &ParamPoint) -> Result<RationalMatrix> {
    if r == 0 || r >= n {
        return Err(Error::Argument(format!(
            "parametrization needs 0 < r < n, got r={r}, n={n}"
        )));
    }
    validate_bottom_pattern(n, r, pattern)?;
    if point.g.n_rows() != r || point.g.n_cols() != r {
        return Err(Error::Argument("G block has wrong shape".into()));
    }
    if point.x_values.len() != pattern.len() {
        return Err(Error::Argument("one value per pattern position required".into()));
    }
    let schur = point.b.mul(&point.g.inverse()?)?.mul(&point.a)?;
    let mut u = RationalMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..r {
            u.set(i, j, point.g.get(i, j).clone());
        }
        for j in r..n {
            u.set(i, j, point.a.get(i, j - r).clone());
        }
    }
    for i in r..n {
        for j in 0..r {
            u.set(i, j, point.b.get(i - r, j).clone());
        }
        for j in r..n {
            u.set(i, j, schur.get(i - r, j - r).clone());
        }
    }
    for ((i, j), v) in pattern.iter().zip(&point.x_values) {
        let w = u.get(i, j) + v;
        u.set(i, j, w);
    }
    Ok(u)
}

/// Registry of parametrization coordinates: G, A, B entries (row-major,
/// 1-based names) then w1..wk for the pattern coordinates.
fn param_registry(n: usize, r: usize, k: usize) -> Arc<VarRegistry> {
    let mut names = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            names.push(format!("g{i}_{j}"));
        }
    }
    for i in 1..=r {
        for j in 1..=(n - r) {
            names.push(format!("a{i}_{j}"));
        }
    }
    for i in 1..=(n - r) {
        for j in 1..=r {
            names.push(format!("b{i}_{j}"));
        }
    }
    for t in 1..=k {
        names.push(format!("w{t}"));
    }
    VarRegistry::new(names).expect("generated names are valid")
}

/// Values for the parametrization registry at `point`, in registry order.
fn param_values(point: &ParamPoint) -> Vec<Rational> {
    let mut vals = point.g.flatten();
    vals.extend(point.a.flatten());
    vals.extend(point.b.flatten());
    vals.extend(point.x_values.iter().cloned());
    vals
}

struct JacobianSymbols {
    registry: Arc<VarRegistry>,
    /// det(G), as a polynomial in the parameters.
    det_g: Polynomial,
    /// Cleared bottom-right numerators: Num = det(G) * w + (B adj(G) A).
    numerators: Vec<Vec<Polynomial>>,
}

fn jacobian_symbols(n: usize, r: usize, pattern: &Pattern) -> Result<JacobianSymbols> {
    let k = pattern.len();
    let registry = param_registry(n, r, k);
    let order = MonomialOrder::GrevLex;
    let var = |idx: usize| Polynomial::variable(Arc::clone(&registry), order, idx);
    let g_grid: Vec<Vec<Polynomial>> = (0..r)
        .map(|i| (0..r).map(|j| var(i * r + j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let a_var = |i: usize, j: usize| var(r * r + i * (n - r) + j);
    let b_var = |i: usize, j: usize| var(r * r + r * (n - r) + i * r + j);
    let w_var = |t: usize| var(n * n - (n - r) * (n - r) + t);

    let det_g = determinant(&g_grid)?;
    // adj(G)[i][j] = (-1)^(i+j) * minor(G with row j, col i removed).
    let mut adj = vec![vec![Polynomial::zero(Arc::clone(&registry), order); r]; r];
    for i in 0..r {
        for j in 0..r {
            let sub: Vec<Vec<Polynomial>> = (0..r)
                .filter(|&ri| ri != j)
                .map(|ri| {
                    (0..r)
                        .filter(|&ci| ci != i)
                        .map(|ci| g_grid[ri][ci].clone())
                        .collect()
                })
                .collect();
            let minor = if sub.is_empty() {
                Polynomial::constant(Arc::clone(&registry), order, Rational::one())
            } else {
                determinant(&sub)?
            };
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { minor.neg_ref() };
        }
    }
    // P = B adj(G) A, an (n-r) x (n-r) polynomial matrix.
    let t_index: std::collections::HashMap<(usize, usize), usize> =
        pattern.iter().enumerate().map(|(t, pos)| (pos, t)).collect();
    let mut numerators = Vec::with_capacity(n - r);
    for i in 0..(n - r) {
        let mut row = Vec::with_capacity(n - r);
        for j in 0..(n - r) {
            let mut p = Polynomial::zero(Arc::clone(&registry), order);
            for s in 0..r {
                for t in 0..r {
                    let term = b_var(i, s)?.checked_mul(&adj[s][t])?.checked_mul(&a_var(t, j)?)?;
                    p = p.checked_add(&term)?;
                }
            }
            if let Some(&t) = t_index.get(&(r + i, r + j)) {
                p = p.checked_add(&det_g.checked_mul(&w_var(t)?)?)?;
            }
            row.push(p);
        }
        numerators.push(row);
    }
    Ok(JacobianSymbols {
        registry,
        det_g,
        numerators,
    })
}

/// Exact rank of the Jacobian of the parametrization map at `point`.
///
/// The map sends (G, A, B, w) to the n^2 entries of U. Rows for the G, A, B
/// entries are unit vectors. A bottom-right entry is Num/det(G) with Num
/// polynomial, so its derivative row is (dNum * det - Num * d det) / det^2;
/// the whole row is scaled by det(point)^2, which is nonzero here, so the
/// rank is unchanged. The unscaled variant below exists to test exactly
/// that claim.
pub fn jacobian_rank_at(n: usize, r: usize, pattern: &Pattern, point: &ParamPoint) -> Result<usize> {
    jacobian_matrix(n, r, pattern, point, true).map(|j| bareiss_rank(&j))
}

/// Same rank computed without clearing denominators (exact rational rows).
pub fn jacobian_rank_at_unscaled(
    n: usize,
    r: usize,
    pattern: &Pattern,
    point: &ParamPoint,
) -> Result<usize> {
    jacobian_matrix(n, r, pattern, point, false).map(|j| bareiss_rank(&j))
}

fn jacobian_matrix(
    n: usize,
    r: usize,
    pattern: &Pattern,
    point: &ParamPoint,
    clear_denominators: bool,
) -> Result<RationalMatrix> {
    if r == 0 || r >= n {
        return Err(Error::Argument(format!(
            "parametrization needs 0 < r < n, got r={r}, n={n}"
        )));
    }
    validate_bottom_pattern(n, r, pattern)?;
    let syms = jacobian_symbols(n, r, pattern)?;
    let values = param_values(point);
    if values.len() != syms.registry.len() {
        return Err(Error::Argument("point does not match the parametrization".into()));
    }
    let det_at = syms.det_g.evaluate(&values)?;
    if det_at.is_zero() {
        return Err(Error::Argument("G block is singular at the point".into()));
    }
    let n_params = syms.registry.len();
    let mut jac = RationalMatrix::zeros(n * n, n_params);
    // G, A, B entry rows: the identity part of the map.
    for p in 0..(n_params - pattern.len()) {
        // Parameter p is the value of one matrix entry; recover its (i, j).
        let (i, j) = if p < r * r {
            (p / r, p % r)
        } else if p < r * r + r * (n - r) {
            let q = p - r * r;
            (q / (n - r), r + q % (n - r))
        } else {
            let q = p - r * r - r * (n - r);
            (r + q / r, q % r)
        };
        jac.set(i * n + j, p, Rational::one());
    }
    // Bottom-right rows: quotient-rule derivatives.
    let det_sq = &det_at * &det_at;
    for i in 0..(n - r) {
        for j in 0..(n - r) {
            let num = &syms.numerators[i][j];
            let num_at = num.evaluate(&values)?;
            let row = (r + i) * n + (r + j);
            for p in 0..n_params {
                let dnum = num.partial_derivative(p)?.evaluate(&values)?;
                let ddet = syms.det_g.partial_derivative(p)?.evaluate(&values)?;
                let cleared = &dnum * &det_at - &num_at * &ddet;
                let v = if clear_denominators {
                    cleared
                } else {
                    cleared / &det_sq
                };
                jac.set(row, p, v);
            }
        }
    }
    Ok(jac)
}
