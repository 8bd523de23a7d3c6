//! Determinantal ideals of rigidity matrices.
//!
//! For an n x n generic matrix X and a support pattern pi, the rigidity
//! matrix is X + T_pi where T_pi has an independent change variable at each
//! pattern position and zeros elsewhere. The ideal of its (r+1) x (r+1)
//! minors, with the change variables eliminated, cuts out the closure of the
//! set of matrices that reach rank <= r by edits supported on pi.
//!
//! Two elimination routes are implemented and cross-checked:
//! * direct: eliminate the t-variables from the minor ideal of X + T_pi;
//! * reduced: eliminate the x-variables at the pattern positions from the
//!   minor ideal of the plain generic X, then embed the result back into the
//!   full x-ring. The embedded generators remain a reduced lex basis because
//!   all their monomials avoid the re-added variables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, eliminate_with, Caps, Ideal, SelectionStrategy};
use crate::polyring::{MonomialOrder, Polynomial, Rational, VarRegistry};

/// An ordered, duplicate-free set of matrix positions (row, col), 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern {
    positions: std::collections::BTreeSet<(usize, usize)>,
}

impl Pattern {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(positions: I) -> Pattern {
        Pattern {
            positions: positions.into_iter().collect(),
        }
    }

    pub fn empty() -> Pattern {
        Pattern::default()
    }

    /// The main diagonal of an n x n matrix.
    pub fn diagonal(n: usize) -> Pattern {
        Pattern::new((0..n).map(|i| (i, i)))
    }

    /// Parse the CLI grammar: `""` (empty), `"diag"`, or positions like
    /// `"0,0;1,2"`. Positions must lie inside an n x n matrix.
    pub fn parse(s: &str, n: usize) -> Result<Pattern> {
        let s = s.trim();
        let pattern = if s.is_empty() {
            Pattern::empty()
        } else if s == "diag" {
            Pattern::diagonal(n)
        } else {
            let mut positions = Vec::new();
            for part in s.split(';') {
                let nums: Vec<&str> = part.split(',').map(str::trim).collect();
                if nums.len() != 2 {
                    return Err(Error::Pattern(format!(
                        "expected \"row,col\" in {part:?}"
                    )));
                }
                let i = nums[0]
                    .parse::<usize>()
                    .map_err(|e| Error::Pattern(format!("bad row {:?}: {e}", nums[0])))?;
                let j = nums[1]
                    .parse::<usize>()
                    .map_err(|e| Error::Pattern(format!("bad col {:?}: {e}", nums[1])))?;
                positions.push((i, j));
            }
            Pattern::new(positions)
        };
        pattern.validate(n)?;
        Ok(pattern)
    }

    /// Error unless every position fits inside an n x n matrix.
    pub fn validate(&self, n: usize) -> Result<()> {
        for &(i, j) in &self.positions {
            if i >= n || j >= n {
                return Err(Error::Pattern(format!(
                    "position ({i},{j}) outside a {n}x{n} matrix"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.positions.contains(&(i, j))
    }

    /// Positions in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    /// Apply a row permutation and a column permutation.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Pattern {
        Pattern::new(self.iter().map(|(i, j)| (row_perm[i], col_perm[j])))
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.iter().collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, j)| format!("{i},{j}")).collect();
        f.write_str(&parts.join(";"))
    }
}

/// All size-k patterns inside an n x n matrix, lexicographic by flattened
/// row-major index. This is the canonical enumeration order everywhere.
pub fn patterns_of_size(n: usize, k: usize) -> Vec<Pattern> {
    (0..n * n)
        .combinations(k)
        .map(|cells| Pattern::new(cells.into_iter().map(|c| (c / n, c % n))))
        .collect()
}

/// Name of the generic entry variable at (i, j): x1..x(n^2), row-major.
pub fn x_name(n: usize, i: usize, j: usize) -> String {
    format!("x{}", i * n + j + 1)
}

/// The registry of the plain generic matrix: x1..x(n^2).
pub fn x_registry(n: usize) -> Arc<VarRegistry> {
    VarRegistry::new((1..=n * n).map(|k| format!("x{k}"))).expect("generated names are valid")
}

/// The generic rigidity matrix X + T_pi as a polynomial grid.
///
/// The registry lists the change variables t1..tk (one per pattern position,
/// row-major) before x1..x(n^2), so the active block order is already the
/// elimination order that drops them.
#[derive(Debug, Clone)]
pub struct SymbolicRigidityMatrix {
    n: usize,
    pattern: Pattern,
    registry: Arc<VarRegistry>,
    entries: Vec<Vec<Polynomial>>,
}

impl SymbolicRigidityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Names of the change variables, in pattern order.
    pub fn t_names(&self) -> Vec<String> {
        (1..=self.pattern.len()).map(|k| format!("t{k}")).collect()
    }
}

pub fn build_symbolic(n: usize, pattern: &Pattern) -> Result<SymbolicRigidityMatrix> {
    if n == 0 {
        return Err(Error::Argument("matrix dimension must be positive".into()));
    }
    pattern.validate(n)?;
    let k = pattern.len();
    let names: Vec<String> = (1..=k)
        .map(|t| format!("t{t}"))
        .chain((1..=n * n).map(|x| format!("x{x}")))
        .collect();
    let registry = VarRegistry::new(names)?;
    let order = if k == 0 {
        MonomialOrder::Lex
    } else {
        MonomialOrder::Block { split: k }
    };
    let t_index: HashMap<(usize, usize), usize> =
        pattern.iter().enumerate().map(|(t, pos)| (pos, t)).collect();
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let x = Polynomial::variable(Arc::clone(&registry), order, k + i * n + j)?;
            let e = match t_index.get(&(i, j)) {
                Some(&t) => {
                    let tv = Polynomial::variable(Arc::clone(&registry), order, t)?;
                    x.checked_add(&tv)?
                }
                None => x,
            };
            row.push(e);
        }
        entries.push(row);
    }
    Ok(SymbolicRigidityMatrix {
        n,
        pattern: pattern.clone(),
        registry,
        entries,
    })
}

fn mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1 << i))
}

fn det_masked(
    grid: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
    registry: &Arc<VarRegistry>,
    order: MonomialOrder,
    memo: &mut HashMap<(u64, u64), Polynomial>,
) -> Result<Polynomial> {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        // Convention: the empty minor is 1 (rank >= 0 holds vacuously).
        return Ok(Polynomial::constant(
            Arc::clone(registry),
            order,
            Rational::one(),
        ));
    }
    let k = (mask(rows), mask(cols));
    if let Some(d) = memo.get(&k) {
        return Ok(d.clone());
    }
    // Expand along the row with the most zero entries.
    let (ri, _) = rows
        .iter()
        .enumerate()
        .map(|(ri, &r)| {
            let zeros = cols.iter().filter(|&&c| grid[r][c].is_zero()).count();
            (ri, zeros)
        })
        .max_by_key(|&(ri, zeros)| (zeros, std::cmp::Reverse(ri)))
        .expect("nonempty rows");
    let r = rows[ri];
    let sub_rows: Vec<usize> = rows
        .iter()
        .copied()
        .filter(|&x| x != r)
        .collect();
    let mut det = Polynomial::zero(Arc::clone(registry), order);
    for (ci, &c) in cols.iter().enumerate() {
        let e = &grid[r][c];
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_masked(grid, &sub_rows, &sub_cols, registry, order, memo)?;
        let term = e.checked_mul(&minor)?;
        if (ri + ci) % 2 == 0 {
            det = det.checked_add(&term)?;
        } else {
            det = det.checked_sub(&term)?;
        }
    }
    memo.insert(k, det.clone());
    Ok(det)
}

/// Determinant of a square polynomial grid by cofactor expansion along the
/// sparsest row, with shared sub-minor memoization.
pub fn determinant(grid: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = grid.len();
    if n == 0 || grid.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("determinant needs a square grid".into()));
    }
    let registry = Arc::clone(grid[0][0].registry());
    let order = grid[0][0].order();
    let all: Vec<usize> = (0..n).collect();
    det_masked(grid, &all, &all, &registry, order, &mut HashMap::new())
}

/// All size x size minors of a square polynomial grid, as polynomials, in
/// (row set, column set) lexicographic order. Zero minors are kept out by
/// the caller's `Ideal::new`. size 0 yields the single constant 1.
pub fn minors(grid: &[Vec<Polynomial>], size: usize) -> Result<Vec<Polynomial>> {
    let n = grid.len();
    if n == 0 || grid.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("minors need a square grid".into()));
    }
    if size > n {
        return Err(Error::Argument(format!(
            "minor size {size} exceeds matrix dimension {n}"
        )));
    }
    let registry = Arc::clone(grid[0][0].registry());
    let order = grid[0][0].order();
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for rows in (0..n).combinations(size) {
        for cols in (0..n).combinations(size) {
            out.push(det_masked(grid, &rows, &cols, &registry, order, &mut memo)?);
        }
    }
    Ok(out)
}

/// Ideal generated by the size x size minors of the symbolic matrix.
pub fn minors_ideal(matrix: &SymbolicRigidityMatrix, size: usize) -> Result<Ideal> {
    let gens = minors(&matrix.entries, size)?;
    Ideal::new(Arc::clone(&matrix.registry), gens)
}

/// The rigidity ideal I(n, r, pi): (r+1) x (r+1) minors of X + T_pi.
pub fn rigidity_ideal(n: usize, r: usize, pattern: &Pattern) -> Result<Ideal> {
    if r >= n {
        return Err(Error::Argument(format!(
            "rank bound r={r} must satisfy r < n={n}"
        )));
    }
    let srm = build_symbolic(n, pattern)?;
    minors_ideal(&srm, r + 1)
}

/// Elimination ideal via the direct route: eliminate the change variables
/// from I(n, r, pi). The result lives over x1..x(n^2) and its generators are
/// the reduced lex Groebner basis.
pub fn elimination_ideal_direct(n: usize, r: usize, pattern: &Pattern) -> Result<Ideal> {
    elimination_ideal_direct_with(n, r, pattern, Caps::default())
}

pub fn elimination_ideal_direct_with(
    n: usize,
    r: usize,
    pattern: &Pattern,
    caps: Caps,
) -> Result<Ideal> {
    let srm = build_symbolic(n, pattern)?;
    if r >= n {
        return Err(Error::Argument(format!(
            "rank bound r={r} must satisfy r < n={n}"
        )));
    }
    let ideal = minors_ideal(&srm, r + 1)?;
    eliminate_with(&ideal, srm.t_names(), caps)
}

/// Elimination ideal via the reduced route: eliminate the pattern's own
/// x-variables from the minor ideal of the plain generic matrix, then embed
/// into the full x-ring. Agrees with the direct route; the cross-check below
/// verifies that on demand.
pub fn elimination_ideal_reduced(n: usize, r: usize, pattern: &Pattern) -> Result<Ideal> {
    elimination_ideal_reduced_with(n, r, pattern, Caps::default())
}

pub fn elimination_ideal_reduced_with(
    n: usize,
    r: usize,
    pattern: &Pattern,
    caps: Caps,
) -> Result<Ideal> {
    if r >= n {
        return Err(Error::Argument(format!(
            "rank bound r={r} must satisfy r < n={n}"
        )));
    }
    pattern.validate(n)?;
    let generic = build_symbolic(n, &Pattern::empty())?;
    let ideal = minors_ideal(&generic, r + 1)?;
    let drop: Vec<String> = pattern.iter().map(|(i, j)| x_name(n, i, j)).collect();
    let small = eliminate_with(&ideal, &drop, caps)?;
    // Embed into the full x-ring. Every monomial avoids the dropped
    // variables, so leading terms and reducedness are unchanged under full
    // lex: this is still the reduced basis of the same ideal.
    let full = x_registry(n);
    let gens = small
        .generators()
        .iter()
        .map(|g| g.remap(&full, MonomialOrder::Lex))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(full, gens)
}

/// Compute both elimination routes and compare their reduced lex bases over
/// the full x-ring. `true` iff they are identical polynomial lists.
pub fn crosscheck_elimination_routes(n: usize, r: usize, pattern: &Pattern) -> Result<bool> {
    crosscheck_elimination_routes_with(n, r, pattern, Caps::default())
}

pub fn crosscheck_elimination_routes_with(
    n: usize,
    r: usize,
    pattern: &Pattern,
    caps: Caps,
) -> Result<bool> {
    let direct = elimination_ideal_direct_with(n, r, pattern, caps)?;
    let reduced = elimination_ideal_reduced_with(n, r, pattern, caps)?;
    // Both routes already return reduced lex bases; re-running Buchberger is
    // a canonicalization so the comparison never depends on that claim.
    let a = buchberger_with(&direct, MonomialOrder::Lex, caps, SelectionStrategy::default())?;
    let b = buchberger_with(
        &reduced,
        MonomialOrder::Lex,
        caps,
        SelectionStrategy::default(),
    )?;
    Ok(a.basis() == b.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(i: &Ideal) -> Vec<String> {
        i.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn pattern_parsing_and_display() {
        let p = Pattern::parse("0,0;1,2", 3).unwrap();
        assert_eq!(p.to_vec(), vec![(0, 0), (1, 2)]);
        assert_eq!(p.to_string(), "0,0;1,2");
        assert_eq!(Pattern::parse("diag", 3).unwrap(), Pattern::diagonal(3));
        assert_eq!(Pattern::parse("", 3).unwrap(), Pattern::empty());
        // Duplicates collapse (set semantics); out-of-range is an error.
        assert_eq!(Pattern::parse("0,0;0,0", 3).unwrap().len(), 1);
        assert!(Pattern::parse("3,0", 3).is_err());
        assert!(Pattern::parse("0", 3).is_err());
        assert!(Pattern::parse("0,a", 3).is_err());
    }

    #[test]
    fn pattern_enumeration_is_lex_by_flat_index() {
        let size2 = patterns_of_size(3, 2);
        assert_eq!(size2.len(), 36);
        assert_eq!(size2[0].to_vec(), vec![(0, 0), (0, 1)]);
        assert_eq!(size2[1].to_vec(), vec![(0, 0), (0, 2)]);
        assert_eq!(size2[35].to_vec(), vec![(2, 1), (2, 2)]);
        assert_eq!(patterns_of_size(3, 0), vec![Pattern::empty()]);
        assert_eq!(patterns_of_size(2, 4).len(), 1);
    }

    #[test]
    fn symbolic_matrix_layout() {
        let srm = build_symbolic(3, &Pattern::new([(0, 0)])).unwrap();
        assert_eq!(
            srm.registry().names()[..3],
            ["t1".to_string(), "x1".to_string(), "x2".to_string()]
        );
        assert_eq!(srm.registry().len(), 10);
        assert_eq!(srm.entry(0, 0).to_string(), "t1 + x1");
        assert_eq!(srm.entry(1, 2).to_string(), "x6");
        // Row-major naming: entry (2, 1) is x8.
        assert_eq!(srm.entry(2, 1).to_string(), "x8");
        assert!(build_symbolic(3, &Pattern::new([(3, 0)])).is_err());
        assert!(build_symbolic(0, &Pattern::empty()).is_err());
    }

    #[test]
    fn generic_determinant_formula() {
        let generic = build_symbolic(3, &Pattern::empty()).unwrap();
        let det = determinant(generic.entries()).unwrap();
        assert_eq!(
            det.to_string(),
            "x1*x5*x9 - x1*x6*x8 - x2*x4*x9 + x2*x6*x7 + x3*x4*x8 - x3*x5*x7"
        );
        // Sparse grids exercise the sparsest-row expansion path.
        let reg = x_registry(2);
        let zero = Polynomial::zero(Arc::clone(&reg), MonomialOrder::Lex);
        let v = |k| Polynomial::variable(Arc::clone(&reg), MonomialOrder::Lex, k).unwrap();
        let det2 = determinant(&[vec![v(0), zero.clone()], vec![v(2), v(3)]]).unwrap();
        assert_eq!(det2.to_string(), "x1*x4");
    }

    #[test]
    fn worked_minor_ideal_single_cell() {
        let ideal = rigidity_ideal(3, 1, &Pattern::new([(0, 0)])).unwrap();
        assert_eq!(
            texts(&ideal),
            vec![
                "t1*x5 + x1*x5 - x2*x4",
                "t1*x6 + x1*x6 - x3*x4",
                "x2*x6 - x3*x5",
                "t1*x8 + x1*x8 - x2*x7",
                "t1*x9 + x1*x9 - x3*x7",
                "x2*x9 - x3*x8",
                "x4*x8 - x5*x7",
                "x4*x9 - x6*x7",
                "x5*x9 - x6*x8",
            ]
        );
    }

    #[test]
    fn minor_counts_match_binomials() {
        let generic = build_symbolic(3, &Pattern::empty()).unwrap();
        assert_eq!(minors(generic.entries(), 1).unwrap().len(), 9);
        assert_eq!(minors(generic.entries(), 2).unwrap().len(), 9);
        assert_eq!(minors(generic.entries(), 3).unwrap().len(), 1);
        let m0 = minors(generic.entries(), 0).unwrap();
        assert_eq!(m0.len(), 1);
        assert_eq!(m0[0].to_string(), "1");
        assert!(minors(generic.entries(), 4).is_err());
        assert!(rigidity_ideal(3, 3, &Pattern::empty()).is_err());
    }

    #[test]
    fn elimination_routes_agree_on_single_cell() {
        let pattern = Pattern::new([(0, 0)]);
        // Ascending by lex leading monomial (the canonical basis order).
        let expected = vec![
            "x5*x9 - x6*x8",
            "x4*x9 - x6*x7",
            "x4*x8 - x5*x7",
            "x2*x9 - x3*x8",
            "x2*x6 - x3*x5",
        ];
        let direct = elimination_ideal_direct(3, 1, &pattern).unwrap();
        assert_eq!(texts(&direct), expected);
        let reduced = elimination_ideal_reduced(3, 1, &pattern).unwrap();
        assert_eq!(texts(&reduced), expected);
        assert_eq!(direct.registry().len(), 9);
        assert!(crosscheck_elimination_routes(3, 1, &pattern).unwrap());
    }

    #[test]
    fn full_block_pattern_eliminates_to_zero() {
        // pi = the bottom-right (n-r)^2 block is a product pattern: every
        // matrix is then within reach, so the elimination ideal is zero.
        let pattern = Pattern::new([(1, 1)]);
        assert!(elimination_ideal_direct(2, 1, &pattern).unwrap().is_zero());
        assert!(elimination_ideal_reduced(2, 1, &pattern).unwrap().is_zero());
    }

    #[test]
    fn generic_pattern_elimination_matches_plain_minors() {
        // Empty pattern: nothing to eliminate, EI = I itself (reduced basis).
        let e = elimination_ideal_direct(2, 1, &Pattern::empty()).unwrap();
        assert_eq!(texts(&e), vec!["x1*x4 - x2*x3"]);
    }

    #[test]
    fn elimination_is_equivariant_under_position_moves() {
        // Renaming x-variables along a row/col permutation carries EI(pi)
        // onto EI(permuted pi).
        let n = 3;
        let pattern = Pattern::new([(0, 0)]);
        let row_perm = [1, 2, 0];
        let col_perm = [2, 0, 1];
        let moved = pattern.permuted(&row_perm, &col_perm);
        let base = elimination_ideal_reduced(n, 1, &pattern).unwrap();
        let target = elimination_ideal_reduced(n, 1, &moved).unwrap();
        // Rename x_(i,j) -> x_(perm(i), perm(j)) by permuting exponents.
        let xreg = x_registry(n);
        let renamed: Vec<Polynomial> = base
            .generators()
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(c, m)| {
                        let mut exps = vec![0u32; n * n];
                        for (idx, &e) in m.exps().iter().enumerate() {
                            if e > 0 {
                                let (i, j) = (idx / n, idx % n);
                                exps[row_perm[i] * n + col_perm[j]] += e;
                            }
                        }
                        (c.clone(), crate::polyring::Monomial::from_exps(exps))
                    })
                    .collect();
                Polynomial::from_terms(Arc::clone(&xreg), MonomialOrder::Lex, terms).unwrap()
            })
            .collect();
        let canon = buchberger_with(
            &Ideal::new(x_registry(n), renamed).unwrap(),
            MonomialOrder::Lex,
            Caps::default(),
            SelectionStrategy::default(),
        )
        .unwrap();
        let canon_target = buchberger_with(
            &target,
            MonomialOrder::Lex,
            Caps::default(),
            SelectionStrategy::default(),
        )
        .unwrap();
        assert_eq!(canon.basis(), canon_target.basis());
    }
}
