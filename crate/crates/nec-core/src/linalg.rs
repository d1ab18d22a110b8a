//! Exact integer matrix algebra: Smith normal form, rank over the field with
//! two elements, and gcd-of-products utilities.
//!
//! Everything here works with arbitrary-precision integers. Invariant factors
//! of presentation matrices can grow multiplicatively with the input, so
//! fixed-width arithmetic is not an option.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("subset size {j} out of range for {len} elements")]
    SubsetSizeOutOfRange { j: usize, len: usize },
}

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix product, used by the unimodular-invariance tests.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// gcd of the absolute values of all entries; zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for e in &self.entries {
            g = g.gcd(e);
        }
        g
    }
}

/// The diagonal of the Smith normal form: non-negative entries forming a
/// divisibility chain, zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors different from one, in chain order.
    pub fn nonunit_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// The returned diagonal has length `min(rows, cols)` with each nonzero entry
/// dividing the next and zeros at the end.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let rows = m.rows;
    let cols = m.cols;
    let n = rows.min(cols);
    let mut a = m.entries.clone();

    let idx = |i: usize, j: usize| i * cols + j;

    let mut t = 0;
    while t < n {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[idx(i, j)].is_zero() {
                    match pivot {
                        Some((pi, pj)) if a[idx(pi, pj)].abs() <= a[idx(i, j)].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            for j in 0..cols {
                a.swap(idx(t, j), idx(pi, j));
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(idx(i, t), idx(i, pj));
            }
        }

        'reduce: loop {
            // Clear the pivot column.
            for i in (t + 1)..rows {
                if a[idx(i, t)].is_zero() {
                    continue;
                }
                let q = &a[idx(i, t)] / &a[idx(t, t)];
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &a[idx(i, j)] - &q * &a[idx(t, j)];
                        a[idx(i, j)] = v;
                    }
                }
                if !a[idx(i, t)].is_zero() {
                    // Remainder is smaller than the pivot: swap it up and restart.
                    for j in 0..cols {
                        a.swap(idx(t, j), idx(i, j));
                    }
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for j in (t + 1)..cols {
                if a[idx(t, j)].is_zero() {
                    continue;
                }
                let q = &a[idx(t, j)] / &a[idx(t, t)];
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &a[idx(i, j)] - &q * &a[idx(i, t)];
                        a[idx(i, j)] = v;
                    }
                }
                if !a[idx(t, j)].is_zero() {
                    for i in 0..rows {
                        a.swap(idx(i, t), idx(i, j));
                    }
                    continue 'reduce;
                }
            }
            // Pivot must divide the whole trailing block for the chain to hold.
            for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(&a[idx(i, j)] % &a[idx(t, t)]).is_zero() {
                        for jj in t..cols {
                            let v = &a[idx(t, jj)] + &a[idx(i, jj)];
                            a[idx(t, jj)] = v;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        t += 1;
    }

    let mut diagonal: Vec<BigInt> = (0..n).map(|i| a[idx(i, i)].abs()).collect();
    let rank = diagonal.iter().take(t).filter(|d| !d.is_zero()).count();
    for d in diagonal.iter_mut().skip(rank) {
        *d = BigInt::zero();
    }
    SnfResult { diagonal, rank }
}

/// Rank of the matrix over the field with two elements.
pub fn rank_mod2(m: &IntMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = vec![0u64; words];
        for j in 0..m.cols {
            if m.get(i, j).is_odd() {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        rows.push(row);
    }
    let mut rank = 0;
    for j in 0..m.cols {
        let word = j / 64;
        let bit = 1u64 << (j % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[word] & bit != 0 {
                for (w, pw) in row.iter_mut().zip(&pivot_row) {
                    *w ^= pw;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// gcd over all `j`-element sub-multisets of `ms` of the product of the
/// sub-multiset. `j = 0` returns 1 (empty product).
///
/// Computed by incremental gcd dynamic programming rather than enumerating
/// the subsets.
pub fn gcd_j_products(ms: &[u64], j: usize) -> Result<BigInt, LinalgError> {
    if j > ms.len() {
        return Err(LinalgError::SubsetSizeOutOfRange { j, len: ms.len() });
    }
    // g[c] = gcd of all c-fold products of the processed prefix; zero acts as
    // the gcd identity for sizes not yet reachable.
    let mut g: Vec<BigInt> = vec![BigInt::zero(); j + 1];
    g[0] = BigInt::one();
    for &m in ms {
        let m = BigInt::from(m);
        for c in (1..=j).rev() {
            let with_m = &g[c - 1] * &m;
            g[c] = g[c].gcd(&with_m);
        }
    }
    Ok(g[j].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn diag_i64(r: &SnfResult) -> Vec<i64> {
        r.diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn snf_of_diagonal_in_chain_is_unchanged() {
        let m = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(4)]);
        let r = snf(&m);
        assert_eq!(diag_i64(&r), vec![2, 4]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn snf_small_dense() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(diag_i64(&snf(&m)), vec![2, 4]);
    }

    #[test]
    fn snf_identity() {
        assert_eq!(diag_i64(&snf(&IntMatrix::identity(3))), vec![1, 1, 1]);
    }

    #[test]
    fn snf_empty_and_zero() {
        assert_eq!(snf(&IntMatrix::zeros(0, 3)).diagonal, Vec::<BigInt>::new());
        let r = snf(&IntMatrix::zeros(2, 2));
        assert_eq!(r.rank, 0);
        assert_eq!(diag_i64(&r), vec![0, 0]);
    }

    #[test]
    fn snf_reorders_coprime_diagonal() {
        let m = IntMatrix::diagonal(&[BigInt::from(6), BigInt::from(4)]);
        assert_eq!(diag_i64(&snf(&m)), vec![2, 12]);
    }

    #[test]
    fn rank_mod2_examples() {
        assert_eq!(rank_mod2(&IntMatrix::from_i64(2, 2, &[1, 1, 1, 1])), 1);
        assert_eq!(rank_mod2(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])), 1);
        assert_eq!(rank_mod2(&IntMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn gcd_j_products_examples() {
        assert_eq!(gcd_j_products(&[2, 4, 6], 2).unwrap(), BigInt::from(4));
        assert_eq!(gcd_j_products(&[2, 3, 7], 2).unwrap(), BigInt::from(1));
        assert_eq!(gcd_j_products(&[9], 1).unwrap(), BigInt::from(9));
        assert_eq!(gcd_j_products(&[2, 3], 0).unwrap(), BigInt::from(1));
        assert!(gcd_j_products(&[2, 3], 3).is_err());
    }

    /// Brute-force gcd over explicit subset enumeration.
    fn gcd_j_products_brute(ms: &[u64], j: usize) -> BigInt {
        fn rec(ms: &[u64], j: usize, start: usize, acc: BigInt, g: &mut BigInt) {
            if j == 0 {
                *g = g.gcd(&acc);
                return;
            }
            for i in start..ms.len() {
                if ms.len() - i < j {
                    break;
                }
                rec(ms, j - 1, i + 1, &acc * BigInt::from(ms[i]), g);
            }
        }
        let mut g = BigInt::zero();
        rec(ms, j, 0, BigInt::one(), &mut g);
        if j == 0 {
            g = BigInt::one();
        }
        g
    }

    /// gcd of all p-rowed minors, by enumeration. Oracle for the SNF
    /// determinantal-divisor property.
    fn minor_gcd(m: &IntMatrix, p: usize) -> BigInt {
        fn combos(n: usize, p: usize) -> Vec<Vec<usize>> {
            if p == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in combos(n - first - 1, p - 1) {
                    for r in rest.iter_mut() {
                        *r += first + 1;
                    }
                    let mut c = vec![first];
                    c.append(&mut rest);
                    out.push(c);
                }
            }
            out
        }
        fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.is_empty() {
                return BigInt::one();
            }
            let mut d = BigInt::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> =
                    cols.iter().copied().filter(|&cc| cc != c).collect();
                let sub = det(m, &rows[1..], &rest);
                let term = m.get(rows[0], c) * sub;
                if pos % 2 == 0 {
                    d += term;
                } else {
                    d -= term;
                }
            }
            d
        }
        let mut g = BigInt::zero();
        for rows in combos(m.rows(), p) {
            for cols in combos(m.cols(), p) {
                g = g.gcd(&det(m, &rows, &cols));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn snf_diagonal_products_match_minor_gcds(
            rows in 1usize..=4,
            cols in 1usize..=4,
            seed in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let entries: Vec<i64> = seed.iter().take(rows * cols).copied().collect();
            let m = IntMatrix::from_i64(rows, cols, &entries);
            let r = snf(&m);
            let mut prod = BigInt::one();
            for p in 1..=rows.min(cols) {
                prod *= &r.diagonal[p - 1];
                prop_assert_eq!(prod.clone(), minor_gcd(&m, p));
            }
            // Divisibility chain.
            for w in r.diagonal.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
        }

        #[test]
        fn snf_invariant_under_unimodular_factors(
            entries in proptest::collection::vec(-9i64..=9, 9),
            shears in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 4),
        ) {
            let m = IntMatrix::from_i64(3, 3, &entries);
            let mut u = IntMatrix::identity(3);
            let mut v = IntMatrix::identity(3);
            for (i, j, c) in shears {
                if i != j {
                    let mut s = IntMatrix::identity(3);
                    s.set(i, j, BigInt::from(c));
                    u = u.mul(&s);
                    let mut t = IntMatrix::identity(3);
                    t.set(j, i, BigInt::from(c));
                    v = t.mul(&v);
                }
            }
            prop_assert_eq!(snf(&u.mul(&m).mul(&v)).diagonal, snf(&m).diagonal);
        }

        #[test]
        fn gcd_products_dp_matches_enumeration(
            ms in proptest::collection::vec(2u64..=30, 0..=8),
        ) {
            for j in 0..=ms.len() {
                prop_assert_eq!(
                    gcd_j_products(&ms, j).unwrap(),
                    gcd_j_products_brute(&ms, j)
                );
            }
        }

        #[test]
        fn mod2_rank_at_most_rational_rank(
            rows in 1usize..=4,
            cols in 1usize..=4,
            seed in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let entries: Vec<i64> = seed.iter().take(rows * cols).copied().collect();
            let m = IntMatrix::from_i64(rows, cols, &entries);
            prop_assert!(rank_mod2(&m) <= snf(&m).rank);
        }
    }
}
