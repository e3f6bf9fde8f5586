//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into single `u64` words (bit `i` is
//! coordinate `i + 1`), which caps the column count at 64. That is plenty:
//! the brute-force enumeration engines cap out far below, and 64 columns
//! keep row operations at one XOR each.
//!
//! Everything here is exact; over GF(2) there are no tolerances.

use crate::error::{Error, Result};
use crate::graphs::Graph;
use std::fmt;

/// Maximum number of coordinates in a packed vector / columns in a matrix.
pub const MAX_BITS: usize = 64;

// ============================================================================
// F2Vector
// ============================================================================

/// A vector over GF(2) with at most [`MAX_BITS`] coordinates.
///
/// Bit `i` of `bits` holds coordinate `i + 1`; bits at and above `len` are
/// always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    bits: u64,
}

impl F2Vector {
    /// The zero vector of the given length.
    ///
    /// # Panics
    /// Panics if `len` is 0 or exceeds [`MAX_BITS`].
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1 && len <= MAX_BITS, "vector length {len} out of range");
        F2Vector { len, bits: 0 }
    }

    /// Builds a vector from a packed word; bits at and above `len` are masked off.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        let mut v = Self::zeros(len);
        v.bits = bits & mask(len);
        v
    }

    /// The standard basis vector with a 1 in coordinate `index + 1`.
    pub fn unit(len: usize, index: usize) -> Self {
        assert!(index < len, "unit index {index} out of range (len={len})");
        Self::from_bits(len, 1 << index)
    }

    /// Parses a string of `0`/`1` characters, first coordinate first.
    pub fn parse(text: &str) -> Result<Self> {
        let len = text.len();
        if len == 0 || len > MAX_BITS {
            return Err(Error::parse(format!("vector length {len} out of range")));
        }
        let mut bits = 0u64;
        for (i, c) in text.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                other => return Err(Error::parse(format!("invalid bit character {other:?}"))),
            }
        }
        Ok(Self::from_bits(len, bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "index {index} out of range (len={})", self.len);
        (self.bits >> index) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "index {index} out of range (len={})", self.len);
        if value {
            self.bits |= 1 << index;
        } else {
            self.bits &= !(1 << index);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Number of 1 coordinates.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of 0 coordinates.
    pub fn zero_count(&self) -> usize {
        self.len - self.weight()
    }

    /// Standard scalar product over GF(2).
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Coordinates in order, first coordinate first.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}

#[inline]
fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

// ============================================================================
// F2Matrix
// ============================================================================

/// A matrix over GF(2) with at most [`MAX_BITS`] columns.
///
/// Rows are packed words in the same bit order as [`F2Vector`]. The row count
/// is not limited to 64; rectangular shapes are used for row-deleted path
/// matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<u64>,
}

impl F2Matrix {
    /// The zero matrix of the given shape.
    ///
    /// # Panics
    /// Panics if `ncols` is 0 or exceeds [`MAX_BITS`].
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(ncols >= 1 && ncols <= MAX_BITS, "column count {ncols} out of range");
        F2Matrix { nrows, ncols, rows: vec![0; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share a length.
    pub fn from_rows(rows: &[F2Vector]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let ncols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        F2Matrix { nrows: rows.len(), ncols, rows: rows.iter().map(|r| r.bits()).collect() }
    }

    /// Builds a matrix from raw packed row words.
    pub fn from_row_words(ncols: usize, rows: Vec<u64>) -> Self {
        assert!(ncols >= 1 && ncols <= MAX_BITS, "column count {ncols} out of range");
        let m = mask(ncols);
        assert!(rows.iter().all(|&r| r & !m == 0), "row has bits beyond ncols");
        F2Matrix { nrows: rows.len(), ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector { len: self.ncols, bits: self.rows[i] }
    }

    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.nrows && j < self.ncols, "entry ({i},{j}) out of range");
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.nrows && j < self.ncols, "entry ({i},{j}) out of range");
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn is_symmetric(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        (0..self.nrows).all(|i| (i + 1..self.ncols).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    pub fn transpose(&self) -> F2Matrix {
        assert!(self.nrows <= MAX_BITS, "transpose needs nrows <= {MAX_BITS}");
        let mut t = F2Matrix::zeros(self.ncols, self.nrows.max(1));
        t.nrows = self.ncols;
        t.ncols = self.nrows;
        t.rows = vec![0; self.ncols];
        for i in 0..self.nrows {
            let mut r = self.rows[i];
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                t.rows[j] |= 1 << i;
            }
        }
        t
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vector(&self, v: &F2Vector) -> Result<F2Vector> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.len() });
        }
        let mut out = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            if (row & v.bits()).count_ones() & 1 == 1 {
                out |= 1 << i;
            }
        }
        // The product lives in GF(2)^nrows, so it must itself fit in a word.
        assert!(self.nrows <= MAX_BITS, "product length {} out of range", self.nrows);
        Ok(F2Vector { len: self.nrows, bits: out })
    }

    /// Returns the matrix with `v` appended as an extra row.
    pub fn with_row(&self, v: &F2Vector) -> Result<F2Matrix> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.len() });
        }
        let mut rows = self.rows.clone();
        rows.push(v.bits());
        Ok(F2Matrix { nrows: self.nrows + 1, ncols: self.ncols, rows })
    }

    /// Rank of the matrix. The matrix itself is untouched; elimination runs
    /// on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = [0u64; MAX_BITS];
        if self.nrows <= MAX_BITS {
            scratch[..self.nrows].copy_from_slice(&self.rows);
            rank_in_place(&mut scratch[..self.nrows], self.ncols)
        } else {
            let mut rows = self.rows.clone();
            rank_in_place(&mut rows, self.ncols)
        }
    }

    /// A basis of the right nullspace `{u : self * u = 0}`.
    ///
    /// Basis vectors are returned in ascending order of their free coordinate,
    /// so the output is deterministic.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        let (rows, pivots) = self.reduced_echelon();
        let mut basis = Vec::with_capacity(self.ncols - pivots.len());
        for free in 0..self.ncols {
            if pivots.contains(&free) {
                continue;
            }
            let mut u = F2Vector::zeros(self.ncols);
            u.set(free, true);
            for (k, &p) in pivots.iter().enumerate() {
                if p < free && (rows[k] >> free) & 1 == 1 {
                    u.set(p, true);
                }
            }
            basis.push(u);
        }
        basis
    }

    /// True iff `v` is a sum of rows of the matrix.
    pub fn rowspace_contains(&self, v: &F2Vector) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.len() });
        }
        let (rows, pivots) = self.reduced_echelon();
        let mut rem = v.bits();
        for (k, &p) in pivots.iter().enumerate() {
            if (rem >> p) & 1 == 1 {
                rem ^= rows[k];
            }
        }
        Ok(rem == 0)
    }

    /// Reduced row echelon form: returns the nonzero reduced rows together
    /// with their pivot columns (ascending).
    fn reduced_echelon(&self) -> (Vec<u64>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..rows.len()).find(|&i| (rows[i] >> c) & 1 == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && (*row >> c) & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Row-echelon rank of packed rows, destroying `rows` in the process.
///
/// This is the hot path of every brute-force enumeration, so it takes a raw
/// slice and avoids allocation.
#[inline]
pub(crate) fn rank_in_place(rows: &mut [u64], ncols: usize) -> usize {
    let n = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        let bit = 1u64 << c;
        let Some(p) = (r..n).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r];
        for row in rows.iter_mut().skip(r + 1) {
            if *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

// ============================================================================
// Graph completions
// ============================================================================

/// The completion of the indeterminate matrix of `g` with the given diagonal.
///
/// Entry `(i, j)` for `i != j` is 1 exactly when `i`-`j` is an edge of `g`;
/// diagonal entry `i` is bit `i` of `diag`.
pub fn completion(g: &Graph, diag: u64) -> F2Matrix {
    let n = g.order();
    let d = diag & mask(n);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(g.adjacency_row(i) | (d & (1 << i)));
    }
    F2Matrix { nrows: n, ncols: n, rows }
}

/// Ranks of the two matrices obtained by bordering the symmetric matrix `a`
/// with a first row/column `(c | v)` for `c = 0` and `c = 1`, in that order.
pub fn extension_ranks(a: &F2Matrix, v: &F2Vector) -> Result<(usize, usize)> {
    debug_assert!(a.is_symmetric(), "extension_ranks needs a symmetric matrix");
    if v.len() != a.ncols() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), found: v.len() });
    }
    let n = a.ncols() + 1;
    assert!(n <= MAX_BITS, "bordered matrix exceeds {MAX_BITS} columns");
    let mut scratch = [0u64; MAX_BITS];
    let mut ranks = [0usize; 2];
    for (c, rank) in ranks.iter_mut().enumerate() {
        scratch[0] = (v.bits() << 1) | c as u64;
        for i in 0..a.nrows() {
            scratch[i + 1] = (a.rows[i] << 1) | ((v.bits() >> i) & 1);
        }
        *rank = rank_in_place(&mut scratch[..n], n);
    }
    Ok((ranks[0], ranks[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> F2Matrix {
        let rows: Vec<F2Vector> = rows.iter().map(|r| F2Vector::parse(r).unwrap()).collect();
        F2Matrix::from_rows(&rows)
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(F2Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn rank_path3_all_zero_diagonal() {
        // completion of the P3 indeterminate matrix with zero diagonal:
        // rows 1 and 3 coincide, so the rank drops to 2.
        let a = m(&["010", "101", "010"]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rank_does_not_mutate() {
        let a = m(&["110", "011", "101"]);
        let before = a.clone();
        let _ = a.rank();
        assert_eq!(a, before);
    }

    #[test]
    fn rank_equals_transpose_rank_exhaustive_3x3() {
        for bits in 0u64..(1 << 9) {
            let rows = vec![bits & 7, (bits >> 3) & 7, (bits >> 6) & 7];
            let a = F2Matrix::from_row_words(3, rows);
            assert_eq!(a.rank(), a.transpose().rank(), "matrix {a:?}");
        }
    }

    #[test]
    fn nullspace_identity_is_empty() {
        assert!(F2Matrix::identity(2).nullspace().is_empty());
    }

    #[test]
    fn nullspace_repeated_row() {
        let a = m(&["11", "11"]);
        assert_eq!(a.nullspace(), vec![F2Vector::parse("11").unwrap()]);
    }

    #[test]
    fn nullspace_path3_zero_diagonal() {
        let a = m(&["010", "101", "010"]);
        assert_eq!(a.nullspace(), vec![F2Vector::parse("101").unwrap()]);
    }

    #[test]
    fn nullspace_vectors_annihilate_exhaustive_3x3() {
        for bits in 0u64..(1 << 9) {
            let rows = vec![bits & 7, (bits >> 3) & 7, (bits >> 6) & 7];
            let a = F2Matrix::from_row_words(3, rows);
            let basis = a.nullspace();
            assert_eq!(basis.len(), 3 - a.rank());
            for u in &basis {
                assert!(a.mul_vector(u).unwrap().is_zero(), "A={a:?} u={u}");
            }
        }
    }

    #[test]
    fn rowspace_membership() {
        let a = m(&["11"]);
        assert!(a.rowspace_contains(&F2Vector::zeros(2)).unwrap());
        assert!(!a.rowspace_contains(&F2Vector::parse("10").unwrap()).unwrap());

        let b = m(&["110", "011"]);
        assert!(b.rowspace_contains(&F2Vector::parse("101").unwrap()).unwrap());
    }

    #[test]
    fn rowspace_length_mismatch_is_an_error() {
        let a = m(&["11"]);
        assert!(matches!(
            a.rowspace_contains(&F2Vector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn completion_small_cases() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(completion(&p2, 0b00), m(&["01", "10"]));

        let p3 = Graph::path(3).unwrap();
        assert_eq!(completion(&p3, 0b101), m(&["110", "101", "011"]));

        let k3 = Graph::complete(3).unwrap();
        let c = completion(&k3, 0b000);
        assert_eq!(c, m(&["011", "101", "110"]));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn extension_ranks_examples() {
        let a = m(&["01", "10"]); // rank 2
        let v = F2Vector::parse("10").unwrap();
        assert_eq!(extension_ranks(&a, &v).unwrap(), (2, 3));

        let a = m(&["11", "11"]); // rank 1
        let v = F2Vector::parse("11").unwrap();
        assert_eq!(extension_ranks(&a, &v).unwrap(), (2, 1));

        let v = F2Vector::parse("10").unwrap();
        assert_eq!(extension_ranks(&a, &v).unwrap(), (3, 3));
    }

    #[test]
    fn extension_ranks_trichotomy_exhaustive_up_to_5() {
        // For symmetric a of size m = n-1: if rank(a) = m the bordered ranks
        // are {m, m+1}; if rank(a) = m-1 they are {m+1, m+1} or {m-1, m}
        // according to rowspace membership of v.
        for m_size in 1..=4usize {
            let pairs = m_size * (m_size + 1) / 2;
            for sym_bits in 0u64..(1 << pairs) {
                let mut a = F2Matrix::zeros(m_size, m_size);
                let mut k = 0;
                for i in 0..m_size {
                    for j in i..m_size {
                        let bit = (sym_bits >> k) & 1 == 1;
                        a.set_entry(i, j, bit);
                        a.set_entry(j, i, bit);
                        k += 1;
                    }
                }
                let ra = a.rank();
                for vbits in 0u64..(1 << m_size) {
                    let v = F2Vector::from_bits(m_size, vbits);
                    let (r0, r1) = extension_ranks(&a, &v).unwrap();
                    let mut got = [r0, r1];
                    got.sort_unstable();
                    if ra == m_size {
                        assert_eq!(got, [m_size, m_size + 1]);
                    } else if ra == m_size - 1 {
                        let inside = a.rowspace_contains(&v).unwrap();
                        if inside {
                            assert_eq!(got, [m_size - 1, m_size]);
                        } else {
                            assert_eq!(got, [m_size + 1, m_size + 1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn path_rank_lemma_small() {
        // A completion of the path matrix has full rank exactly when e1 (and
        // equally e_n) lies in its rowspace.
        for n in 2..=9usize {
            let p = Graph::path(n).unwrap();
            let e1 = F2Vector::unit(n, 0);
            let en = F2Vector::unit(n, n - 1);
            for diag in 0u64..(1 << n) {
                let a = completion(&p, diag);
                let full = a.rank() == n;
                assert_eq!(full, a.rowspace_contains(&e1).unwrap());
                assert_eq!(full, a.rowspace_contains(&en).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn rowspace_contains_matches_rank_growth(
            nrows in 1usize..6,
            ncols in 1usize..7,
            seed in any::<u64>(),
            vseed in any::<u64>(),
        ) {
            let rows: Vec<u64> = (0..nrows)
                .map(|i| (seed >> (i * 7)) & ((1 << ncols) - 1))
                .collect();
            let a = F2Matrix::from_row_words(ncols, rows);
            let v = F2Vector::from_bits(ncols, vseed);
            let contained = a.rowspace_contains(&v).unwrap();
            let grown = a.with_row(&v).unwrap().rank();
            prop_assert_eq!(contained, grown == a.rank());
        }

        #[test]
        fn transpose_is_involutive(nrows in 1usize..8, ncols in 1usize..8, seed in any::<u64>()) {
            let rows: Vec<u64> = (0..nrows)
                .map(|i| (seed >> (i * 5)) & ((1 << ncols) - 1))
                .collect();
            let a = F2Matrix::from_row_words(ncols, rows);
            prop_assert_eq!(a.transpose().transpose(), a);
        }
    }
}
