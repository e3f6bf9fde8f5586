//! Brute-force oracles: exact rank distributions by enumerating all `2^n`
//! diagonal completions, restricted counts over the path block, nullspace
//! vector enumeration, and distribution convolution.
//!
//! Everything here is the slow, trustworthy side of a cross-check; the
//! closed forms in [`crate::closedform`] and [`crate::recurrence`] are
//! verified against these counts.

use crate::error::{Error, Result};
use crate::f2::{rank_in_place, F2Vector, MAX_BITS};
use crate::graphs::{GadgetDecomposition, Graph};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Default limit on the order of graphs the enumeration engines accept.
/// `2^24` rank computations keep the full verification run in the minutes.
pub const DEFAULT_CAP: usize = 24;

/// Hard ceiling regardless of the configured cap; mask arithmetic is `u64`.
const HARD_CAP: usize = 62;

/// Masks below this many bits are not worth splitting across threads.
const PARALLEL_THRESHOLD: usize = 16;

// ============================================================================
// RankDistribution
// ============================================================================

/// Exact counts of representing matrices by rank.
///
/// Ranks with zero count are not stored; for a connected graph of order `n`
/// the stored ranks form a contiguous interval ending at `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct RankDistribution {
    n: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl RankDistribution {
    /// Builds a distribution, dropping zero entries.
    pub fn new(n: usize, counts: BTreeMap<usize, BigUint>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        RankDistribution { n, counts }
    }

    /// The identity element for convolution: a point mass at rank 0 on zero
    /// vertices.
    pub fn point_mass() -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(0, BigUint::one());
        RankDistribution { n: 0, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    /// Count at a given rank (zero when absent).
    pub fn get(&self, rank: usize) -> BigUint {
        self.counts.get(&rank).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn min_rank(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// True iff the supported ranks form a contiguous interval.
    pub fn support_is_interval(&self) -> bool {
        match (self.min_rank(), self.max_rank()) {
            (Some(lo), Some(hi)) => (lo..=hi).all(|r| self.counts.contains_key(&r)),
            _ => true,
        }
    }

    /// Discrete convolution: the distribution of a disjoint union in terms
    /// of its parts.
    pub fn convolve(&self, other: &RankDistribution) -> RankDistribution {
        let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (i, a) in &self.counts {
            for (j, b) in &other.counts {
                *counts.entry(i + j).or_insert_with(BigUint::zero) += a * b;
            }
        }
        RankDistribution { n: self.n + other.n, counts }
    }
}

impl fmt::Debug for RankDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankDistribution(n={}, {{", self.n)?;
        for (i, (r, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}: {c}")?;
        }
        write!(f, "}})")
    }
}

/// Convolution as a free function, matching the shape of the other oracles.
pub fn convolve(d1: &RankDistribution, d2: &RankDistribution) -> RankDistribution {
    d1.convolve(d2)
}

// ============================================================================
// ABCounts
// ============================================================================

/// The pair of counts `(A, B)` of completions of a gadget graph's matrix of
/// full and almost-full rank whose path block is rank deficient, with the
/// derived signed quantities `alpha = A - B` and `beta = 4B - A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ABCounts {
    pub a: BigUint,
    pub b: BigUint,
}

impl ABCounts {
    pub fn new(a: BigUint, b: BigUint) -> Self {
        ABCounts { a, b }
    }

    pub fn alpha(&self) -> BigInt {
        BigInt::from(self.a.clone()) - BigInt::from(self.b.clone())
    }

    pub fn beta(&self) -> BigInt {
        BigInt::from(4u32) * BigInt::from(self.b.clone()) - BigInt::from(self.a.clone())
    }
}

// ============================================================================
// Enumeration oracles
// ============================================================================

fn check_cap(n: usize, cap: usize) -> Result<usize> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(n)
}

/// Exact rank distribution of `g` by enumerating all `2^n` diagonal
/// completions of its indeterminate matrix.
///
/// The mask space is split into contiguous ranges processed in parallel;
/// per-range counts are summed, so the result does not depend on scheduling.
pub fn rank_distribution(g: &Graph, cap: usize) -> Result<RankDistribution> {
    let n = check_cap(g.order(), cap)?;
    let adj: Vec<u64> = (0..n).map(|i| g.adjacency_row(i)).collect();

    let count_range = |start: u64, end: u64| -> Vec<u64> {
        let mut local = vec![0u64; n + 1];
        let mut scratch = [0u64; MAX_BITS];
        for mask in start..end {
            for i in 0..n {
                scratch[i] = adj[i] | (mask & (1 << i));
            }
            local[rank_in_place(&mut scratch[..n], n)] += 1;
        }
        local
    };

    let totals = run_chunked(n, count_range, vec![0u64; n + 1], |mut acc, local| {
        for (a, l) in acc.iter_mut().zip(&local) {
            *a += l;
        }
        acc
    });

    let mut counts = BTreeMap::new();
    for (rank, c) in totals.into_iter().enumerate() {
        if c > 0 {
            counts.insert(rank, BigUint::from(c));
        }
    }
    Ok(RankDistribution { n, counts })
}

/// Counts completions of the matrix of `g` (reordered so the off-path vertex
/// comes first) whose path block is rank deficient, split by total rank:
/// `A` counts total rank `n`, `B` counts total rank `n - 1`.
pub fn ab_counts(g: &Graph, dec: &GadgetDecomposition, cap: usize) -> Result<ABCounts> {
    validate_decomposition(g, dec)?;
    let n = check_cap(g.order(), cap)?;

    let mut perm = Vec::with_capacity(n);
    perm.push(dec.x);
    perm.extend_from_slice(&dec.path_order);
    let reordered = g.permuted(&perm)?;
    let adj: Vec<u64> = (0..n).map(|i| reordered.adjacency_row(i)).collect();

    let count_range = |start: u64, end: u64| -> (u64, u64) {
        let mut a_count = 0u64;
        let mut b_count = 0u64;
        let mut scratch = [0u64; MAX_BITS];
        for mask in start..end {
            // Path block: rows/columns 1..n of the reordered matrix.
            for i in 1..n {
                scratch[i - 1] = (adj[i] >> 1) | ((mask >> 1) & (1 << (i - 1)));
            }
            if rank_in_place(&mut scratch[..n - 1], n - 1) != n - 2 {
                continue;
            }
            for i in 0..n {
                scratch[i] = adj[i] | (mask & (1 << i));
            }
            let full = rank_in_place(&mut scratch[..n], n);
            if full == n {
                a_count += 1;
            } else if full == n - 1 {
                b_count += 1;
            }
        }
        (a_count, b_count)
    };

    let (a, b) = run_chunked(n, count_range, (0u64, 0u64), |acc, local| {
        (acc.0 + local.0, acc.1 + local.1)
    });
    Ok(ABCounts::new(BigUint::from(a), BigUint::from(b)))
}

/// Splits the `2^n` mask space into chunks, maps them in parallel, and folds
/// the partial results. Exact integer sums make the fold order irrelevant.
fn run_chunked<T, F, R>(n: usize, per_range: F, identity: T, combine: R) -> T
where
    T: Send + Clone,
    F: Fn(u64, u64) -> T + Sync,
    R: Fn(T, T) -> T + Sync + Send,
{
    let total: u64 = 1 << n;
    if n <= PARALLEL_THRESHOLD {
        return per_range(0, total);
    }
    let chunk: u64 = 1 << PARALLEL_THRESHOLD;
    (0..total / chunk)
        .into_par_iter()
        .map(|i| per_range(i * chunk, (i + 1) * chunk))
        .reduce(|| identity.clone(), combine)
}

fn validate_decomposition(g: &Graph, dec: &GadgetDecomposition) -> Result<()> {
    let n = g.order();
    if dec.path_order.len() != n - 1 || dec.x >= n {
        return Err(Error::invalid("decomposition does not cover the graph"));
    }
    let mut seen = vec![false; n];
    seen[dec.x] = true;
    for &v in &dec.path_order {
        if v >= n || seen[v] {
            return Err(Error::invalid("decomposition is not a vertex permutation"));
        }
        seen[v] = true;
    }
    // The listed order must induce exactly a path.
    for (i, &u) in dec.path_order.iter().enumerate() {
        for &v in &dec.path_order[i + 1..] {
            let consecutive = g.has_edge(u, v);
            let expected = dec.path_order[i + 1] == v;
            if consecutive != expected {
                return Err(Error::invalid("path_order does not induce a path"));
            }
        }
    }
    // The gap vector must reproduce the neighbors of x along the path.
    let positions: Vec<usize> = dec
        .path_order
        .iter()
        .enumerate()
        .filter(|(_, &v)| g.has_edge(dec.x, v))
        .map(|(i, _)| i)
        .collect();
    if positions != dec.gadget.neighbor_positions() {
        return Err(Error::invalid("gadget gaps disagree with the graph"));
    }
    Ok(())
}

// ============================================================================
// Nullspace vector enumeration
// ============================================================================

/// True iff `u` has first and last coordinates 1 and no two consecutive
/// zero coordinates.
pub fn is_in_u(u: &F2Vector) -> bool {
    let n = u.len();
    if !u.get(0) || !u.get(n - 1) {
        return false;
    }
    let m = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let zeros = !u.bits() & m;
    zeros & (zeros >> 1) == 0
}

/// All vectors of length `n` with first and last coordinates 1 and no two
/// consecutive zeros, in ascending binary order (first coordinate most
/// significant).
pub fn enumerate_u(n: usize) -> Vec<F2Vector> {
    assert!(n >= 1 && n <= MAX_BITS, "length {n} out of range");
    let mut out = Vec::new();
    for value in 0..(1u64 << n) {
        // Interpret `value` big-endian so the output order matches the
        // usual way these vectors are written down.
        let bits = value.reverse_bits() >> (64 - n);
        let u = F2Vector::from_bits(n, bits);
        if is_in_u(&u) {
            out.push(u);
        }
    }
    out
}

/// Number of completions of the path matrix annihilating `u`, by direct
/// enumeration of all `2^n` diagonals.
///
/// `u` must have first and last coordinates 1 and no consecutive zeros;
/// anything else cannot be in the nullspace of a path completion.
pub fn null_count(u: &F2Vector, cap: usize) -> Result<BigUint> {
    if !is_in_u(u) {
        return Err(Error::invalid(format!("{u} is not a valid path nullspace vector")));
    }
    let n = check_cap(u.len(), cap)?;
    let path = Graph::path(n).expect("path order is in range");
    let adj: Vec<u64> = (0..n).map(|i| path.adjacency_row(i)).collect();
    let ubits = u.bits();
    let mut count = 0u64;
    for mask in 0..(1u64 << n) {
        let annihilates =
            (0..n).all(|i| ((adj[i] | (mask & (1 << i))) & ubits).count_ones() & 1 == 0);
        if annihilates {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{decompose, parse_edges, Gadget};

    fn dist(pairs: &[(usize, u64)], n: usize) -> RankDistribution {
        let counts = pairs.iter().map(|&(r, c)| (r, BigUint::from(c))).collect();
        RankDistribution::new(n, counts)
    }

    #[test]
    fn path_two_distribution() {
        let g = Graph::path(2).unwrap();
        assert_eq!(rank_distribution(&g, DEFAULT_CAP).unwrap(), dist(&[(1, 1), (2, 3)], 2));
    }

    #[test]
    fn triangle_distribution() {
        let g = Graph::complete(3).unwrap();
        assert_eq!(
            rank_distribution(&g, DEFAULT_CAP).unwrap(),
            dist(&[(1, 1), (2, 4), (3, 3)], 3)
        );
    }

    #[test]
    fn four_cycle_distribution() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(
            rank_distribution(&g, DEFAULT_CAP).unwrap(),
            dist(&[(2, 3), (3, 8), (4, 5)], 4)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(10).unwrap();
        assert!(matches!(
            rank_distribution(&g, 9),
            Err(Error::Capacity { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn distribution_total_is_two_to_the_n() {
        for n in 1..=8 {
            let g = Graph::cycle(n.max(3)).unwrap();
            let d = rank_distribution(&g, DEFAULT_CAP).unwrap();
            assert_eq!(d.total(), BigUint::from(1u64 << d.n()));
            assert!(d.support_is_interval());
        }
    }

    fn gadget_ab(t: &[u32]) -> ABCounts {
        let gadget = Gadget::new(t.to_vec()).unwrap();
        let g = Graph::gadget(&gadget).unwrap();
        let dec = decompose(&g).unwrap().unwrap();
        ab_counts(&g, &dec, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn ab_counts_small_gadgets() {
        let ab = gadget_ab(&[1, 1]);
        assert_eq!((ab.a, ab.b), (BigUint::from(2u32), BigUint::from(2u32)));

        // (0,2) is the path on 4 vertices: nothing of rank n-1 has a
        // deficient path block.
        let ab = gadget_ab(&[0, 2]);
        assert_eq!((ab.a, ab.b), (BigUint::from(6u32), BigUint::from(0u32)));

        // (0,2,0) is the 4-cycle.
        let ab = gadget_ab(&[0, 2, 0]);
        assert_eq!((ab.a, ab.b), (BigUint::from(0u32), BigUint::from(3u32)));
    }

    #[test]
    fn ab_difference_matches_distribution_difference() {
        for t in [&[1u32, 1][..], &[0, 2, 2], &[2, 1, 2], &[1, 2, 1, 0]] {
            let gadget = Gadget::new(t.to_vec()).unwrap();
            let g = Graph::gadget(&gadget).unwrap();
            let dec = decompose(&g).unwrap().unwrap();
            let ab = ab_counts(&g, &dec, DEFAULT_CAP).unwrap();
            let d = rank_distribution(&g, DEFAULT_CAP).unwrap();
            let n = g.order();
            let diff = BigInt::from(d.get(n)) - BigInt::from(d.get(n - 1));
            assert_eq!(ab.alpha(), diff, "gadget {t:?}");
        }
    }

    #[test]
    fn ab_counts_rejects_bogus_decomposition() {
        let g = Graph::cycle(5).unwrap();
        let mut dec = decompose(&g).unwrap().unwrap();
        dec.gadget = Gadget::new(vec![1, 2]).unwrap();
        assert!(ab_counts(&g, &dec, DEFAULT_CAP).is_err());
    }

    #[test]
    fn u_vectors_small() {
        let u1 = enumerate_u(1);
        assert_eq!(u1.len(), 1);
        assert_eq!(u1[0].to_string(), "1");

        let u3: Vec<String> = enumerate_u(3).iter().map(|u| u.to_string()).collect();
        assert_eq!(u3, vec!["101", "111"]);

        let u4: Vec<String> = enumerate_u(4).iter().map(|u| u.to_string()).collect();
        assert_eq!(u4, vec!["1011", "1101", "1111"]);
    }

    #[test]
    fn u_vectors_match_definition_exhaustively() {
        for n in 1..=10usize {
            let listed = enumerate_u(n);
            let mut expected = 0usize;
            for bits in 0..(1u64 << n) {
                let u = F2Vector::from_bits(n, bits);
                let first_last = u.get(0) && u.get(n - 1);
                let no_double_zero =
                    (0..n.saturating_sub(1)).all(|i| u.get(i) || u.get(i + 1));
                if first_last && no_double_zero {
                    expected += 1;
                    assert!(listed.contains(&u), "missing {u}");
                }
            }
            assert_eq!(listed.len(), expected);
        }
    }

    #[test]
    fn null_count_examples() {
        let u = F2Vector::parse("111").unwrap();
        assert_eq!(null_count(&u, DEFAULT_CAP).unwrap(), BigUint::from(1u32));
        let u = F2Vector::parse("101").unwrap();
        assert_eq!(null_count(&u, DEFAULT_CAP).unwrap(), BigUint::from(2u32));
        let u = F2Vector::parse("10101").unwrap();
        assert_eq!(null_count(&u, DEFAULT_CAP).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn null_count_rejects_outsiders() {
        let u = F2Vector::parse("100").unwrap();
        assert!(null_count(&u, DEFAULT_CAP).is_err());
        let u = F2Vector::parse("1001").unwrap();
        assert!(null_count(&u, DEFAULT_CAP).is_err());
    }

    #[test]
    fn convolve_identity_and_square() {
        let p2 = rank_distribution(&Graph::path(2).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(p2.convolve(&RankDistribution::point_mass()), p2);

        let sq = p2.convolve(&p2);
        assert_eq!(sq, dist(&[(2, 1), (3, 6), (4, 9)], 4));
    }

    #[test]
    fn convolve_matches_brute_force_on_disjoint_union() {
        // P2 together with an isolated vertex.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!g.is_connected());
        let whole = rank_distribution(&g, DEFAULT_CAP).unwrap();
        let p2 = rank_distribution(&Graph::path(2).unwrap(), DEFAULT_CAP).unwrap();
        let k1 = rank_distribution(&Graph::empty(1).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(whole, p2.convolve(&k1));
    }

    #[test]
    fn parallel_and_serial_counts_agree() {
        // Order 17 crosses the parallel threshold; compare against a
        // straightforward serial pass.
        let g = parse_edges(
            "0-1,1-2,2-3,3-4,4-5,5-6,6-7,7-8,8-9,9-10,10-11,11-12,12-13,13-14,14-15,15-16,0-8",
        )
        .unwrap();
        assert_eq!(g.order(), 17);
        let d = rank_distribution(&g, DEFAULT_CAP).unwrap();
        let mut serial = vec![0u64; 18];
        let adj: Vec<u64> = (0..17).map(|i| g.adjacency_row(i)).collect();
        let mut scratch = [0u64; MAX_BITS];
        for mask in 0u64..(1 << 17) {
            for i in 0..17 {
                scratch[i] = adj[i] | (mask & (1 << i));
            }
            serial[rank_in_place(&mut scratch[..17], 17)] += 1;
        }
        for (rank, &c) in serial.iter().enumerate() {
            assert_eq!(d.get(rank), BigUint::from(c), "rank {rank}");
        }
    }
}
