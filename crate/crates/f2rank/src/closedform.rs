//! Exact evaluation of the counting formulas: the path-count function `F`,
//! rank counts over all matrices and over symmetric matrices, the
//! path/cycle/complete rank distributions, and the nullspace-sum expressions
//! for the gadget counts `A` and `B`.
//!
//! Every division in these formulas must be exact; a remainder means a
//! transcription bug, and the helpers panic rather than round.

use crate::enumerate::{enumerate_u, ABCounts, RankDistribution};
use crate::error::{Error, Result};
use crate::f2::F2Vector;
use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Divides exactly, panicking on a nonzero remainder.
pub(crate) fn exact_div(numerator: BigUint, denominator: &BigUint) -> BigUint {
    let (q, r) = numerator.div_rem(denominator);
    assert!(r.is_zero(), "inexact division {numerator} / {denominator} in a counting formula");
    q
}

/// `F(n) = (2^(n+1) + (-1)^n) / 3`: the number of full-rank matrices
/// representing the path on `n` vertices. `F(-1) = 0` by the same formula.
pub fn f(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::invalid(format!("F({n}) is undefined below -1")));
    }
    if n == -1 {
        return Ok(BigUint::zero());
    }
    let pow = BigUint::one() << (n as usize + 1);
    let numerator = if n % 2 == 0 { pow + 1u32 } else { pow - 1u32 };
    Ok(exact_div(numerator, &BigUint::from(3u32)))
}

/// Signed variant of [`f`] for use inside signed identities.
pub fn f_int(n: i64) -> Result<BigInt> {
    Ok(BigInt::from(f(n)?))
}

/// Number of `n x n` matrices of rank `k` over the field with `q` elements.
pub fn count_rank_all(n: u32, k: u32, q: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::invalid(format!("rank {k} exceeds the size {n}")));
    }
    if q < 2 {
        return Err(Error::invalid("the field order must be at least 2"));
    }
    let q = BigUint::from(q);
    let qn = q.pow(n);
    let qk = q.pow(k);
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for j in 0..k {
        let qj = q.pow(j);
        let diff = &qn - &qj;
        numerator *= &diff * &diff;
        denominator *= &qk - &qj;
    }
    Ok(exact_div(numerator, &denominator))
}

/// Number of symmetric `n x n` matrices of rank `r` over the field with `q`
/// elements. Dispatches on the parity of `r` with `s = floor(r / 2)`.
pub fn count_rank_symmetric(n: u32, r: u32, q: u64) -> Result<BigUint> {
    if r > n {
        return Err(Error::invalid(format!("rank {r} exceeds the size {n}")));
    }
    if q < 2 {
        return Err(Error::invalid("the field order must be at least 2"));
    }
    let q = BigUint::from(q);
    let s = r / 2;
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for i in 1..=s {
        let q2i = q.pow(2 * i);
        numerator *= &q2i;
        denominator *= q2i - 1u32;
    }
    // Both parities multiply by (q^n - 1)(q^(n-1) - 1) ... over r factors.
    for i in 0..r {
        numerator *= q.pow(n - i) - 1u32;
    }
    Ok(exact_div(numerator, &denominator))
}

/// Rank distribution of the path on `n >= 1` vertices:
/// `{n-1: F(n-1), n: F(n)}`, with the single-vertex case `{0: 1, 1: 1}`.
pub fn path_distribution(n: usize) -> RankDistribution {
    assert!(n >= 1, "the path needs at least one vertex");
    let mut counts = BTreeMap::new();
    if n == 1 {
        counts.insert(0, BigUint::one());
        counts.insert(1, BigUint::one());
    } else {
        counts.insert(n - 1, f(n as i64 - 1).expect("n >= 2"));
        counts.insert(n, f(n as i64).expect("n >= 2"));
    }
    RankDistribution::new(n, counts)
}

/// Rank distribution of the cycle on `n >= 3` vertices:
/// `{n-2: F(n-2), n-1: 2^(n-1), n: F(n-1)}`.
pub fn cycle_distribution(n: usize) -> RankDistribution {
    assert!(n >= 3, "the cycle needs at least three vertices");
    let mut counts = BTreeMap::new();
    counts.insert(n - 2, f(n as i64 - 2).expect("n >= 3"));
    counts.insert(n - 1, BigUint::one() << (n - 1));
    counts.insert(n, f(n as i64 - 1).expect("n >= 3"));
    RankDistribution::new(n, counts)
}

/// Rank distribution of the complete graph on `n >= 2` vertices: binomial
/// counts by the number of zero diagonal entries, with the all-zero diagonal
/// folded into rank `n-1` or `n` according to the parity of `n`.
pub fn complete_distribution(n: usize) -> RankDistribution {
    assert!(n >= 2, "the complete graph needs at least two vertices");
    let big_n = BigUint::from(n);
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
    for r in 1..=n.saturating_sub(2) {
        counts.insert(r, binomial(big_n.clone(), BigUint::from(r - 1)));
    }
    let odd_bonus = if n % 2 == 1 { BigUint::one() } else { BigUint::zero() };
    let even_bonus = if n % 2 == 0 { BigUint::one() } else { BigUint::zero() };
    counts.insert(n - 1, binomial(big_n.clone(), BigUint::from(n - 2)) + odd_bonus);
    counts.insert(n, binomial(big_n, BigUint::from(n - 1)) + even_bonus);
    RankDistribution::new(n, counts)
}

/// Evaluates the gadget counts `A` and `B` from the incidence vector `v` of
/// the off-path vertex, by summing over the candidate nullspace vectors:
/// `A = sum(2^(z(u)+1))` over `u` not orthogonal to `v`, and
/// `B = sum(2^z(u))` over `u` orthogonal to `v`.
pub fn ab_counts_nullspace(v: &F2Vector) -> Result<ABCounts> {
    if v.is_zero() {
        return Err(Error::invalid(
            "the incidence vector must be nonzero (the graph would be disconnected)",
        ));
    }
    let mut a = BigUint::zero();
    let mut b = BigUint::zero();
    for u in enumerate_u(v.len()) {
        let z = u.zero_count();
        if u.dot(v) {
            a += BigUint::one() << (z + 1);
        } else {
            b += BigUint::one() << z;
        }
    }
    Ok(ABCounts::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{ab_counts, rank_distribution, DEFAULT_CAP};
    use crate::f2::{rank_in_place, F2Matrix};
    use crate::graphs::{Gadget, GadgetDecomposition, Graph};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn f_values() {
        assert_eq!(f(-1).unwrap(), big(0));
        assert_eq!(f(0).unwrap(), big(1));
        assert_eq!(f(1).unwrap(), big(1));
        assert_eq!(f(2).unwrap(), big(3));
        assert_eq!(f(3).unwrap(), big(5));
        assert_eq!(f(4).unwrap(), big(11));
        assert_eq!(f(5).unwrap(), big(21));
        assert_eq!(f(10).unwrap(), big(683));
        assert!(f(-2).is_err());
    }

    #[test]
    fn f_recurrence() {
        for n in 2..=20i64 {
            assert_eq!(
                f(n).unwrap(),
                big(2) * f(n - 2).unwrap() + f(n - 1).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn f_identities() {
        // 2F(p-1) = F(p) + (-1)^(p+1) and the bilinear version, signed.
        for p in 0..=30i64 {
            let sign_p = if p % 2 == 0 { -1 } else { 1 }; // (-1)^(p+1)
            assert_eq!(
                BigInt::from(2) * f_int(p - 1).unwrap(),
                f_int(p).unwrap() + sign_p,
                "p={p}"
            );
            for q in 0..=30i64 {
                let sign_q = if q % 2 == 0 { -1 } else { 1 };
                let sign_pq = if (p + q) % 2 == 0 { 1 } else { -1 };
                let lhs = BigInt::from(4) * f_int(q - 1).unwrap() * f_int(p - 1).unwrap();
                let rhs = f_int(q).unwrap() * f_int(p).unwrap()
                    + BigInt::from(sign_p) * f_int(q).unwrap()
                    + BigInt::from(sign_q) * f_int(p).unwrap()
                    + sign_pq;
                assert_eq!(lhs, rhs, "p={p} q={q}");
            }
        }
    }

    /// Rank counts of all n x n matrices over GF(2) by enumeration.
    fn brute_all_matrices(n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n + 1];
        let cells = n * n;
        for bits in 0u64..(1 << cells) {
            let mut rows = vec![0u64; n];
            for (idx, row) in rows.iter_mut().enumerate() {
                *row = (bits >> (idx * n)) & ((1 << n) - 1);
            }
            counts[rank_in_place(&mut rows, n)] += 1;
        }
        counts
    }

    #[test]
    fn count_rank_all_small_oracle() {
        assert_eq!(count_rank_all(2, 1, 2).unwrap(), big(9));
        assert_eq!(count_rank_all(2, 2, 2).unwrap(), big(6));
        for n in 1..=3u32 {
            let brute = brute_all_matrices(n as usize);
            for k in 0..=n {
                assert_eq!(
                    count_rank_all(n, k, 2).unwrap(),
                    big(brute[k as usize]),
                    "n={n} k={k}"
                );
            }
        }
        assert_eq!(count_rank_all(7, 0, 5).unwrap(), big(1));
        assert!(count_rank_all(2, 3, 2).is_err());
    }

    /// Rank counts of all symmetric n x n matrices over GF(2).
    fn brute_symmetric_matrices(n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n + 1];
        let cells = n * (n + 1) / 2;
        for bits in 0u64..(1 << cells) {
            let mut m = F2Matrix::zeros(n, n);
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    let bit = (bits >> k) & 1 == 1;
                    m.set_entry(i, j, bit);
                    m.set_entry(j, i, bit);
                    k += 1;
                }
            }
            counts[m.rank()] += 1;
        }
        counts
    }

    #[test]
    fn count_rank_symmetric_small_oracle() {
        assert_eq!(count_rank_symmetric(2, 1, 2).unwrap(), big(3));
        assert_eq!(count_rank_symmetric(2, 2, 2).unwrap(), big(4));
        assert_eq!(count_rank_symmetric(9, 0, 3).unwrap(), big(1));
        for n in 1..=4u32 {
            let brute = brute_symmetric_matrices(n as usize);
            for r in 0..=n {
                assert_eq!(
                    count_rank_symmetric(n, r, 2).unwrap(),
                    big(brute[r as usize]),
                    "n={n} r={r}"
                );
            }
        }
        assert!(count_rank_symmetric(3, 4, 2).is_err());
    }

    #[test]
    fn family_distribution_values() {
        let p2 = path_distribution(2);
        assert_eq!(p2.get(1), big(1));
        assert_eq!(p2.get(2), big(3));

        let p4 = path_distribution(4);
        assert_eq!(p4.get(3), big(5));
        assert_eq!(p4.get(4), big(11));

        let p5 = path_distribution(5);
        assert_eq!(p5.get(4), big(11));
        assert_eq!(p5.get(5), big(21));

        let c4 = cycle_distribution(4);
        assert_eq!(c4.get(2), big(3));
        assert_eq!(c4.get(3), big(8));
        assert_eq!(c4.get(4), big(5));

        let c5 = cycle_distribution(5);
        assert_eq!(c5.get(3), big(5));
        assert_eq!(c5.get(4), big(16));
        assert_eq!(c5.get(5), big(11));

        assert_eq!(cycle_distribution(6).total(), big(64));

        let k3 = complete_distribution(3);
        assert_eq!(k3.get(1), big(1));
        assert_eq!(k3.get(2), big(4));
        assert_eq!(k3.get(3), big(3));

        let k4 = complete_distribution(4);
        assert_eq!(k4.get(1), big(1));
        assert_eq!(k4.get(2), big(4));
        assert_eq!(k4.get(3), big(6));
        assert_eq!(k4.get(4), big(5));

        assert_eq!(complete_distribution(5).total(), big(32));
        assert_eq!(complete_distribution(2), path_distribution(2));
    }

    #[test]
    fn family_distributions_match_enumeration_small() {
        for n in 1..=9 {
            let g = Graph::path(n).unwrap();
            assert_eq!(rank_distribution(&g, DEFAULT_CAP).unwrap(), path_distribution(n));
        }
        for n in 3..=9 {
            let g = Graph::cycle(n).unwrap();
            assert_eq!(rank_distribution(&g, DEFAULT_CAP).unwrap(), cycle_distribution(n));
        }
        for n in 2..=9 {
            let g = Graph::complete(n).unwrap();
            assert_eq!(rank_distribution(&g, DEFAULT_CAP).unwrap(), complete_distribution(n));
        }
    }

    #[test]
    fn nullspace_sum_examples() {
        // x attached to the middle of a 3-path.
        let v = F2Vector::parse("010").unwrap();
        let ab = ab_counts_nullspace(&v).unwrap();
        assert_eq!((ab.a, ab.b), (big(2), big(2)));

        // x attached to one end: the path itself, B = 0 and A = 2F(n-2).
        for n in 3..=10usize {
            let v = F2Vector::unit(n - 1, 0);
            let ab = ab_counts_nullspace(&v).unwrap();
            assert_eq!(ab.b, big(0), "n={n}");
            assert_eq!(ab.a, big(2) * f(n as i64 - 2).unwrap(), "n={n}");
        }

        // x attached to both ends: the cycle, A = 0 and B = F(n-2).
        for n in 3..=10usize {
            let mut v = F2Vector::zeros(n - 1);
            v.set(0, true);
            v.set(n - 2, true);
            let ab = ab_counts_nullspace(&v).unwrap();
            assert_eq!(ab.a, big(0), "n={n}");
            assert_eq!(ab.b, f(n as i64 - 2).unwrap(), "n={n}");
        }

        assert!(ab_counts_nullspace(&F2Vector::zeros(4)).is_err());
    }

    #[test]
    fn nullspace_sum_matches_enumeration() {
        for n in 4..=8usize {
            for vbits in 1u64..(1 << (n - 1)) {
                let v = F2Vector::from_bits(n - 1, vbits);
                let gadget = Gadget::from_neighbor_vector(&v).unwrap();
                let g = Graph::gadget(&gadget).unwrap();
                let dec = GadgetDecomposition { x: 0, path_order: (1..n).collect(), gadget };
                let brute = ab_counts(&g, &dec, DEFAULT_CAP).unwrap();
                let formula = ab_counts_nullspace(&v).unwrap();
                assert_eq!(formula, brute, "n={n} v={v}");
            }
        }
    }
}
