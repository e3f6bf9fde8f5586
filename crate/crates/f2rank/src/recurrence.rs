//! The gadget engine: evaluates the counts `A` and `B` for any gadget by a
//! degree-lowering recurrence, derives the signed quantities `alpha = A - B`
//! and `beta = 4B - A`, and classifies their signs by pure case analysis.
//!
//! The recurrence peels the gap vector from the left: writing `t'` for the
//! vector without its first entry and `t''` for the vector with the second
//! entry decremented,
//!
//! ```text
//! A(t) = 2 F(t0) B(t')  + 2 F(t0 - 1) A(t'')
//! B(t) = F(t0) A(t') / 2 + 2 F(t0 - 1) B(t'')
//! ```
//!
//! with the degree-1 base `A(s,t) = 2 F(s) F(t)`, `B(s,t) = 2 F(s-1) F(t-1)`
//! extended to boundary zeros through `F(-1) = 0`. When `t0 = 0` the `t''`
//! branch carries a zero coefficient and is skipped, which also keeps the
//! recursion away from an invalid decrement.

use crate::closedform::f;
use crate::enumerate::{rank_distribution, ABCounts};
use crate::error::{Error, Result};
use crate::graphs::{decompose, Gadget, Graph};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;

/// `F` with the argument known to be at least -1.
fn ff(n: i64) -> BigUint {
    f(n).expect("argument is at least -1 by construction")
}

fn ff_int(n: i64) -> BigInt {
    BigInt::from(ff(n))
}

fn halve(value: BigUint) -> BigUint {
    assert!(&value % 2u32 == BigUint::zero(), "count {value} should be even");
    value >> 1
}

fn halve_int(value: BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(&value, &BigInt::from(2));
    assert!(r.is_zero(), "value {value} should be even");
    q
}

// ============================================================================
// A/B recurrence
// ============================================================================

/// Exact `(A, B)` for a gadget via the degree-lowering recurrence.
pub fn ab_gadget(t: &Gadget) -> ABCounts {
    let mut memo = HashMap::new();
    let (a, b) = ab_recursive(t.gaps(), &mut memo);
    ABCounts::new(a, b)
}

fn ab_recursive(t: &[u32], memo: &mut HashMap<Vec<u32>, (BigUint, BigUint)>) -> (BigUint, BigUint) {
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let t0 = t[0] as i64;
    let result = if t.len() == 2 {
        let t1 = t[1] as i64;
        (2u32 * ff(t0) * ff(t1), 2u32 * ff(t0 - 1) * ff(t1 - 1))
    } else {
        let tail = &t[1..];
        let (a1, b1) = ab_recursive(tail, memo);
        let mut a = 2u32 * ff(t0) * &b1;
        let mut b = halve(ff(t0) * &a1);
        if t[0] > 0 {
            let mut decremented = tail.to_vec();
            decremented[0] -= 1;
            let (a2, b2) = ab_recursive(&decremented, memo);
            a += 2u32 * ff(t0 - 1) * a2;
            b += 2u32 * ff(t0 - 1) * b2;
        }
        (a, b)
    };
    memo.insert(t.to_vec(), result.clone());
    result
}

/// `(alpha, beta) = (A - B, 4B - A)` from the `A`/`B` recurrence.
pub fn alpha_beta(t: &Gadget) -> (BigInt, BigInt) {
    let ab = ab_gadget(t);
    (ab.alpha(), ab.beta())
}

/// `(alpha, beta)` evaluated directly by their own recurrences:
/// `alpha(t) = F(t0) beta(t') / 2 + 2 F(t0-1) alpha(t'')` and
/// `beta(t) = 2 F(t0) alpha(t') + 2 F(t0-1) beta(t'')`, from the degree-1
/// base `alpha(s,t) = 2F(s)F(t) - 2F(s-1)F(t-1)`,
/// `beta(s,t) = 8F(s-1)F(t-1) - 2F(s)F(t)`.
///
/// This is an independent route used to cross-check [`alpha_beta`].
pub fn alpha_beta_direct(t: &Gadget) -> (BigInt, BigInt) {
    let mut memo = HashMap::new();
    alpha_beta_recursive(t.gaps(), &mut memo)
}

fn alpha_beta_recursive(
    t: &[u32],
    memo: &mut HashMap<Vec<u32>, (BigInt, BigInt)>,
) -> (BigInt, BigInt) {
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let t0 = t[0] as i64;
    let result = if t.len() == 2 {
        let t1 = t[1] as i64;
        let product = 2 * ff_int(t0) * ff_int(t1);
        let deficient = 2 * ff_int(t0 - 1) * ff_int(t1 - 1);
        (&product - &deficient, 4 * deficient - product)
    } else {
        let tail = &t[1..];
        let (alpha1, beta1) = alpha_beta_recursive(tail, memo);
        let mut alpha = halve_int(ff_int(t0) * &beta1);
        let mut beta = 2 * ff_int(t0) * &alpha1;
        if t[0] > 0 {
            let mut decremented = tail.to_vec();
            decremented[0] -= 1;
            let (alpha2, beta2) = alpha_beta_recursive(&decremented, memo);
            alpha += 2 * ff_int(t0 - 1) * alpha2;
            beta += 2 * ff_int(t0 - 1) * beta2;
        }
        (alpha, beta)
    };
    memo.insert(t.to_vec(), result.clone());
    result
}

// ============================================================================
// Sign classification
// ============================================================================

/// One of the six gadget families with more representing matrices of rank
/// `n-1` than of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecapFamily {
    /// `G(0,s,t)` with `min(s,t)` even.
    ZeroST,
    /// `G(s,2,t)` with `s,t >= 1` and `min(s,t)` even.
    S2T,
    /// `G(0,s,1,t)` with `min(s,t)` odd.
    ZeroS1T,
    /// `G(s,1,1,t)` with `s,t >= 1` and `min(s,t)` even.
    S11T,
    /// `G(0,s,2,t,0)` with `min(s,t)` even.
    ZeroS2TZero,
    /// `G(0,s,1,1,t,0)` with `min(s,t)` even.
    ZeroS11TZero,
}

impl RecapFamily {
    pub const ALL: [RecapFamily; 6] = [
        RecapFamily::ZeroST,
        RecapFamily::S2T,
        RecapFamily::ZeroS1T,
        RecapFamily::S11T,
        RecapFamily::ZeroS2TZero,
        RecapFamily::ZeroS11TZero,
    ];
}

impl fmt::Display for RecapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            RecapFamily::ZeroST => "G(0,s,t) with min(s,t) even",
            RecapFamily::S2T => "G(s,2,t) with min(s,t) even",
            RecapFamily::ZeroS1T => "G(0,s,1,t) with min(s,t) odd",
            RecapFamily::S11T => "G(s,1,1,t) with min(s,t) even",
            RecapFamily::ZeroS2TZero => "G(0,s,2,t,0) with min(s,t) even",
            RecapFamily::ZeroS11TZero => "G(0,s,1,1,t,0) with min(s,t) even",
        };
        write!(f, "{text}")
    }
}

/// Sign classification of a gadget's `alpha` and `beta`, with the matched
/// family when `alpha` is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVerdict {
    pub alpha_negative: bool,
    pub beta_negative: bool,
    pub family: Option<RecapFamily>,
}

/// Decides the signs of `alpha` and `beta` by case analysis alone, without
/// any big-integer arithmetic.
pub fn sign_verdict(t: &Gadget) -> SignVerdict {
    let gaps = t.gaps();
    let alpha_negative = alpha_negative(gaps);
    SignVerdict {
        alpha_negative,
        beta_negative: beta_negative(gaps),
        family: alpha_negative.then(|| recap_family(gaps)),
    }
}

/// Whether `alpha(t) < 0`, mirroring the recurrence structure: a zero
/// boundary gap reduces `alpha` to half the `beta` of the shortened vector,
/// and the remaining interior cases are settled by parity tables.
fn alpha_negative(t: &[u32]) -> bool {
    let d = t.len() - 1;
    if d == 1 {
        // alpha(s,t) = 2F(s)F(t) - 2F(s-1)F(t-1) is never negative.
        return false;
    }
    if t[0] == 0 {
        return beta_negative(&t[1..]);
    }
    if t[d] == 0 {
        let reversed: Vec<u32> = t[..d].iter().rev().copied().collect();
        return beta_negative(&reversed);
    }
    match d {
        2 => t[1] == 2 && t[0].min(t[2]) % 2 == 0,
        3 => t[1] == 1 && t[2] == 1 && t[0].min(t[3]) % 2 == 0,
        _ => false,
    }
}

/// Whether `beta(t) < 0`; a zero boundary gap reduces `beta` to twice the
/// `alpha` of the shortened vector.
fn beta_negative(t: &[u32]) -> bool {
    let d = t.len() - 1;
    if d == 1 {
        // beta(s,t) = 8F(s-1)F(t-1) - 2F(s)F(t) < 0 iff min(s,t) is even,
        // including the boundary zeros (where beta = -2F(max) < 0).
        return t[0].min(t[1]) % 2 == 0;
    }
    if t[0] == 0 {
        return alpha_negative(&t[1..]);
    }
    if t[d] == 0 {
        let reversed: Vec<u32> = t[..d].iter().rev().copied().collect();
        return alpha_negative(&reversed);
    }
    match d {
        2 => t[1] == 1 && t[0].min(t[2]) % 2 == 1,
        _ => false,
    }
}

/// Maps an alpha-negative gap vector to its family. Callers guarantee
/// `alpha_negative(t)`.
fn recap_family(t: &[u32]) -> RecapFamily {
    let d = t.len() - 1;
    let boundary_zero = t[0] == 0 || t[d] == 0;
    match (d, boundary_zero) {
        (2, true) => RecapFamily::ZeroST,
        (2, false) => RecapFamily::S2T,
        (3, true) => RecapFamily::ZeroS1T,
        (3, false) => RecapFamily::S11T,
        (4, _) => RecapFamily::ZeroS2TZero,
        (5, _) => RecapFamily::ZeroS11TZero,
        _ => unreachable!("alpha is negative only for degrees 2 through 5"),
    }
}

// ============================================================================
// Graph classification
// ============================================================================

/// How a classification verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyMethod {
    /// Decomposed into a gadget and classified by the sign tables.
    Closed,
    /// Full rank distribution by enumeration.
    Brute,
}

impl fmt::Display for ClassifyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyMethod::Closed => write!(f, "closed"),
            ClassifyMethod::Brute => write!(f, "brute"),
        }
    }
}

/// Result of [`classify`]: is the graph represented by more matrices of rank
/// `n-1` than of rank `n`, and how was that decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub alpha_negative: bool,
    /// Present only when the graph decomposed into a gadget; `beta` has no
    /// meaning without an induced path on all but one vertex.
    pub beta_negative: Option<bool>,
    pub family: Option<RecapFamily>,
    pub gadget: Option<Gadget>,
    pub method: ClassifyMethod,
}

/// Classifies a connected graph: prefers the gadget decomposition and its
/// closed-form sign tables, and falls back to brute-force enumeration of the
/// rank distribution when the graph has no induced path on all but one
/// vertex.
pub fn classify(g: &Graph, cap: usize) -> Result<Classification> {
    if !g.is_connected() {
        return Err(Error::invalid("classification needs a connected graph"));
    }
    if g.order() >= 3 {
        if let Some(dec) = decompose(g)? {
            let verdict = sign_verdict(&dec.gadget);
            return Ok(Classification {
                alpha_negative: verdict.alpha_negative,
                beta_negative: Some(verdict.beta_negative),
                family: verdict.family,
                gadget: Some(dec.gadget),
                method: ClassifyMethod::Closed,
            });
        }
    }
    let dist = rank_distribution(g, cap)?;
    let n = g.order();
    Ok(Classification {
        alpha_negative: dist.get(n) < dist.get(n - 1),
        beta_negative: None,
        family: None,
        gadget: None,
        method: ClassifyMethod::Brute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{ab_counts, DEFAULT_CAP};
    use num_traits::Signed;

    fn gadget(t: &[u32]) -> Gadget {
        Gadget::new(t.to_vec()).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn base_case_values() {
        let ab = ab_gadget(&gadget(&[1, 1]));
        assert_eq!((ab.a, ab.b), (big(2), big(2)));

        // The path (0, n-2): B = 0 by the boundary convention.
        for n in 2..=12i64 {
            let ab = ab_gadget(&gadget(&[0, n as u32 - 2]));
            assert_eq!(ab.b, big(0));
            assert_eq!(ab.a, 2u32 * f(n - 2).unwrap());
        }
    }

    #[test]
    fn recursion_values() {
        // (0,2,2): alpha = -5 = half of beta(2,2).
        let ab = ab_gadget(&gadget(&[0, 2, 2]));
        assert_eq!((ab.a.clone(), ab.b.clone()), (big(4), big(9)));
        assert_eq!(ab.alpha(), BigInt::from(-5));

        // (0,2,0) is the 4-cycle.
        let ab = ab_gadget(&gadget(&[0, 2, 0]));
        assert_eq!((ab.a, ab.b), (big(0), big(3)));
    }

    #[test]
    fn recursion_matches_enumeration_spot_checks() {
        for t in [
            &[1u32, 1][..],
            &[0, 2],
            &[2, 2],
            &[0, 2, 2],
            &[2, 1, 2],
            &[2, 2, 2],
            &[1, 1, 1, 1],
            &[0, 1, 1, 1],
            &[0, 2, 2, 2, 0],
            &[1, 1, 2, 1, 1],
        ] {
            let t = gadget(t);
            let g = Graph::gadget(&t).unwrap();
            let dec = decompose(&g).unwrap().unwrap();
            let brute = ab_counts(&g, &dec, DEFAULT_CAP).unwrap();
            assert_eq!(ab_gadget(&t), brute, "gadget {t}");
        }
    }

    #[test]
    fn alpha_beta_values() {
        assert_eq!(alpha_beta(&gadget(&[1, 1])), (BigInt::from(0), BigInt::from(6)));
        assert_eq!(alpha_beta(&gadget(&[2, 2])), (BigInt::from(16), BigInt::from(-10)));
        assert_eq!(alpha_beta(&gadget(&[2, 2, 2])).0, BigInt::from(-7));
        // (2,1,2) has beta(1,2) > 0 on the left split, so alpha stays positive.
        assert_eq!(alpha_beta(&gadget(&[2, 1, 2])).0, BigInt::from(15));
    }

    #[test]
    fn direct_recurrence_agrees() {
        for t in [
            &[1u32, 1][..],
            &[0, 4],
            &[3, 2],
            &[0, 2, 2],
            &[2, 2, 2],
            &[1, 1, 1, 1],
            &[0, 3, 1, 2, 0],
            &[2, 1, 1, 1, 1, 2],
        ] {
            let t = gadget(t);
            assert_eq!(alpha_beta(&t), alpha_beta_direct(&t), "gadget {t}");
        }
    }

    #[test]
    fn reversal_and_padding_symmetry() {
        for t in [&[0u32, 2, 3][..], &[1, 2], &[2, 1, 1, 3], &[1, 1, 2]] {
            let t = gadget(t);
            assert_eq!(alpha_beta(&t), alpha_beta(&t.reversed()), "gadget {t}");
        }
        for t in [&[1u32, 1][..], &[2, 2], &[1, 2, 1], &[2, 1, 1, 2]] {
            let mut padded = vec![0u32];
            padded.extend_from_slice(t);
            padded.push(0);
            assert_eq!(alpha_beta(&gadget(t)), alpha_beta(&gadget(&padded)), "gadget {t:?}");
        }
    }

    #[test]
    fn sign_examples() {
        assert!(sign_verdict(&gadget(&[0, 2, 4])).alpha_negative);
        assert!(!sign_verdict(&gadget(&[1, 1, 1, 1])).alpha_negative);
        assert!(sign_verdict(&gadget(&[0, 1, 1, 1])).alpha_negative);
        assert!(sign_verdict(&gadget(&[2, 2])).beta_negative);
        assert!(sign_verdict(&gadget(&[1, 1, 1])).beta_negative);
        // Degree 5 with positive ends never has negative beta.
        assert!(!sign_verdict(&gadget(&[1, 1, 2, 1, 1, 1])).beta_negative);

        // Boundary subtlety: (0,2,1) reduces to beta(2,1) = +2, so it is not
        // negative even though its middle gap is 2.
        assert!(!sign_verdict(&gadget(&[0, 2, 1])).alpha_negative);
        // (0,1,2,0) reduces through both boundaries to alpha(2,1) >= 0.
        assert!(!sign_verdict(&gadget(&[0, 1, 2, 0])).beta_negative);
        assert_eq!(alpha_beta(&gadget(&[0, 1, 2, 0])).1, BigInt::from(2));
    }

    #[test]
    fn signs_match_exact_values_small() {
        for t in Gadget::enumerate_up_to_order(11) {
            let (alpha, beta) = alpha_beta(&t);
            let verdict = sign_verdict(&t);
            assert_eq!(verdict.alpha_negative, alpha.is_negative(), "alpha of {t}");
            assert_eq!(verdict.beta_negative, beta.is_negative(), "beta of {t}");
            assert_eq!(verdict.family.is_some(), verdict.alpha_negative, "family of {t}");
        }
    }

    #[test]
    fn family_tags() {
        assert_eq!(sign_verdict(&gadget(&[0, 2, 2])).family, Some(RecapFamily::ZeroST));
        assert_eq!(sign_verdict(&gadget(&[0, 4, 0])).family, Some(RecapFamily::ZeroST));
        assert_eq!(sign_verdict(&gadget(&[2, 2, 2])).family, Some(RecapFamily::S2T));
        assert_eq!(sign_verdict(&gadget(&[0, 1, 1, 1])).family, Some(RecapFamily::ZeroS1T));
        assert_eq!(sign_verdict(&gadget(&[2, 1, 1, 2])).family, Some(RecapFamily::S11T));
        assert_eq!(sign_verdict(&gadget(&[0, 2, 2, 2, 0])).family, Some(RecapFamily::ZeroS2TZero));
        assert_eq!(
            sign_verdict(&gadget(&[0, 2, 1, 1, 2, 0])).family,
            Some(RecapFamily::ZeroS11TZero)
        );
        assert_eq!(sign_verdict(&gadget(&[1, 1])).family, None);
    }

    #[test]
    fn classify_named_graphs() {
        let c6 = Graph::cycle(6).unwrap();
        let c = classify(&c6, DEFAULT_CAP).unwrap();
        assert!(c.alpha_negative);
        assert_eq!(c.method, ClassifyMethod::Closed);
        assert_eq!(c.family, Some(RecapFamily::ZeroST));

        let p6 = Graph::path(6).unwrap();
        let c = classify(&p6, DEFAULT_CAP).unwrap();
        assert!(!c.alpha_negative);
        assert_eq!(c.method, ClassifyMethod::Closed);

        // K5 has no induced path on 4 of its vertices.
        let k5 = Graph::complete(5).unwrap();
        let c = classify(&k5, DEFAULT_CAP).unwrap();
        assert_eq!(c.method, ClassifyMethod::Brute);
        assert!(!c.alpha_negative);
        assert_eq!(c.beta_negative, None);

        let star = crate::graphs::parse_edges("0-1,0-2,0-3,0-4").unwrap();
        let c = classify(&star, DEFAULT_CAP).unwrap();
        assert_eq!(c.method, ClassifyMethod::Brute);
    }

    #[test]
    fn classify_rejects_disconnected() {
        let g = crate::graphs::parse_edges("0-1,2-3").unwrap();
        assert!(classify(&g, DEFAULT_CAP).is_err());
    }

    #[test]
    fn classify_small_orders_fall_back_to_brute() {
        let k1 = Graph::empty(1).unwrap();
        let c = classify(&k1, DEFAULT_CAP).unwrap();
        assert!(!c.alpha_negative);
        let p2 = Graph::path(2).unwrap();
        let c = classify(&p2, DEFAULT_CAP).unwrap();
        assert!(!c.alpha_negative);
    }
}
