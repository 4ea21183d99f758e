//! Compositions with maximal first part and the counting formulas attached
//! to them.
//!
//! A composition of `n` in `r` parts is an ordered sum `n = a_1 + ... + a_r`
//! of positive integers. We work with those whose first part dominates
//! (`a_1 >= a_j` for all `j`), here called H-compositions. The multiplicity
//! `w` of such a composition counts the parts beyond the first equal to
//! `a_1`. The headline identity evaluated by [`identity_check`] is
//!
//! ```text
//!   sum_{P} phi(a_1) * (d-1)^(r-w) * d^w  =  d^n - 1
//! ```
//!
//! over all H-compositions `P` of `n`. Everything here is exact: counts are
//! arbitrary-precision integers throughout.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

/// Errors of the composition layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HcompError {
    /// `n = 0` has no compositions.
    EmptyInput,
    /// The totient is undefined at 0.
    TotientOfZero,
    /// The map degree must be at least 1.
    DegreeOutOfRange,
    /// Parts failed validation when building an [`HComposition`].
    InvalidComposition(&'static str),
}

impl fmt::Display for HcompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HcompError::EmptyInput => write!(f, "n = 0 admits no compositions"),
            HcompError::TotientOfZero => write!(f, "totient is undefined at 0"),
            HcompError::DegreeOutOfRange => write!(f, "degree d must be at least 1"),
            HcompError::InvalidComposition(why) => write!(f, "invalid composition: {why}"),
        }
    }
}

impl core::error::Error for HcompError {}

/// An ordered composition of `n` whose first part is maximal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HComposition {
    parts: Vec<u32>,
    total: u32,
    omega: u32,
}

impl HComposition {
    /// Validates `parts` and builds the composition.
    pub fn new(parts: Vec<u32>) -> Result<Self, HcompError> {
        if parts.is_empty() {
            return Err(HcompError::InvalidComposition("no parts"));
        }
        if parts.iter().any(|&a| a == 0) {
            return Err(HcompError::InvalidComposition("zero part"));
        }
        let first = parts[0];
        if parts.iter().any(|&a| a > first) {
            return Err(HcompError::InvalidComposition("first part is not maximal"));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        let total = parts.iter().sum();
        let omega = parts[1..].iter().filter(|&&a| a == parts[0]).count() as u32;
        HComposition { parts, total, omega }
    }

    /// The parts `a_1 ... a_r`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The composed number `n`.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// The number of parts `r`.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// The dominant first part `a_1`.
    pub fn first_part(&self) -> u32 {
        self.parts[0]
    }

    /// The multiplicity `w`: how many parts beyond the first equal `a_1`.
    pub fn multiplicity(&self) -> u32 {
        self.omega
    }
}

impl fmt::Display for HComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.parts {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Streaming enumeration of all H-compositions of `n`, largest first.
///
/// The order is lexicographic on the parts sequence, descending, which is
/// exactly the order `n, (n-1)+1, ..., 1+1+...+1` in which the compositions
/// are conventionally listed. Errors when `n = 0`.
pub fn enumerate_hcompositions(n: u32) -> Result<HCompositions, HcompError> {
    if n == 0 {
        return Err(HcompError::EmptyInput);
    }
    Ok(HCompositions { next: Some(vec![n]) })
}

/// Iterator over H-compositions; see [`enumerate_hcompositions`].
#[derive(Debug, Clone)]
pub struct HCompositions {
    next: Option<Vec<u32>>,
}

impl Iterator for HCompositions {
    type Item = HComposition;

    fn next(&mut self) -> Option<HComposition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(HComposition::from_parts_unchecked(current))
    }
}

/// Successor in descending lexicographic order: decrement the rightmost
/// decrementable part and refill greedily with the largest admissible parts.
fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let n: u32 = parts.iter().sum();
    for j in (0..parts.len()).rev() {
        if parts[j] <= 1 {
            continue;
        }
        let v = parts[j] - 1;
        let cap = if j == 0 { v } else { parts[0] };
        let prefix_sum: u32 = parts[..j].iter().sum();
        let mut rest = n - prefix_sum - v;
        let mut out = parts[..j].to_vec();
        out.push(v);
        while rest >= cap {
            out.push(cap);
            rest -= cap;
        }
        if rest > 0 {
            out.push(rest);
        }
        return Some(out);
    }
    None
}

/// Euler's totient `phi(m)` by trial-division factorization.
pub fn totient(m: u64) -> Result<u64, HcompError> {
    if m == 0 {
        return Err(HcompError::TotientOfZero);
    }
    let mut remaining = m;
    let mut result = m;
    let mut p = 2u64;
    while p * p <= remaining {
        if remaining % p == 0 {
            result -= result / p;
            while remaining % p == 0 {
                remaining /= p;
            }
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    Ok(result)
}

/// The weight `phi(a_1) * (d-1)^(r-w) * d^w` of one composition.
///
/// Exact in arbitrary precision; `0^0 = 1` by convention. Requires `d >= 1`.
pub fn term_value(p: &HComposition, d: u32) -> BigUint {
    assert!(d >= 1, "term_value requires d >= 1");
    let r = p.part_count() as u32;
    let w = p.multiplicity();
    let phi = BigUint::from(totient(u64::from(p.first_part())).expect("part is positive"));
    phi * BigUint::from(d - 1).pow(r - w) * BigUint::from(d).pow(w)
}

/// Outcome of evaluating the identity at one `(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Sum of [`term_value`] over all H-compositions of `n`.
    pub lhs: BigUint,
    /// `d^n - 1`.
    pub rhs: BigUint,
    /// Whether the two sides agree exactly.
    pub equal: bool,
}

/// Evaluates both sides of the identity exactly.
pub fn identity_check(n: u32, d: u32) -> Result<IdentityCheck, HcompError> {
    if d == 0 {
        return Err(HcompError::DegreeOutOfRange);
    }
    let mut lhs = BigUint::zero();
    for p in enumerate_hcompositions(n)? {
        lhs += term_value(&p, d);
    }
    let rhs = BigUint::from(d).pow(n) - BigUint::one();
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}

/// Number of compositions of `n` into exactly `b` parts, each in `[1, s]`.
///
/// Boundary conventions: one empty composition of 0 into 0 parts, none of
/// `n > 0` into 0 parts. Out-of-range combinations simply count 0. Computed
/// by dynamic programming over the number of parts.
pub fn count_bounded_compositions(n: u32, b: u32, s: u32) -> BigUint {
    BoundedCompositionTable::new(s, n, b).count(n, b)
}

/// The full dynamic-programming table behind
/// [`count_bounded_compositions`], for callers that sweep many `(n, b)`
/// pairs at one part bound `s`.
#[derive(Debug, Clone)]
pub struct BoundedCompositionTable {
    /// `rows[b][t]` counts compositions of `t` into `b` parts in `[1, s]`.
    rows: Vec<Vec<BigUint>>,
}

impl BoundedCompositionTable {
    pub fn new(s: u32, max_n: u32, max_b: u32) -> Self {
        let width = max_n as usize + 1;
        let mut rows = Vec::with_capacity(max_b as usize + 1);
        let mut first = vec![BigUint::zero(); width];
        first[0] = BigUint::one();
        rows.push(first);
        for b in 1..=max_b as usize {
            let mut next = vec![BigUint::zero(); width];
            for t in 1..width {
                let lo = t.saturating_sub(s as usize);
                // parts of size 1..=min(s, t)
                let mut acc = BigUint::zero();
                for prev in lo..t {
                    if !rows[b - 1][prev].is_zero() {
                        acc += &rows[b - 1][prev];
                    }
                }
                next[t] = acc;
            }
            rows.push(next);
        }
        BoundedCompositionTable { rows }
    }

    /// `C(n, b, s)`; zero beyond the table bounds.
    pub fn count(&self, n: u32, b: u32) -> BigUint {
        self.rows
            .get(b as usize)
            .and_then(|row| row.get(n as usize))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of H-compositions of `n` with first part `m`, multiplicity `w`,
/// and `r` parts in total: `C(r-1, w) * #compositions(n-(w+1)m, r-w-1, m-1)`.
///
/// Total on all inputs; impossible parameter combinations count 0.
pub fn count_hcomps_by(m: u32, w: u32, r: u32, n: u32) -> BigUint {
    if m == 0 || r < w + 1 {
        return BigUint::zero();
    }
    let used = u64::from(w + 1) * u64::from(m);
    if used > u64::from(n) {
        return BigUint::zero();
    }
    let rest = n - (w + 1) * m;
    binomial(r - 1, w) * count_bounded_compositions(rest, r - w - 1, m - 1)
}

/// Block structure of a composition that is a shorter composition repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenormalizationData {
    /// Minimal block length `r'` (a proper divisor of `r`).
    pub r_prime: usize,
    /// Sum of the block, `n' = r' n / r`.
    pub n_prime: u32,
    /// Multiplicity of the block.
    pub w_prime: u32,
}

/// Detects whether `p` is a block of `r' < r` parts repeated `r / r'` times
/// and returns the minimal such block.
///
/// When the split exists, the bookkeeping identity
/// `w = r (w' + 1) / r' - 1` relates the multiplicities of `p` and its block.
pub fn renormalization_split(p: &HComposition) -> Option<RenormalizationData> {
    let parts = p.parts();
    let r = parts.len();
    for r_prime in 1..r {
        if r % r_prime != 0 {
            continue;
        }
        if parts.iter().enumerate().all(|(i, &a)| a == parts[i % r_prime]) {
            let block = &parts[..r_prime];
            let n_prime = block.iter().sum();
            let w_prime = block[1..].iter().filter(|&&a| a == block[0]).count() as u32;
            return Some(RenormalizationData { r_prime, n_prime, w_prime });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn comp(parts: &[u32]) -> HComposition {
        HComposition::new(parts.to_vec()).unwrap()
    }

    /// Brute-force H-composition list: split `n` at every subset of cut
    /// points, keep the sequences whose first part dominates.
    fn brute_force_hcomps(n: u32) -> Vec<Vec<u32>> {
        let mut all = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1u32;
            for pos in 0..n - 1 {
                if mask & (1 << pos) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            if parts.iter().all(|&a| a <= parts[0]) {
                all.push(parts);
            }
        }
        all
    }

    #[test]
    fn h5_matches_the_worked_example() {
        let got: Vec<Vec<u32>> = enumerate_hcompositions(5)
            .unwrap()
            .map(|p| p.parts().to_vec())
            .collect();
        let expected: Vec<Vec<u32>> = vec![
            vec![5],
            vec![4, 1],
            vec![3, 2],
            vec![3, 1, 1],
            vec![2, 2, 1],
            vec![2, 1, 2],
            vec![2, 1, 1, 1],
            vec![1, 1, 1, 1, 1],
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn h1_is_the_single_part() {
        let got: Vec<_> = enumerate_hcompositions(1).unwrap().collect();
        assert_eq!(got, vec![comp(&[1])]);
    }

    #[test]
    fn h7_count_matches_brute_force() {
        let got = enumerate_hcompositions(7).unwrap().count();
        assert_eq!(got, brute_force_hcomps(7).len());
    }

    #[test]
    fn enumeration_rejects_zero() {
        assert_eq!(enumerate_hcompositions(0).unwrap_err(), HcompError::EmptyInput);
    }

    #[test]
    fn enumeration_yields_valid_compositions_exactly_once() {
        for n in 1..=10 {
            let mut seen = alloc::collections::BTreeSet::new();
            for p in enumerate_hcompositions(n).unwrap() {
                assert_eq!(p.total(), n);
                assert!(p.parts().iter().all(|&a| a >= 1 && a <= p.first_part()));
                assert!(seen.insert(p.parts().to_vec()), "duplicate {:?}", p.parts());
            }
            assert_eq!(seen.len(), brute_force_hcomps(n).len());
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(comp(&[2, 2, 1]).multiplicity(), 1);
        assert_eq!(comp(&[5]).multiplicity(), 0);
        assert_eq!(comp(&[1, 1, 1, 1, 1]).multiplicity(), 4);
    }

    #[test]
    fn composition_validation() {
        assert!(HComposition::new(vec![]).is_err());
        assert!(HComposition::new(vec![2, 0]).is_err());
        assert!(HComposition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(5).unwrap(), 4);
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(0).unwrap_err(), HcompError::TotientOfZero);
        // direct gcd-count oracle
        for m in 1..=60u64 {
            let direct = (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64;
            assert_eq!(totient(m).unwrap(), direct, "phi({m})");
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn totient_divisor_sums() {
        for n in 1..=14u64 {
            let sum: u64 = (1..=n).filter(|m| n % m == 0).map(|m| totient(m).unwrap()).sum();
            assert_eq!(sum, n);
        }
    }

    #[test]
    fn term_value_examples() {
        assert_eq!(term_value(&comp(&[1, 1, 1, 1, 1]), 3), BigUint::from(162u32));
        assert_eq!(term_value(&comp(&[4, 1]), 3), BigUint::from(8u32));
        assert_eq!(term_value(&comp(&[5]), 1), BigUint::zero());
    }

    #[test]
    fn identity_at_the_worked_example() {
        let check = identity_check(5, 3).unwrap();
        assert_eq!(check.lhs, BigUint::from(242u32));
        assert_eq!(check.rhs, BigUint::from(242u32));
        assert!(check.equal);
        // the eight individual terms of the worked example, in order
        let terms: Vec<u32> = enumerate_hcompositions(5)
            .unwrap()
            .map(|p| u32::try_from(term_value(&p, 3)).unwrap())
            .collect();
        assert_eq!(terms, vec![8, 8, 8, 16, 12, 12, 16, 162]);
    }

    #[test]
    fn identity_small_cases() {
        for d in 1..=4 {
            let check = identity_check(1, d).unwrap();
            assert_eq!(check.lhs, BigUint::from(d - 1));
            assert!(check.equal);
        }
        let check = identity_check(12, 2).unwrap();
        assert_eq!(check.lhs, BigUint::from(4095u32));
        assert!(check.equal);
    }

    #[test]
    fn identity_vanishes_at_degree_one() {
        for n in 1..=12 {
            let check = identity_check(n, 1).unwrap();
            assert!(check.lhs.is_zero());
            assert!(check.equal);
        }
    }

    #[test]
    fn identity_rejects_bad_inputs() {
        assert_eq!(identity_check(0, 2).unwrap_err(), HcompError::EmptyInput);
        assert_eq!(identity_check(3, 0).unwrap_err(), HcompError::DegreeOutOfRange);
    }

    /// Brute-force count of compositions of `n` into `b` parts in `[1, s]`.
    fn brute_force_bounded(n: u32, b: u32, s: u32) -> u64 {
        if b == 0 {
            return u64::from(n == 0);
        }
        (1..=s.min(n))
            .map(|k| brute_force_bounded(n - k, b - 1, s))
            .sum()
    }

    #[test]
    fn bounded_composition_examples() {
        assert_eq!(count_bounded_compositions(4, 2, 3), BigUint::from(3u32));
        assert_eq!(count_bounded_compositions(0, 0, 5), BigUint::one());
        assert_eq!(count_bounded_compositions(7, 2, 3), BigUint::zero());
        assert_eq!(count_bounded_compositions(3, 0, 5), BigUint::zero());
    }

    #[test]
    fn bounded_compositions_match_brute_force() {
        for n in 0..=15 {
            for b in 0..=6 {
                for s in 1..=5 {
                    assert_eq!(
                        count_bounded_compositions(n, b, s),
                        BigUint::from(brute_force_bounded(n, b, s)),
                        "C({n},{b},{s})"
                    );
                }
            }
        }
    }

    #[test]
    fn count_by_shape_examples() {
        assert_eq!(count_hcomps_by(2, 1, 3, 5), BigUint::from(2u32));
        assert_eq!(count_hcomps_by(5, 0, 1, 5), BigUint::one());
        assert_eq!(count_hcomps_by(3, 2, 4, 5), BigUint::zero());
    }

    #[test]
    fn count_by_shape_matches_filtered_enumeration() {
        for n in 1..=12u32 {
            let all: Vec<HComposition> = enumerate_hcompositions(n).unwrap().collect();
            let mut covered = 0usize;
            for m in 1..=n {
                for w in 0..n {
                    for r in 1..=n {
                        let counted = count_hcomps_by(m, w, r, n);
                        let filtered = all
                            .iter()
                            .filter(|p| {
                                p.first_part() == m
                                    && p.multiplicity() == w
                                    && p.part_count() == r as usize
                            })
                            .count();
                        assert_eq!(counted, BigUint::from(filtered), "(m,w,r,n)=({m},{w},{r},{n})");
                        covered += filtered;
                    }
                }
            }
            assert_eq!(covered, all.len());
        }
    }

    #[test]
    fn renormalization_examples() {
        let split = renormalization_split(&comp(&[2, 1, 2, 1])).unwrap();
        assert_eq!(split, RenormalizationData { r_prime: 2, n_prime: 3, w_prime: 0 });
        assert_eq!(renormalization_split(&comp(&[2, 1, 1])), None);
        let split = renormalization_split(&comp(&[1, 1, 1])).unwrap();
        assert_eq!(split, RenormalizationData { r_prime: 1, n_prime: 1, w_prime: 0 });
    }

    #[test]
    fn renormalization_bookkeeping_sweep() {
        // w = r(w'+1)/r' - 1, n' = r'n/r, and the extracted block is minimal.
        for n in 1..=12 {
            for p in enumerate_hcompositions(n).unwrap() {
                if let Some(split) = renormalization_split(&p) {
                    let r = p.part_count();
                    assert_eq!(r % split.r_prime, 0);
                    assert_eq!(
                        u64::from(p.multiplicity()),
                        (r as u64) * u64::from(split.w_prime + 1) / (split.r_prime as u64) - 1
                    );
                    assert_eq!(
                        u64::from(split.n_prime) * (r as u64),
                        u64::from(n) * (split.r_prime as u64)
                    );
                    let block = comp(&p.parts()[..split.r_prime]);
                    assert_eq!(renormalization_split(&block), None, "block of {p} not minimal");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn identity_holds_for_random_parameters(n in 1u32..=13, d in 1u32..=5) {
            let check = identity_check(n, d).unwrap();
            prop_assert!(check.equal);
        }

        #[test]
        fn enumeration_is_strictly_descending(n in 1u32..=11) {
            let list: Vec<Vec<u32>> = enumerate_hcompositions(n)
                .unwrap()
                .map(|p| p.parts().to_vec())
                .collect();
            for pair in list.windows(2) {
                prop_assert!(pair[0] > pair[1], "{:?} !> {:?}", pair[0], pair[1]);
            }
        }
    }
}
