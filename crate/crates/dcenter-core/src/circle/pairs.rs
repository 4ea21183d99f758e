//! The angle-pair construction: pulling the widest-gap endpoints back
//! `n - 1` steps along an itinerary.
//!
//! Each pull-back step chooses an inverse branch `theta -> (theta + k)/d`,
//! and the accumulated branch digits read as a base-`d` number `X`, giving
//! `eta = (tau + X) / d^(n-1)`. Along a fixed itinerary only the steps at
//! full-length legs beyond the first leave a free choice (`d` alternatives
//! each), so an itinerary with multiplicity `w` yields exactly `d^w`
//! distinct pairs `(eta-, eta+)`.
//!
//! Only the counts and the distinctness of the pairs are pinned down by the
//! theory; the binding of a concrete digit value to a concrete branch arc
//! is conventional. Here the digits of the two endpoints agree everywhere
//! except in the first position, where they are offset by one modulo `d`,
//! which keeps `X- != X+` whenever any digits exist at all (that is, for
//! periods `n >= 3`; the composition `[2]` has an empty digit string).

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::hcomp::HComposition;

use super::{
    enumerate_itineraries, enumerate_rotation_sets, Angle, CircleError, Itinerary, RotationSet,
};

/// One admissible choice of inverse branches for a fixed itinerary and
/// rotation set, together with the resulting angle pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnglePairChoice {
    degree: u32,
    period: u32,
    /// Widest-gap endpoints the pull-back starts from.
    pub tau_minus: Angle,
    pub tau_plus: Angle,
    /// Branch digits `kappa_1 ... kappa_{n-2}`, each in `0..d`.
    pub kappa_minus: Vec<u32>,
    pub kappa_plus: Vec<u32>,
    /// `X = sum_i kappa_i d^i`, the digits read as a base-`d` number.
    pub x_minus: BigUint,
    pub x_plus: BigUint,
    /// `eta = (tau + X) / d^(n-1)` reduced modulo 1.
    pub eta_minus: Angle,
    pub eta_plus: Angle,
}

impl AnglePairChoice {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    /// The fixed points `X / (d^(n-1) - 1)` of the two affine pull-back
    /// maps `theta -> (theta + X)/d^(n-1)`.
    ///
    /// Exposed for experimentation: these angles have period dividing
    /// `n - 1` under multiplication by `d`, not `n`, so nothing downstream
    /// asserts dynamics on them.
    pub fn fixed_angles(&self) -> (Angle, Angle) {
        let modulus = BigInt::from(self.degree).pow(self.period - 1) - BigInt::from(1);
        let fix = |x: &BigUint| {
            Angle::new(BigRational::new(BigInt::from(x.clone()), modulus.clone()))
        };
        (fix(&self.x_minus), fix(&self.x_plus))
    }
}

/// Enumerates the `d^w` branch-digit choices compatible with `it` over the
/// rotation set `rs`, where `w` is the multiplicity of the underlying
/// composition, and computes the resulting angle pairs. Distinct choices
/// yield distinct pairs.
pub fn angle_pair_choices(
    it: &Itinerary,
    rs: &RotationSet,
    n: u32,
) -> Result<Vec<AnglePairChoice>, CircleError> {
    let d = it.degree();
    if d != rs.degree() || it.q() != rs.q() {
        return Err(CircleError::Domain("itinerary and rotation set must share d and q"));
    }
    if it.total() != n {
        return Err(CircleError::Domain("the period must equal the sum of the leg lengths"));
    }
    let (tau_minus, tau_plus) = rs.widest_gap()?;
    let q = it.q();

    // digit subscripts run 1..=n-2 (kappa_i multiplies d^i); the leg
    // starting at orbit time t owns subscript t - 1, stored at vector
    // index t - 2
    let digits = (n as usize).saturating_sub(2);
    let mut base = alloc::vec![0u32; digits];
    let mut free_slots: Vec<usize> = Vec::new();
    let mut time = 0u32;
    for (k, leg) in it.legs().iter().enumerate() {
        if k > 0 {
            let index = time as usize - 2;
            if leg.steps == q {
                free_slots.push(index);
            } else {
                base[index] = leg.branch;
            }
        }
        time += leg.steps;
    }

    let scale = BigRational::new(BigInt::from(1), BigInt::from(d).pow(n - 1));
    let eta = |tau: &Angle, x: &BigUint| {
        Angle::new((tau.value() + BigRational::from_integer(BigInt::from(x.clone()))) * &scale)
    };

    let mut result = Vec::new();
    let mut choice = alloc::vec![0u32; free_slots.len()];
    loop {
        let mut kappa_minus = base.clone();
        for (slot, &position) in free_slots.iter().enumerate() {
            kappa_minus[position] = choice[slot];
        }
        let mut kappa_plus = kappa_minus.clone();
        if let Some(first) = kappa_plus.first_mut() {
            *first = (*first + 1) % d;
        }
        let x_minus = digits_to_number(&kappa_minus, d);
        let x_plus = digits_to_number(&kappa_plus, d);
        let eta_minus = eta(&tau_minus, &x_minus);
        let eta_plus = eta(&tau_plus, &x_plus);
        result.push(AnglePairChoice {
            degree: d,
            period: n,
            tau_minus: tau_minus.clone(),
            tau_plus: tau_plus.clone(),
            kappa_minus,
            kappa_plus,
            x_minus,
            x_plus,
            eta_minus,
            eta_plus,
        });

        let mut slot = free_slots.len();
        loop {
            if slot == 0 {
                return Ok(result);
            }
            slot -= 1;
            if choice[slot] < d - 1 {
                choice[slot] += 1;
                for later in choice[slot + 1..].iter_mut() {
                    *later = 0;
                }
                break;
            }
        }
    }
}

/// `sum_i kappa_i d^i` with `kappa_1` multiplying `d^1`.
fn digits_to_number(kappa: &[u32], d: u32) -> BigUint {
    let mut x = BigUint::zero();
    for &digit in kappa.iter().rev() {
        x = x * d + digit;
    }
    x * d
}

/// The number of centers of period `n = sum(p)` whose critical orbit
/// follows the composition `p`, assembled multiplicatively from the three
/// enumerations: rotation sets over all admissible rotation numbers,
/// itineraries over `p`, and angle pairs per itinerary.
///
/// The factors count `phi(a_1) (d-1)`, `(d-1)^(r-1-w)`, and `d^w`, but the
/// closed formula is never consulted here; this is the dynamical side of
/// the ledger.
pub fn prop32_count(p: &HComposition, d: u32) -> Result<BigUint, CircleError> {
    if p.first_part() == 1 {
        return Err(CircleError::AllOnesComposition);
    }
    if d < 2 {
        return Err(CircleError::Domain("the dynamical count requires degree d >= 2"));
    }
    let q = p.first_part();
    let mut rotation_sets = 0u64;
    let mut sample_set: Option<RotationSet> = None;
    for numerator in 1..q {
        if num_integer::gcd(numerator, q) != 1 {
            continue;
        }
        let sets = enumerate_rotation_sets(d, numerator, q)?;
        rotation_sets += sets.len() as u64;
        if sample_set.is_none() {
            sample_set = sets.into_iter().next();
        }
    }
    let sample_set = sample_set.ok_or(CircleError::Domain("no rotation set found"))?;
    let itineraries = enumerate_itineraries(p, d)?;
    let pairs = angle_pair_choices(&itineraries[0], &sample_set, p.total())?;
    Ok(BigUint::from(rotation_sets) * BigUint::from(itineraries.len()) * BigUint::from(pairs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hcomp::term_value;
    use alloc::collections::BTreeSet;

    fn comp(parts: &[u32]) -> HComposition {
        HComposition::new(parts.to_vec()).unwrap()
    }

    fn pairs_for(parts: &[u32], d: u32) -> Vec<AnglePairChoice> {
        let p = comp(parts);
        let its = enumerate_itineraries(&p, d).unwrap();
        let rs = enumerate_rotation_sets(d, 1, p.first_part()).unwrap().remove(0);
        angle_pair_choices(&its[0], &rs, p.total()).unwrap()
    }

    #[test]
    fn choice_counts_follow_the_multiplicity() {
        assert_eq!(pairs_for(&[2, 2, 1], 3).len(), 3);
        assert_eq!(pairs_for(&[2, 1], 2).len(), 1);
        assert_eq!(pairs_for(&[2, 2], 2).len(), 2);
    }

    #[test]
    fn digit_strings_have_the_stated_shape() {
        for choice in pairs_for(&[2, 2, 1], 3) {
            assert_eq!(choice.kappa_minus.len(), 3); // n - 2
            assert!(choice.kappa_minus.iter().all(|&k| k < 3));
            assert!(choice.kappa_plus.iter().all(|&k| k < 3));
            assert_ne!(choice.x_minus, choice.x_plus);
            // X = sum kappa_i d^i, checked against a direct power loop
            let direct: BigUint = choice
                .kappa_minus
                .iter()
                .enumerate()
                .map(|(i, &k)| BigUint::from(k) * BigUint::from(3u32).pow(i as u32 + 1))
                .sum();
            assert_eq!(choice.x_minus, direct);
        }
    }

    #[test]
    fn eta_formula_is_the_stated_quotient() {
        for choice in pairs_for(&[2, 1], 2) {
            let n = choice.period();
            let expected = Angle::new(
                (choice.tau_minus.value()
                    + BigRational::from_integer(BigInt::from(choice.x_minus.clone())))
                    / BigRational::from_integer(BigInt::from(2).pow(n - 1)),
            );
            assert_eq!(choice.eta_minus, expected);
        }
    }

    #[test]
    fn distinct_choices_give_distinct_pairs() {
        for (parts, d) in [(&[3, 3, 3][..], 3u32), (&[2, 2, 1], 4), (&[2, 2], 2)] {
            let pairs = pairs_for(parts, d);
            let etas: BTreeSet<(Angle, Angle)> = pairs
                .iter()
                .map(|c| (c.eta_minus.clone(), c.eta_plus.clone()))
                .collect();
            assert_eq!(etas.len(), pairs.len());
        }
    }

    #[test]
    fn degenerate_single_full_leg_has_empty_digits() {
        let pairs = pairs_for(&[2], 2);
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].kappa_minus.is_empty());
        assert_eq!(pairs[0].x_minus, pairs[0].x_plus);
        assert_ne!(pairs[0].eta_minus, pairs[0].eta_plus);
    }

    #[test]
    fn fixed_angles_solve_the_affine_fixed_point_equation() {
        for choice in pairs_for(&[2, 1], 2) {
            let (fix_minus, _) = choice.fixed_angles();
            let n = choice.period();
            // (theta + X) / d^(n-1) = theta modulo 1
            let image = Angle::new(
                (fix_minus.value()
                    + BigRational::from_integer(BigInt::from(choice.x_minus.clone())))
                    / BigRational::from_integer(BigInt::from(2).pow(n - 1)),
            );
            assert_eq!(image, fix_minus);
        }
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let p = comp(&[2, 1]);
        let its = enumerate_itineraries(&p, 2).unwrap();
        let rs = enumerate_rotation_sets(3, 1, 2).unwrap().remove(0);
        assert!(matches!(
            angle_pair_choices(&its[0], &rs, 3),
            Err(CircleError::Domain(_))
        ));
        let rs = enumerate_rotation_sets(2, 1, 2).unwrap().remove(0);
        assert!(matches!(
            angle_pair_choices(&its[0], &rs, 4),
            Err(CircleError::Domain(_))
        ));
    }

    #[test]
    fn worked_example_counts() {
        assert_eq!(prop32_count(&comp(&[2, 2, 1]), 3).unwrap(), BigUint::from(12u32));
        assert_eq!(prop32_count(&comp(&[5]), 3).unwrap(), BigUint::from(8u32));
        assert_eq!(
            prop32_count(&comp(&[1, 1, 1, 1, 1]), 3).unwrap_err(),
            CircleError::AllOnesComposition
        );
    }

    #[test]
    fn dynamical_counts_match_the_identity_terms() {
        for n in 2..=6u32 {
            for d in 2..=3u32 {
                let mut total = BigUint::zero();
                for p in crate::hcomp::enumerate_hcompositions(n).unwrap() {
                    if p.first_part() == 1 {
                        continue;
                    }
                    let count = prop32_count(&p, d).unwrap();
                    assert_eq!(count, term_value(&p, d), "P = {p}, d = {d}");
                    total += count;
                }
                total += 1u32;
                assert_eq!(total, BigUint::from(d).pow(n - 1), "n = {n}, d = {d}");
            }
        }
    }
}
