//! Itineraries: leg sequences recording how a critical orbit returns to the
//! central sector.

use alloc::vec::Vec;

use crate::hcomp::HComposition;

use super::CircleError;

/// One leg of an itinerary: the orbit spends `steps` iterations away from
/// the central sector before returning; `branch` identifies through which
/// branch arc the leg started (0 for a central start, which happens exactly
/// when the leg has full length `q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub steps: u32,
    pub branch: u32,
}

/// The full return record of a critical orbit: legs `(a_i, b_i)` with
/// `a_1 = q`, every `a_i <= q`, and `b_i = 0` exactly when `a_i = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Itinerary {
    degree: u32,
    q: u32,
    legs: Vec<Leg>,
}

impl Itinerary {
    pub fn new(degree: u32, q: u32, legs: Vec<Leg>) -> Result<Self, CircleError> {
        if degree < 2 {
            return Err(CircleError::Domain("itineraries require degree d >= 2"));
        }
        let first = legs.first().ok_or(CircleError::Domain("an itinerary has at least one leg"))?;
        if first.steps != q {
            return Err(CircleError::Domain("the first leg must have full length q"));
        }
        for leg in &legs {
            if leg.steps == 0 || leg.steps > q {
                return Err(CircleError::Domain("leg lengths lie in 1..=q"));
            }
            if leg.steps == q && leg.branch != 0 {
                return Err(CircleError::Domain("full legs carry branch label 0"));
            }
            if leg.steps < q && !(1..degree).contains(&leg.branch) {
                return Err(CircleError::Domain("short legs carry a branch label in 1..=d-1"));
            }
        }
        Ok(Itinerary { degree, q, legs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The full leg length `q = a_1`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    /// Total number of iterations covered: the period of the orbit.
    pub fn total(&self) -> u32 {
        self.legs.iter().map(|leg| leg.steps).sum()
    }

    /// The leg lengths as a composition; its first part is maximal by the
    /// itinerary invariants.
    pub fn composition(&self) -> HComposition {
        HComposition::new(self.legs.iter().map(|leg| leg.steps).collect())
            .expect("leg lengths form an H-composition")
    }
}

/// Enumerates every itinerary whose leg lengths follow the composition `p`:
/// the first branch label is 0, labels of later full legs are forced to 0,
/// and each short leg ranges freely over the `d - 1` branch labels. The
/// result has exactly `(d-1)^(r-1-w)` entries, in lexicographic order of
/// the branch tuples.
///
/// The all-ones composition is refused: it belongs to the single center
/// `c = 0`, which has no itinerary data.
pub fn enumerate_itineraries(
    p: &HComposition,
    d: u32,
) -> Result<Vec<Itinerary>, CircleError> {
    if p.first_part() == 1 {
        return Err(CircleError::AllOnesComposition);
    }
    if d < 2 {
        return Err(CircleError::Domain("itineraries require degree d >= 2"));
    }
    let q = p.first_part();
    let parts = p.parts();
    let free: Vec<usize> = (1..parts.len()).filter(|&k| parts[k] < q).collect();

    let mut result = Vec::new();
    let mut choice = alloc::vec![1u32; free.len()];
    loop {
        let legs: Vec<Leg> = parts
            .iter()
            .enumerate()
            .map(|(k, &steps)| {
                let branch = match free.iter().position(|&f| f == k) {
                    Some(slot) => choice[slot],
                    None => 0,
                };
                Leg { steps, branch }
            })
            .collect();
        result.push(Itinerary::new(d, q, legs)?);

        // advance the branch odometer
        let mut slot = free.len();
        loop {
            if slot == 0 {
                return Ok(result);
            }
            slot -= 1;
            if choice[slot] < d - 1 {
                choice[slot] += 1;
                for later in choice[slot + 1..].iter_mut() {
                    *later = 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> HComposition {
        HComposition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn free_branches_multiply() {
        let its = enumerate_itineraries(&comp(&[2, 2, 1]), 3).unwrap();
        assert_eq!(its.len(), 2);
        assert_eq!(
            its[0].legs(),
            &[Leg { steps: 2, branch: 0 }, Leg { steps: 2, branch: 0 }, Leg { steps: 1, branch: 1 }]
        );
        assert_eq!(
            its[1].legs(),
            &[Leg { steps: 2, branch: 0 }, Leg { steps: 2, branch: 0 }, Leg { steps: 1, branch: 2 }]
        );
    }

    #[test]
    fn single_part_has_one_itinerary() {
        for n in 2..=6 {
            for d in 2..=4 {
                let its = enumerate_itineraries(&comp(&[n]), d).unwrap();
                assert_eq!(its.len(), 1);
                assert_eq!(its[0].legs(), &[Leg { steps: n, branch: 0 }]);
            }
        }
    }

    #[test]
    fn degree_two_forces_all_branches() {
        let its = enumerate_itineraries(&comp(&[2, 1]), 2).unwrap();
        assert_eq!(its.len(), 1);
        assert_eq!(its[0].legs(), &[Leg { steps: 2, branch: 0 }, Leg { steps: 1, branch: 1 }]);
    }

    #[test]
    fn all_ones_is_special_cased() {
        assert_eq!(
            enumerate_itineraries(&comp(&[1, 1, 1]), 3).unwrap_err(),
            CircleError::AllOnesComposition
        );
    }

    #[test]
    fn counts_follow_the_shape() {
        for n in 2..=8u32 {
            for d in 2..=4u32 {
                for p in crate::hcomp::enumerate_hcompositions(n).unwrap() {
                    if p.first_part() == 1 {
                        continue;
                    }
                    let its = enumerate_itineraries(&p, d).unwrap();
                    let exponent = p.part_count() as u32 - 1 - p.multiplicity();
                    assert_eq!(its.len() as u64, u64::from(d - 1).pow(exponent));
                    for it in &its {
                        assert_eq!(it.total(), n);
                        assert_eq!(it.composition(), p);
                    }
                }
            }
        }
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(Itinerary::new(2, 2, alloc::vec![Leg { steps: 1, branch: 1 }]).is_err());
        assert!(Itinerary::new(
            2,
            2,
            alloc::vec![Leg { steps: 2, branch: 1 }]
        )
        .is_err());
        assert!(Itinerary::new(
            3,
            2,
            alloc::vec![Leg { steps: 2, branch: 0 }, Leg { steps: 1, branch: 3 }]
        )
        .is_err());
    }
}
