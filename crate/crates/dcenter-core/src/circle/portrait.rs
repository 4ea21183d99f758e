//! Formal orbit portraits: finite angle sets carried around by the circle
//! map, pairwise unlinked.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::{Angle, CircleError};

/// Validation failures of [`build_portrait`], naming the violated property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PortraitError {
    /// Parameters outside the construction's domain.
    Domain(&'static str),
    /// A seed angle does not return to itself under `theta -> d*theta`.
    NotPeriodic(Angle),
    /// Multiplication by `d` collapsed the set at this index, so it is not
    /// carried bijectively.
    NotBijective { index: usize },
    /// The map does not carry the final set back onto the first.
    NotCyclic,
    /// Two of the sets are not unlinked: no pair of disjoint circular
    /// intervals separates set `first` from set `second`.
    Linked { first: usize, second: usize },
}

impl fmt::Display for PortraitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortraitError::Domain(why) => write!(f, "{why}"),
            PortraitError::NotPeriodic(angle) => {
                write!(f, "angle {angle} is not periodic under multiplication by d")
            }
            PortraitError::NotBijective { index } => {
                write!(f, "multiplication by d does not map set {index} bijectively")
            }
            PortraitError::NotCyclic => {
                write!(f, "the sets are not permuted cyclically by multiplication by d")
            }
            PortraitError::Linked { first, second } => {
                write!(f, "sets {first} and {second} are not pairwise unlinked")
            }
        }
    }
}

impl core::error::Error for PortraitError {}

/// A validated formal orbit portrait: sets `Theta_0 ... Theta_{n-1}`, each
/// finite, carried bijectively and cyclically by `theta -> d*theta`, all angles
/// periodic, and the sets pairwise unlinked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPortrait {
    sets: Vec<Vec<Angle>>,
}

impl OrbitPortrait {
    /// The angle sets in orbit order, each sorted increasingly.
    pub fn theta_sets(&self) -> &[Vec<Angle>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Whether the finite disjoint angle sets `s` and `t` are unlinked: `t`
/// fits inside a single complementary arc of `s` (equivalently, vice
/// versa). Overlapping inputs are a domain error.
pub fn unlinked(s: &[Angle], t: &[Angle]) -> Result<bool, CircleError> {
    let s_set: BTreeSet<&Angle> = s.iter().collect();
    if t.iter().any(|angle| s_set.contains(angle)) {
        return Err(CircleError::OverlappingSets);
    }
    if s_set.len() <= 1 || t.is_empty() {
        return Ok(true);
    }
    let sorted: Vec<&Angle> = s_set.into_iter().collect();
    let arc_of = |angle: &Angle| -> usize {
        let idx = sorted.partition_point(|&a| a < angle);
        if idx == 0 || idx == sorted.len() {
            sorted.len() - 1
        } else {
            idx - 1
        }
    };
    let first = arc_of(&t[0]);
    Ok(t.iter().all(|angle| arc_of(angle) == first))
}

/// Builds the portrait generated by the pair `(theta-, theta+)`: the first
/// set is the pair itself, each following set its image under
/// `theta -> d*theta`, for `n` sets. Validates every defining property and
/// reports the first violation.
pub fn build_portrait(
    theta_minus: &Angle,
    theta_plus: &Angle,
    d: u32,
    n: u32,
) -> Result<OrbitPortrait, PortraitError> {
    if d < 2 {
        return Err(PortraitError::Domain("portraits require degree d >= 2"));
    }
    if n == 0 {
        return Err(PortraitError::Domain("a portrait carries at least one set"));
    }
    for angle in [theta_minus, theta_plus] {
        if !angle.is_periodic(d) {
            return Err(PortraitError::NotPeriodic(angle.clone()));
        }
    }

    let mut first: Vec<Angle> = alloc::vec![theta_minus.clone(), theta_plus.clone()];
    first.sort();
    first.dedup();
    let size = first.len();

    let mut sets = alloc::vec![first];
    for j in 1..n as usize {
        let mut image: Vec<Angle> = sets[j - 1].iter().map(|a| a.map(d)).collect();
        image.sort();
        image.dedup();
        if image.len() != size {
            return Err(PortraitError::NotBijective { index: j - 1 });
        }
        sets.push(image);
    }
    let mut wrap: Vec<Angle> = sets[n as usize - 1].iter().map(|a| a.map(d)).collect();
    wrap.sort();
    wrap.dedup();
    if wrap.len() != size {
        return Err(PortraitError::NotBijective { index: n as usize - 1 });
    }
    if wrap != sets[0] {
        return Err(PortraitError::NotCyclic);
    }

    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            match unlinked(&sets[i], &sets[j]) {
                Ok(true) => {}
                Ok(false) | Err(CircleError::OverlappingSets) => {
                    return Err(PortraitError::Linked { first: i, second: j })
                }
                Err(_) => unreachable!("unlinked only reports overlap"),
            }
        }
    }
    Ok(OrbitPortrait { sets })
}
