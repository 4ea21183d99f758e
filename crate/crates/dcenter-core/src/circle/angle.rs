//! Exact angles on the circle `R/Z` and their orbits under `theta -> d*theta`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CircleError;

/// An exact rational angle, stored reduced in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(BigRational);

impl Angle {
    /// Reduces `value` modulo 1 into `[0, 1)`.
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        Angle(value - floor)
    }

    /// The angle `numer / denom` reduced modulo 1.
    pub fn from_fraction(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "angle denominator must be positive");
        Angle::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// Image under multiplication by `d`, modulo 1.
    pub fn map(&self, d: u32) -> Angle {
        Angle::new(&self.0 * BigRational::from_integer(BigInt::from(d)))
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_distance(&self, other: &Angle) -> BigRational {
        let diff = &other.0 - &self.0;
        if diff.is_negative() {
            diff + BigRational::one()
        } else {
            diff
        }
    }

    /// Whether the angle returns to itself under `theta -> d*theta`, which
    /// happens exactly when its denominator is coprime to `d`.
    pub fn is_periodic(&self, d: u32) -> bool {
        self.0.denom().gcd(&BigInt::from(d)).is_one()
    }

    /// True when `self` lies strictly inside the counterclockwise arc from
    /// `start` to `end`.
    pub fn in_open_arc(&self, start: &Angle, end: &Angle) -> bool {
        let to_self = start.ccw_distance(self);
        let to_end = start.ccw_distance(end);
        !to_self.is_zero() && to_self < to_end
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orbit of an angle under `theta -> d*theta (mod 1)` up to first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmapOrbit {
    /// The distinct points visited, in order, starting from the seed.
    pub orbit: Vec<Angle>,
    /// Period of the seed itself; present exactly when the seed is periodic
    /// (denominator coprime to `d`), i.e. when the preperiod is 0.
    pub period: Option<usize>,
    /// Number of steps before the orbit enters its cycle.
    pub preperiod: usize,
}

impl DmapOrbit {
    /// Length of the eventual cycle.
    pub fn cycle_length(&self) -> usize {
        self.orbit.len() - self.preperiod
    }
}

/// Iterates `theta -> d*theta (mod 1)` exactly until the orbit repeats.
///
/// Every rational angle is eventually periodic; `max_steps` only guards
/// against unexpectedly large denominators.
pub fn dmap_orbit(theta: &Angle, d: u32, max_steps: usize) -> Result<DmapOrbit, CircleError> {
    if d < 2 {
        return Err(CircleError::Domain("orbit map requires degree d >= 2"));
    }
    let mut seen: BTreeMap<Angle, usize> = BTreeMap::new();
    let mut orbit: Vec<Angle> = Vec::new();
    let mut current = theta.clone();
    loop {
        if let Some(&index) = seen.get(&current) {
            let preperiod = index;
            let period = (preperiod == 0).then(|| orbit.len());
            return Ok(DmapOrbit { orbit, period, preperiod });
        }
        if orbit.len() >= max_steps {
            return Err(CircleError::MaxStepsExceeded { max_steps });
        }
        seen.insert(current.clone(), orbit.len());
        orbit.push(current.clone());
        current = current.map(d);
    }
}
