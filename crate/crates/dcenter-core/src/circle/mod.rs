//! Exact rational dynamics of the circle map `theta -> d*theta (mod 1)`.
//!
//! The submodules build up the combinatorial side of the center count:
//! rotation sets and their widest gaps, the two-level arc model standing in
//! for the analytic puzzle, itineraries of periodic angles, the pulled-back
//! angle pairs, and formal orbit portraits. All angles are exact rationals
//! with arbitrary-precision numerators and denominators; `d^q - 1`
//! overflows machine words long before the sweeps here stop being
//! interesting.

mod angle;
mod arcs;
mod itinerary;
mod pairs;
mod portrait;
mod rotation;

pub use angle::{dmap_orbit, Angle, DmapOrbit};
pub use arcs::{arc_itinerary, ArcLabel, ArcModel, LabeledArc, SectorArc};
pub use itinerary::{enumerate_itineraries, Itinerary, Leg};
pub use pairs::{angle_pair_choices, prop32_count, AnglePairChoice};
pub use portrait::{build_portrait, unlinked, OrbitPortrait, PortraitError};
pub use rotation::{enumerate_rotation_sets, RotationSet};

use core::fmt;

/// Errors of the circle-dynamics layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleError {
    /// Parameters outside an operation's domain.
    Domain(&'static str),
    /// The brute-force modulus `d^q - 1` does not fit in 64 bits.
    SearchSpaceTooLarge { degree: u32, period: u32 },
    /// An exact orbit walk exceeded its step budget before cycling.
    MaxStepsExceeded { max_steps: usize },
    /// Two complementary arcs tie for the widest gap.
    WidestGapTie,
    /// The angle lies on an arc boundary of the model.
    BoundaryAngle(Angle),
    /// The angle is not periodic under multiplication by `d`.
    NotPeriodic(Angle),
    /// The orbit of the angle never passes through a central arc, so no
    /// itinerary can be anchored.
    NoCriticalReturn(Angle),
    /// The all-ones composition belongs to the single center `c = 0` and
    /// carries no circle data.
    AllOnesComposition,
    /// Angle sets overlap where disjointness is required.
    OverlappingSets,
}

impl fmt::Display for CircleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleError::Domain(why) => write!(f, "{why}"),
            CircleError::SearchSpaceTooLarge { degree, period } => {
                write!(f, "search modulus {degree}^{period} - 1 exceeds 64 bits")
            }
            CircleError::MaxStepsExceeded { max_steps } => {
                write!(f, "no cycle within {max_steps} exact orbit steps")
            }
            CircleError::WidestGapTie => write!(f, "two complementary arcs tie for the widest gap"),
            CircleError::BoundaryAngle(angle) => {
                write!(f, "angle {angle} lies on an arc boundary")
            }
            CircleError::NotPeriodic(angle) => {
                write!(f, "angle {angle} is not periodic under multiplication by d")
            }
            CircleError::NoCriticalReturn(angle) => {
                write!(f, "the orbit of {angle} never returns through a central arc")
            }
            CircleError::AllOnesComposition => {
                write!(f, "the all-ones composition corresponds to the single center c = 0")
            }
            CircleError::OverlappingSets => write!(f, "angle sets overlap"),
        }
    }
}

impl core::error::Error for CircleError {}
