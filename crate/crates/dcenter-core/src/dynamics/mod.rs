//! Gleason polynomials, complex root censuses, and critical orbits.

mod census;
mod gleason;
mod intpoly;
mod solver;

pub use census::{
    critical_orbit, exact_period_census, find_centers, CriticalOrbit, DCenter, SolverConfig,
};
pub use gleason::{
    divisibility_check, gleason_poly, gleason_poly_capped, DivisibilityCheck, DEFAULT_DEGREE_CAP,
};
pub use intpoly::IntPolynomial;

use core::fmt;

/// Errors of the dynamics layer.
#[derive(Debug, Clone, PartialEq)]
pub enum DynamicsError {
    /// Parameters outside an operation's domain.
    Domain(&'static str),
    /// The requested polynomial degree `base^degree_exponent` exceeds the
    /// configured cap.
    DegreeTooLarge { degree_exponent: u32, base: u32, cap: usize },
    /// The Aberth sweep did not converge within its iteration budget.
    NonConvergence { iterations: u32, last_step: f64 },
    /// A non-finite value appeared while iterating.
    NumericalFailure(&'static str),
    /// A refined root's normalized residual exceeds the tolerance.
    ResidualTooLarge { index: usize, residual: f64, tolerance: f64 },
    /// Two computed roots sit closer than the separation threshold, so the
    /// census may have collapsed a cluster.
    SeparationViolation { first: usize, second: usize, distance: f64, threshold: f64 },
    /// A critical-orbit value landed between the acceptance band and the
    /// rejection floor, so the period cannot be certified.
    AmbiguousPeriod { root_index: usize, divisor: u32, value: f64 },
    /// No divisor of `n` was accepted as a period for this root.
    UnclassifiedRoot { root_index: usize },
    /// The classified census disagrees with the inclusion-exclusion
    /// oracle.
    CensusMismatch { divisor: u32, counted: u64, expected: u64 },
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::Domain(why) => write!(f, "{why}"),
            DynamicsError::DegreeTooLarge { degree_exponent, base, cap } => {
                write!(f, "polynomial degree {base}^{degree_exponent} exceeds the cap {cap}")
            }
            DynamicsError::NonConvergence { iterations, last_step } => {
                write!(f, "no convergence after {iterations} sweeps (last step {last_step:.3e})")
            }
            DynamicsError::NumericalFailure(why) => write!(f, "{why}"),
            DynamicsError::ResidualTooLarge { index, residual, tolerance } => write!(
                f,
                "root {index} has residual {residual:.3e}, above the tolerance {tolerance:.3e}"
            ),
            DynamicsError::SeparationViolation { first, second, distance, threshold } => write!(
                f,
                "roots {first} and {second} are {distance:.3e} apart, below the threshold {threshold:.3e}"
            ),
            DynamicsError::AmbiguousPeriod { root_index, divisor, value } => write!(
                f,
                "root {root_index}: |f^{divisor}(0)| = {value:.3e} falls between acceptance and rejection"
            ),
            DynamicsError::UnclassifiedRoot { root_index } => {
                write!(f, "root {root_index} was not accepted at any divisor of n")
            }
            DynamicsError::CensusMismatch { divisor, counted, expected } => write!(
                f,
                "period {divisor}: census counted {counted} centers, the divisor oracle expects {expected}"
            ),
        }
    }
}

impl core::error::Error for DynamicsError {}
