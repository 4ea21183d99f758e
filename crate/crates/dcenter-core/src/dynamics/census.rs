//! Center censuses: locating all roots of a Gleason polynomial and
//! classifying them by exact period.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::gleason::gleason_poly_capped;
use super::solver::{
    aberth_roots, derivative_dd, newton_refine_dd, normalized_residual, CDd, Dd, C64,
};
use super::DynamicsError;

/// Tunable tolerances and budgets of the root census.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Aberth sweep budget.
    pub max_iterations: u32,
    /// Relative step size below which the Aberth sweep is converged.
    pub step_tolerance: f64,
    /// Bound on every refined, normalized residual `|h(c)|`.
    pub residual_tolerance: f64,
    /// Minimal allowed distance between distinct roots.
    pub separation_threshold: f64,
    /// A divisor `m` is accepted as a period when `|f_c^m(0)|` falls below
    /// this band.
    pub period_band: f64,
    /// Rejected divisors must exceed `period_band * period_gap_factor`,
    /// turning the tolerance into a certificate: nothing may land between
    /// the accepted and rejected zones.
    pub period_gap_factor: f64,
    /// Bound on the polynomial degree `d^(n-1)`.
    pub degree_cap: usize,
    /// Newton polish steps per root, in double-double arithmetic.
    pub newton_steps: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iterations: 400,
            step_tolerance: 1e-13,
            residual_tolerance: 1e-8,
            separation_threshold: 1e-8,
            period_band: 1e-6,
            period_gap_factor: 1e3,
            degree_cap: super::gleason::DEFAULT_DEGREE_CAP,
            newton_steps: 5,
        }
    }
}

/// A located center: a root of the Gleason polynomial `h_{target_n - 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DCenter {
    /// The parameter, accurate to roughly double precision.
    pub c: C64,
    /// The `n` whose Gleason polynomial this is a root of.
    pub target_n: u32,
    /// Smallest divisor `m` of `target_n` with `f_c^m(0) = 0`.
    pub exact_period: u32,
    /// Normalized residual `|h(c)|` after refinement.
    pub residual: f64,
}

/// The critical orbit `z_1 ... z_n` of `f_c(z) = z^d + c` in double
/// precision, with `z_j = f_c^j(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalOrbit {
    /// Orbit points; shorter than `n` only when the orbit escaped.
    pub points: Vec<C64>,
    /// Whether the orbit left the safety radius before `n` steps.
    pub escaped: bool,
}

/// Modulus above which further iteration would risk overflow rather than
/// say anything new.
const ESCAPE_GUARD: f64 = 1e100;

/// Iterates the critical point `n` steps. Escape to large modulus is a
/// flag, not a failure.
pub fn critical_orbit(c: C64, d: u32, n: u32) -> CriticalOrbit {
    let mut points = Vec::with_capacity(n as usize);
    let mut z = C64::zero();
    for _ in 0..n {
        z = z.powu(d) + c;
        points.push(z);
        if z.norm_sqr() > ESCAPE_GUARD * ESCAPE_GUARD {
            return CriticalOrbit { points, escaped: true };
        }
    }
    CriticalOrbit { points, escaped: false }
}

/// All `d^(n-1)` roots of the Gleason polynomial `h_{n-1}`, refined,
/// validated, classified by exact period, and sorted by real part then
/// imaginary part.
pub fn find_centers(d: u32, n: u32, cfg: &SolverConfig) -> Result<Vec<DCenter>, DynamicsError> {
    let h = gleason_poly_capped(d, n, cfg.degree_cap)?;
    let coeffs_dd: Vec<CDd> =
        h.coeffs().iter().map(|c| CDd { re: Dd::from_bigint(c), im: Dd::ZERO }).collect();
    let coeffs_f64: Vec<C64> = coeffs_dd.iter().map(|c| c.to_c64()).collect();
    let degree = h.degree().expect("Gleason polynomials are nonzero");

    let rough = if degree == 1 {
        // h_0 = z
        alloc::vec![C64::zero()]
    } else {
        aberth_roots(&coeffs_f64, cfg.max_iterations, cfg.step_tolerance)?
    };

    let deriv_dd = derivative_dd(&coeffs_dd);
    let mut refined: Vec<(C64, f64)> = Vec::with_capacity(degree);
    for z in rough {
        let polished = newton_refine_dd(&coeffs_dd, &deriv_dd, z, cfg.newton_steps);
        let residual = normalized_residual(&coeffs_dd, polished);
        refined.push((polished.to_c64(), residual));
    }
    refined.sort_by(|a, b| {
        a.0.re.partial_cmp(&b.0.re).expect("finite").then(a.0.im.partial_cmp(&b.0.im).expect("finite"))
    });

    for (index, (_, residual)) in refined.iter().enumerate() {
        if !(*residual <= cfg.residual_tolerance) {
            return Err(DynamicsError::ResidualTooLarge {
                index,
                residual: *residual,
                tolerance: cfg.residual_tolerance,
            });
        }
    }
    // all-pairs separation: clusters would mean two iterates found the
    // same root and the census is short
    for i in 0..refined.len() {
        for j in i + 1..refined.len() {
            let distance = (refined[i].0 - refined[j].0).norm();
            if distance <= cfg.separation_threshold {
                return Err(DynamicsError::SeparationViolation {
                    first: i,
                    second: j,
                    distance,
                    threshold: cfg.separation_threshold,
                });
            }
        }
    }

    let mut centers = Vec::with_capacity(refined.len());
    for (index, (c, residual)) in refined.iter().enumerate() {
        let exact_period = classify_period(*c, d, n, index, cfg)?;
        centers.push(DCenter { c: *c, target_n: n, exact_period, residual: *residual });
    }
    Ok(centers)
}

/// Smallest divisor `m` of `n` with `|f_c^m(0)|` inside the acceptance
/// band; every smaller divisor must stay above the rejection floor.
fn classify_period(
    c: C64,
    d: u32,
    n: u32,
    root_index: usize,
    cfg: &SolverConfig,
) -> Result<u32, DynamicsError> {
    let orbit = critical_orbit(c, d, n);
    let reject_floor = cfg.period_band * cfg.period_gap_factor;
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        let value = match orbit.points.get(m as usize - 1) {
            Some(z) => z.norm(),
            None => return Err(DynamicsError::UnclassifiedRoot { root_index }),
        };
        if value <= cfg.period_band {
            return Ok(m);
        }
        if value < reject_floor {
            return Err(DynamicsError::AmbiguousPeriod { root_index, divisor: m, value });
        }
    }
    Err(DynamicsError::UnclassifiedRoot { root_index })
}

/// Counts the centers of each exact period among the roots of `h_{n-1}`
/// and cross-checks the census against the inclusion-exclusion oracle
/// `E(m) = sum_{t | m} mu(m/t) d^(t-1)`.
pub fn exact_period_census(
    d: u32,
    n: u32,
    cfg: &SolverConfig,
) -> Result<BTreeMap<u32, u64>, DynamicsError> {
    let centers = find_centers(d, n, cfg)?;
    let mut census: BTreeMap<u32, u64> = BTreeMap::new();
    for center in &centers {
        *census.entry(center.exact_period).or_insert(0) += 1;
    }
    let total: u64 = census.values().sum();
    debug_assert_eq!(total, centers.len() as u64);

    for (&m, &counted) in &census {
        let expected = mobius_center_count(d, m);
        if counted != expected {
            return Err(DynamicsError::CensusMismatch { divisor: m, counted, expected });
        }
    }
    // divisors of n with no centers at all must also be impossible per the
    // oracle (they never are for d >= 2, so an empty entry is a mismatch)
    for m in 1..=n {
        if n % m == 0 && !census.contains_key(&m) {
            let expected = mobius_center_count(d, m);
            if expected != 0 {
                return Err(DynamicsError::CensusMismatch { divisor: m, counted: 0, expected });
            }
        }
    }
    Ok(census)
}

/// Number of centers of exact period `m`, by inclusion-exclusion over the
/// divisor lattice.
fn mobius_center_count(d: u32, m: u32) -> u64 {
    let mut total: i128 = 0;
    for t in 1..=m {
        if m % t != 0 {
            continue;
        }
        if let Some(mu) = mobius(m / t) {
            total += i128::from(mu) * i128::from(d).pow(t - 1);
        }
    }
    u64::try_from(total).expect("center counts are non-negative")
}

/// The Moebius function; `None` encodes 0 (a squared factor).
fn mobius(mut k: u32) -> Option<i8> {
    let mut sign = 1i8;
    let mut p = 2u32;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return None;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    Some(sign)
}
