//! The verification suite: every headline claim of the library, checked at
//! full sweep sizes with pinned tolerances.
//!
//! Each check returns a [`CheckRecord`]; `verify-all` runs them all
//! (concurrently, bounded by `DCENTER_THREADS`) and the acceptance tests
//! run them one by one.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::{One, Pow};

use dcenter_core::circle::{
    build_portrait, enumerate_rotation_sets, prop32_count, Angle, PortraitError,
};
use dcenter_core::dynamics::{divisibility_check, exact_period_census, find_centers, SolverConfig};
use dcenter_core::hcomp::{
    count_bounded_compositions, enumerate_hcompositions, identity_check, renormalization_split,
    term_value,
};
use dcenter_core::render::{interior_mask, render_julia, Viewport};
use dcenter_core::series::{bounded_composition_gf, closed_form_series, g_series, lambert_series};

use crate::report::{CheckRecord, VerifyReport};

type C64 = Complex<f64>;

/// One verification check: a stable identifier and the function that runs
/// it.
pub type Check = (&'static str, fn() -> CheckRecord);

/// Every check of the suite, in report order. The two-digit prefix makes
/// the lexicographic record order match the criterion numbering.
pub fn all_checks() -> Vec<Check> {
    vec![
        ("01-identity", check_identity),
        ("02-generating-functions", check_generating_functions),
        ("03-rotation-sets", check_rotation_sets),
        ("04-count-ledger", check_count_ledger),
        ("05-gleason-census", check_gleason_census),
        ("06-renormalization", check_renormalization),
        ("07-portrait-validator", check_portrait_validator),
        ("08-render", check_render),
    ]
}

/// Runs the whole suite on up to `threads` workers and returns the records
/// in canonical order regardless of completion order.
pub fn run_verification(threads: usize) -> VerifyReport {
    let checks = all_checks();
    let worker_count = threads.clamp(1, checks.len());
    let mut slots: Vec<Option<CheckRecord>> = (0..checks.len()).map(|_| None).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        let (sender, receiver) = mpsc::channel::<(usize, CheckRecord)>();
        for _ in 0..worker_count {
            let sender = sender.clone();
            let cursor = &cursor;
            let checks = &checks;
            scope.spawn(move || loop {
                let index = cursor.fetch_add(1, Ordering::Relaxed);
                if index >= checks.len() {
                    break;
                }
                let record = (checks[index].1)();
                if sender.send((index, record)).is_err() {
                    break;
                }
            });
        }
        drop(sender);
        for (index, record) in receiver {
            slots[index] = Some(record);
        }
    });
    let mut records: Vec<CheckRecord> =
        slots.into_iter().map(|slot| slot.expect("every check reports")).collect();
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    VerifyReport::new(records)
}

struct Ledger {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ledger {
    fn new() -> Self {
        Ledger { failures: Vec::new(), notes: Vec::new() }
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < 8 {
            self.failures.push(message);
        }
    }

    fn require(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }

    fn note(&mut self, message: String) {
        self.notes.push(message);
    }

    fn into_record(
        self,
        check_id: &str,
        parameters: &str,
        expected: &str,
        started: Instant,
    ) -> CheckRecord {
        let pass = self.failures.is_empty();
        let mut actual = String::new();
        if pass {
            for (i, note) in self.notes.iter().enumerate() {
                if i > 0 {
                    actual.push_str("; ");
                }
                actual.push_str(note);
            }
        } else {
            let _ = write!(actual, "{} violation(s): ", self.failures.len());
            actual.push_str(&self.failures.join("; "));
        }
        CheckRecord {
            check_id: check_id.to_string(),
            parameters: parameters.to_string(),
            expected: expected.to_string(),
            actual,
            pass,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
}

/// Criterion 1: the identity holds exactly over the full sweep, and the
/// worked example reproduces 242 through its eight individual terms.
fn check_identity() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let mut pairs = 0u32;
    for n in 1..=18 {
        for d in 1..=6 {
            pairs += 1;
            match identity_check(n, d) {
                Ok(check) => ledger.require(check.equal, || {
                    format!("identity fails at (n,d)=({n},{d}): {} != {}", check.lhs, check.rhs)
                }),
                Err(err) => ledger.fail(format!("identity_check({n},{d}) errored: {err}")),
            }
        }
    }
    let terms: Vec<BigUint> = enumerate_hcompositions(5)
        .expect("n = 5")
        .map(|p| term_value(&p, 3))
        .collect();
    let expected_terms: Vec<BigUint> =
        [8u32, 8, 8, 16, 12, 12, 16, 162].iter().map(|&t| BigUint::from(t)).collect();
    ledger.require(terms == expected_terms, || format!("(5,3) term list is {terms:?}"));
    let total: BigUint = terms.iter().sum();
    ledger.require(total == BigUint::from(242u32), || format!("(5,3) total is {total}"));
    ledger.note(format!("{pairs} parameter pairs equal; (5,3) = 242 via 8+8+8+16+12+12+16+162"));
    ledger.into_record(
        "01-identity",
        "1 <= n <= 18, 1 <= d <= 6, exact arithmetic",
        "lhs = d^n - 1 at every pair; worked example terms match",
        started,
    )
}

/// Criterion 2: the generating-function route. `g_series` equals the
/// closed form coefficientwise, the Lambert series counts 1..200, and the
/// bounded-composition series matches the dynamic-programming counts.
fn check_generating_functions() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    for d in 1..=5u32 {
        let g = g_series(d, 30);
        let closed = closed_form_series(d, 30);
        ledger.require(g == closed, || format!("g_series({d}, 30) differs from the closed form"));
    }
    let lambert = lambert_series(200);
    for n in 1..=200usize {
        let expected = BigRational::from_integer(BigInt::from(n));
        ledger.require(lambert.coeff(n) == &expected, || {
            format!("Lambert coefficient of z^{n} is {}", lambert.coeff(n))
        });
    }
    let mut checked = 0u32;
    for b in 0..=8u32 {
        for s in 1..=8u32 {
            let gf = bounded_composition_gf(b, s, 40);
            for n in 0..=40u32 {
                checked += 1;
                let dp = BigRational::from_integer(BigInt::from(count_bounded_compositions(n, b, s)));
                let coeff = gf.coeff(n as usize);
                ledger.require(coeff == &dp, || {
                    format!("gf({b},{s}) coefficient of z^{n} = {coeff}, DP = {dp}")
                });
            }
        }
    }
    ledger.note(format!(
        "g = closed form for d <= 5 at order 30; Lambert 1..200; {checked} DP coefficients"
    ));
    ledger.into_record(
        "02-generating-functions",
        "order 30 for d <= 5; Lambert order 200; b,s <= 8, N <= 40",
        "all three series families agree exactly",
        started,
    )
}

/// Criterion 3: rotation-set censuses: exactly d - 1 sets per reduced
/// rotation number, the worked example set appears verbatim, and every
/// widest gap contains the angle 0.
fn check_rotation_sets() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let mut sweeps = 0u32;
    for d in 2..=5u32 {
        for q in 2..=7u32 {
            for p in 1..q {
                if gcd(p, q) != 1 {
                    continue;
                }
                sweeps += 1;
                let sets = match enumerate_rotation_sets(d, p, q) {
                    Ok(sets) => sets,
                    Err(err) => {
                        ledger.fail(format!("enumeration failed at (d,p,q)=({d},{p},{q}): {err}"));
                        continue;
                    }
                };
                ledger.require(sets.len() == d as usize - 1, || {
                    format!("({d},{p},{q}) found {} sets, expected {}", sets.len(), d - 1)
                });
                for (i, a) in sets.iter().enumerate() {
                    for b in &sets[i + 1..] {
                        ledger.require(
                            a.angles().iter().all(|angle| !b.contains(angle)),
                            || format!("sets overlap at ({d},{p},{q})"),
                        );
                    }
                }
                for set in &sets {
                    match set.widest_gap() {
                        Ok((lo, hi)) => {
                            let zero = Angle::zero();
                            ledger.require(zero.in_open_arc(&lo, &hi), || {
                                format!("widest gap ({lo}, {hi}) misses angle 0 at ({d},{p},{q})")
                            });
                        }
                        Err(err) => {
                            ledger.fail(format!("widest gap failed at ({d},{p},{q}): {err}"))
                        }
                    }
                }
            }
        }
    }
    let figure = enumerate_rotation_sets(3, 2, 5).expect("validated parameters");
    let expected: Vec<Angle> =
        [5u64, 14, 15, 42, 45].iter().map(|&k| Angle::from_fraction(k, 121)).collect();
    ledger.require(
        figure.iter().any(|s| s.angles() == expected.as_slice()),
        || "the (3,2,5) sweep misses {5,14,15,42,45}/121".to_string(),
    );
    ledger.note(format!("{sweeps} rotation numbers swept; worked example set found"));
    ledger.into_record(
        "03-rotation-sets",
        "d <= 5, 2 <= q <= 7, gcd(p,q) = 1",
        "d - 1 disjoint sets each; widest gaps contain 0; (3,2,5) matches",
        started,
    )
}

/// Criterion 4: the dynamical count ledger. For every composition with
/// dominant first part > 1 the multiplicatively assembled count equals the
/// identity term, and the counts plus the center c = 0 exhaust d^(n-1).
fn check_count_ledger() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let mut rows = 0u32;
    for n in 1..=8u32 {
        for d in 2..=4u32 {
            let mut total = BigUint::one();
            for p in enumerate_hcompositions(n).expect("n >= 1") {
                if p.first_part() == 1 {
                    continue;
                }
                rows += 1;
                match prop32_count(&p, d) {
                    Ok(count) => {
                        let formula = term_value(&p, d);
                        ledger.require(count == formula, || {
                            format!("({p}, d={d}): assembled {count}, formula {formula}")
                        });
                        total += count;
                    }
                    Err(err) => ledger.fail(format!("prop32_count({p}, {d}) errored: {err}")),
                }
            }
            let centers = BigUint::from(d).pow(n - 1);
            ledger.require(total == centers, || {
                format!("(n,d)=({n},{d}): ledger totals {total}, centers {centers}")
            });
        }
    }
    ledger.note(format!("{rows} ledger rows assembled from rotation/itinerary/pair counts"));
    ledger.into_record(
        "04-count-ledger",
        "n <= 8, d <= 4, every composition with first part > 1",
        "assembled counts equal the identity terms and sum (plus c=0) to d^(n-1)",
        started,
    )
}

/// Criterion 5: the Gleason censuses. Root counts, pairwise separation,
/// refined residuals, exact polynomial divisibility, and the period census
/// against the divisor oracle.
fn check_gleason_census() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let cfg = SolverConfig::default();
    let sweep: Vec<(u32, u32)> = (1..=9)
        .map(|n| (2u32, n))
        .chain((1..=6).map(|n| (3u32, n)))
        .chain((1..=5).map(|n| (4u32, n)))
        .collect();
    let mut worst_residual = 0.0f64;
    let mut tightest_gap = f64::INFINITY;
    for &(d, n) in &sweep {
        let centers = match find_centers(d, n, &cfg) {
            Ok(centers) => centers,
            Err(err) => {
                ledger.fail(format!("find_centers({d},{n}) failed: {err}"));
                continue;
            }
        };
        let expected = (d as u64).pow(n - 1);
        ledger.require(centers.len() as u64 == expected, || {
            format!("({d},{n}): {} roots, expected {expected}", centers.len())
        });
        for center in &centers {
            worst_residual = worst_residual.max(center.residual);
            ledger.require(center.residual < 1e-8, || {
                format!("({d},{n}): residual {:.3e} at {}", center.residual, center.c)
            });
            ledger.require(n % center.exact_period == 0, || {
                format!("({d},{n}): exact period {} does not divide n", center.exact_period)
            });
        }
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                let distance = (centers[i].c - centers[j].c).norm();
                tightest_gap = tightest_gap.min(distance);
                ledger.require(distance > 1e-8, || {
                    format!("({d},{n}): roots {i},{j} only {distance:.3e} apart")
                });
            }
        }
        for m in 1..=n {
            if n % m != 0 {
                continue;
            }
            match divisibility_check(d, m, n) {
                Ok(check) => ledger.require(check.exact, || {
                    format!("h_{} does not divide h_{} exactly for d={d}", m - 1, n - 1)
                }),
                Err(err) => ledger.fail(format!("divisibility_check({d},{m},{n}): {err}")),
            }
        }
        match exact_period_census(d, n, &cfg) {
            Ok(census) => {
                let total: u64 = census.values().sum();
                ledger.require(total == expected, || {
                    format!("({d},{n}): census totals {total}, expected {expected}")
                });
            }
            Err(err) => ledger.fail(format!("exact_period_census({d},{n}): {err}")),
        }
    }
    ledger.note(format!(
        "{} censuses; worst residual {:.2e}; tightest root gap {:.2e}",
        sweep.len(),
        worst_residual,
        tightest_gap
    ));
    ledger.into_record(
        "05-gleason-census",
        "(d,n) in {2}x{1..9}, {3}x{1..6}, {4}x{1..5}; residual/separation 1e-8",
        "d^(n-1) separated roots each, exact divisibility, census = divisor oracle",
        started,
    )
}

/// Criterion 6: renormalization bookkeeping on every block-periodic
/// composition with n <= 12.
fn check_renormalization() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let mut splits = 0u32;
    for n in 1..=12u32 {
        for p in enumerate_hcompositions(n).expect("n >= 1") {
            if let Some(split) = renormalization_split(&p) {
                splits += 1;
                let r = p.part_count() as u64;
                let r_prime = split.r_prime as u64;
                ledger.require(r % r_prime == 0 && r_prime < r, || {
                    format!("{p}: block length {r_prime} does not properly divide {r}")
                });
                ledger.require(
                    u64::from(p.multiplicity()) == r * u64::from(split.w_prime + 1) / r_prime - 1,
                    || format!("{p}: multiplicity bookkeeping fails"),
                );
                ledger.require(
                    u64::from(split.n_prime) * r == u64::from(n) * r_prime,
                    || format!("{p}: n' = {} but r'n/r = {}*{n}/{r}", split.n_prime, r_prime),
                );
            }
        }
    }
    ledger.note(format!("{splits} renormalizable compositions checked"));
    ledger.into_record(
        "06-renormalization",
        "every renormalizable composition with n <= 12",
        "w = r(w'+1)/r' - 1 and n' = r'n/r hold exactly",
        started,
    )
}

/// Criterion 7: the portrait validator accepts the period-3 portrait and
/// rejects the sharing configuration, naming unlinkedness.
fn check_portrait_validator() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let sixth = |k: u64| Angle::from_fraction(k, 7);
    match build_portrait(&sixth(1), &sixth(6), 2, 3) {
        Ok(portrait) => {
            let expected: Vec<Vec<Angle>> = vec![
                vec![sixth(1), sixth(6)],
                vec![sixth(2), sixth(5)],
                vec![sixth(3), sixth(4)],
            ];
            ledger.require(portrait.theta_sets() == expected.as_slice(), || {
                "the period-3 portrait has unexpected sets".to_string()
            });
        }
        Err(err) => ledger.fail(format!("{{1/7, 6/7}} rejected: {err}")),
    }
    match build_portrait(&sixth(1), &sixth(2), 2, 3) {
        Ok(_) => ledger.fail("the sharing configuration {1/7, 2/7} validated".to_string()),
        Err(PortraitError::Linked { first, second }) => {
            let message = format!("{}", PortraitError::Linked { first, second });
            ledger.require(message.contains("unlinked"), || {
                format!("rejection does not name unlinkedness: {message}")
            });
            ledger.note(format!("sharing configuration rejected: {message}"));
        }
        Err(other) => ledger.fail(format!("rejected for the wrong reason: {other}")),
    }
    ledger.into_record(
        "07-portrait-validator",
        "{1/7,6/7} at period 3; sharing configuration from {1/7,2/7}",
        "valid portrait accepted; sharing rejected naming unlinkedness",
        started,
    )
}

/// Criterion 8: the rendering smoke test. `c = 0, d = 2` yields the unit
/// disk within one pixel, and the emitted PPM bytes are identical across
/// runs.
fn check_render() -> CheckRecord {
    let started = Instant::now();
    let mut ledger = Ledger::new();
    let vp = Viewport::square(2.0, 256, 256);
    match interior_mask(C64::new(0.0, 0.0), 2, &vp) {
        Ok(mask) => {
            let step = 2.0 * vp.half_width / vp.width as f64;
            let band = step * core::f64::consts::SQRT_2;
            let mut wrong = 0u32;
            for y in 0..vp.height {
                for x in 0..vp.width {
                    let z = vp.pixel_point(x, y);
                    let inside = mask[(y * vp.width + x) as usize];
                    if z.norm() < 1.0 - band && !inside {
                        wrong += 1;
                    }
                    if z.norm() > 1.0 + band && inside {
                        wrong += 1;
                    }
                }
            }
            ledger.require(wrong == 0, || {
                format!("{wrong} pixels disagree with the unit disk beyond 1-pixel tolerance")
            });
        }
        Err(err) => ledger.fail(format!("interior_mask failed: {err}")),
    }
    let render = |_: ()| {
        render_julia(C64::new(0.0, 0.0), 2, &vp, None).map(|image| image.encode_ppm())
    };
    match (render(()), render(())) {
        (Ok(first), Ok(second)) => {
            ledger.require(first == second, || "PPM bytes differ between runs".to_string());
            ledger.require(first.starts_with(b"P6\n256 256\n255\n"), || {
                "PPM header is malformed".to_string()
            });
            ledger.note(format!("{} byte P6 stream, reproducible", first.len()));
        }
        (Err(err), _) | (_, Err(err)) => ledger.fail(format!("render failed: {err}")),
    }
    ledger.into_record(
        "08-render",
        "c = 0, d = 2, 256x256 viewport over [-2,2]^2",
        "interior mask is the unit disk within 1 pixel; bytes reproducible",
        started,
    )
}
