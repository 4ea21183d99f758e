//! Simultaneous root finding for the Gleason polynomials.
//!
//! The degrees reach a few hundred with clustered roots near the boundary
//! of the connectedness locus, so a simultaneous method is used: all roots
//! are iterated together with Aberth-Ehrlich corrections (Jacobi style,
//! every correction computed from the previous sweep). Each root is then
//! polished by a few Newton steps carried out in double-double arithmetic,
//! which also certifies the final residual well below the conditioning
//! floor of plain doubles.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{Float, MulAdd, Zero};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::DynamicsError;

pub(crate) type C64 = Complex<f64>;

/// Unevaluated double-double: a value represented as `hi + lo` with
/// `|lo| <= ulp(hi)/2`, giving roughly 106 bits of significand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Error-free product via fused multiply-add.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = MulAdd::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Splits a big integer into `hi + lo` with `hi` the nearest double.
    pub(crate) fn from_bigint(value: &BigInt) -> Dd {
        let hi = value.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let lo = (value - big_from_f64(hi)).to_f64().unwrap_or(0.0);
        Dd { hi, lo }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub(crate) fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub(crate) fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub(crate) fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(Dd::from_f64(q2)));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }
}

fn big_from_f64(x: f64) -> BigInt {
    <BigInt as num_traits::FromPrimitive>::from_f64(x).unwrap_or_else(BigInt::zero)
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub(crate) fn from_c64(z: C64) -> CDd {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn add(self, other: CDd) -> CDd {
        CDd { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    pub(crate) fn sub(self, other: CDd) -> CDd {
        CDd { re: self.re.sub(other.re), im: self.im.sub(other.im) }
    }

    pub(crate) fn mul(self, other: CDd) -> CDd {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        CDd { re, im }
    }

    pub(crate) fn div(self, other: CDd) -> CDd {
        let denom = other.re.mul(other.re).add(other.im.mul(other.im));
        let re = self.re.mul(other.re).add(self.im.mul(other.im)).div(denom);
        let im = self.im.mul(other.re).sub(self.re.mul(other.im)).div(denom);
        CDd { re, im }
    }

    /// The modulus as a plain double, adequate for residual reporting.
    pub(crate) fn norm(self) -> f64 {
        let n2 = self.re.mul(self.re).add(self.im.mul(self.im));
        Float::sqrt(n2.to_f64().max(0.0))
    }
}

/// Horner evaluation in double-double arithmetic.
pub(crate) fn horner_dd(coeffs: &[CDd], z: CDd) -> CDd {
    let mut acc = CDd { re: Dd::ZERO, im: Dd::ZERO };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(*c);
    }
    acc
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner value together with the magnitude scale `sum |a_k| |z|^k`; the
/// scale bounds the evaluation noise floor in double precision.
fn horner_with_scale(coeffs: &[C64], z: C64) -> (C64, f64) {
    let mut acc = C64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let abs_z = z.norm();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
        scale = scale * abs_z + c.norm();
    }
    (acc, scale)
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

pub(crate) fn derivative_dd(coeffs: &[CDd]) -> Vec<CDd> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul(CDd::from_c64(C64::new(k as f64, 0.0))))
        .collect()
}

/// All complex roots of a monic polynomial by Aberth-Ehrlich iteration.
///
/// Starting guesses sit on the circle of radius
/// `1 + max|coeff|^(1/degree)`, rotated slightly off the coordinate axes so
/// symmetric root constellations cannot trap the sweep. Iterations stop
/// when the largest relative correction falls under `step_tolerance`.
pub(crate) fn aberth_roots(
    coeffs: &[C64],
    max_iterations: u32,
    step_tolerance: f64,
) -> Result<Vec<C64>, DynamicsError> {
    let degree = coeffs.len() - 1;
    assert!(degree >= 1, "constant polynomials have no roots to find");

    let max_coeff = coeffs[..degree].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let radius = 1.0 + Float::powf(max_coeff, 1.0 / degree as f64);
    let twist = 0.41;
    let mut roots: Vec<C64> = (0..degree)
        .map(|k| {
            let theta = core::f64::consts::TAU * k as f64 / degree as f64 + twist;
            C64::new(radius * Float::cos(theta), radius * Float::sin(theta))
        })
        .collect();

    let deriv = derivative(coeffs);
    let mut corrections: Vec<C64> = alloc::vec![C64::new(0.0, 0.0); degree];
    // a root is frozen once its step is negligible or its value sits at
    // the double-precision noise floor of the evaluation
    let mut settled = alloc::vec![false; degree];
    let noise = 4.0 * f64::EPSILON;
    let mut last_worst = f64::INFINITY;
    for _ in 0..max_iterations {
        let mut worst = 0.0f64;
        for i in 0..degree {
            let z = roots[i];
            if settled[i] {
                corrections[i] = C64::new(0.0, 0.0);
                continue;
            }
            let (p, scale) = horner_with_scale(coeffs, z);
            if !p.re.is_finite() || !p.im.is_finite() {
                // the iterate overshot into overflow: pull it back toward
                // the root circle and try again next sweep
                corrections[i] = z * 0.5;
                worst = worst.max(1.0);
                continue;
            }
            if p.norm() <= noise * scale {
                settled[i] = true;
                corrections[i] = C64::new(0.0, 0.0);
                continue;
            }
            let dp = horner(&deriv, z);
            let w = if dp.is_zero() { C64::new(f64::MIN_POSITIVE, 0.0) } else { p / dp };
            let mut repulsion = C64::new(0.0, 0.0);
            for (j, other) in roots.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = z - other;
                if diff.norm_sqr() > 0.0 {
                    repulsion += diff.inv();
                }
            }
            let denom = C64::new(1.0, 0.0) - w * repulsion;
            let mut delta = w / denom;
            if !delta.re.is_finite() || !delta.im.is_finite() {
                delta = w;
            }
            // trust region: never move more than a fraction of the scale
            let ceiling = 0.3 * (1.0 + z.norm());
            let size = delta.norm();
            if size > ceiling {
                delta *= ceiling / size;
            }
            let relative = delta.norm() / (1.0 + z.norm());
            if relative <= step_tolerance {
                settled[i] = true;
            }
            corrections[i] = delta;
            worst = worst.max(relative);
        }
        for i in 0..degree {
            roots[i] -= corrections[i];
        }
        if settled.iter().all(|&s| s) {
            return Ok(roots);
        }
        last_worst = worst;
    }
    Err(DynamicsError::NonConvergence { iterations: max_iterations, last_step: last_worst })
}

/// A few Newton steps in double-double arithmetic.
pub(crate) fn newton_refine_dd(coeffs: &[CDd], deriv: &[CDd], z: C64, steps: u32) -> CDd {
    let mut x = CDd::from_c64(z);
    for _ in 0..steps {
        let p = horner_dd(coeffs, x);
        let dp = horner_dd(deriv, x);
        if dp.norm() == 0.0 {
            break;
        }
        x = x.sub(p.div(dp));
    }
    x
}

/// `|p(z)|` normalized by the magnitude scale `sum |a_k| |z|^k` of the
/// evaluation, so the bound is meaningful across wildly different
/// coefficient sizes.
pub(crate) fn normalized_residual(coeffs: &[CDd], z: CDd) -> f64 {
    let value = horner_dd(coeffs, z).norm();
    let abs_z = Float::hypot(z.re.to_f64(), z.im.to_f64());
    let mut scale = 0.0f64;
    let mut power = 1.0f64;
    for c in coeffs {
        scale += Float::hypot(c.re.to_f64(), c.im.to_f64()) * power;
        power *= abs_z;
    }
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}
