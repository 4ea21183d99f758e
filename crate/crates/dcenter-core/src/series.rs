//! Truncated formal power series over exact rationals.
//!
//! This is the engine behind the generating-function route to the identity:
//! the totient Lambert series collapses to `z/(1-z)^2`, bounded compositions
//! have the generating function `(1-z)^(-b) z^b (1-z^s)^b`, and the full
//! weighted sum over compositions telescopes to `(d-1)z/((1-dz)(1-z))`.
//! Every operation is coefficientwise exact; no floating point enters.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hcomp::{totient, BoundedCompositionTable};

/// Errors of the power-series layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires a nonzero constant coefficient.
    NonUnitConstantTerm,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitConstantTerm => {
                write!(f, "cannot invert a series with zero constant term")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// A power series truncated at an explicit order, with exact rational
/// coefficients for `z^0 ... z^N`.
///
/// Binary operations on series of different orders truncate to the smaller
/// one, so a result never claims more precision than its inputs carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPowerSeries {
    coeffs: Vec<BigRational>,
}

impl FormalPowerSeries {
    /// The zero series carried through order `n`.
    pub fn zero(order: usize) -> Self {
        FormalPowerSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// The monomial `z^k` (the zero series if `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        FormalPowerSeries { coeffs }
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`; panics beyond the truncation order.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// All carried coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        FormalPowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        FormalPowerSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        FormalPowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        FormalPowerSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        FormalPowerSeries { coeffs }
    }

    /// Integer power by repeated squaring; `pow(0)` is the constant 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse of a series with nonzero constant term, via
    /// the standard convolution recurrence.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let order = self.order();
        let inv_a0 = a0.recip();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = inv_a0.clone();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || coeffs[k - j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j] * &coeffs[k - j];
            }
            coeffs[k] = -(acc * &inv_a0);
        }
        Ok(FormalPowerSeries { coeffs })
    }
}

impl fmt::Display for FormalPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "z")?,
                1 => write!(f, "{abs}*z")?,
                _ if abs.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{abs}*z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

fn rational(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `1 - c z^k` carried through `order`.
fn one_minus(c: u32, k: usize, order: usize) -> FormalPowerSeries {
    FormalPowerSeries::one(order).sub(&FormalPowerSeries::monomial(k, order).scale(&rational(c)))
}

/// The totient Lambert series `sum_{m>=1} phi(m) z^m / (1 - z^m)` truncated
/// at `order`. Its `n`-th coefficient is `sum_{m | n} phi(m) = n`, so the
/// whole series equals `z/(1-z)^2`.
pub fn lambert_series(order: usize) -> FormalPowerSeries {
    let mut acc = FormalPowerSeries::zero(order);
    for m in 1..=order {
        let geometric = one_minus(1, m, order).invert_unit().expect("constant term 1");
        let term = FormalPowerSeries::monomial(m, order)
            .mul(&geometric)
            .scale(&rational(totient(m as u64).expect("m >= 1") as u32));
        acc = acc.add(&term);
    }
    acc
}

/// Generating function `(1-z)^(-b) z^b (1-z^s)^b` of compositions into `b`
/// parts bounded by `s`, truncated at `order`.
pub fn bounded_composition_gf(b: u32, s: u32, order: usize) -> FormalPowerSeries {
    let geometric = one_minus(1, 1, order).invert_unit().expect("constant term 1");
    let z_b = FormalPowerSeries::monomial(b as usize, order);
    geometric.pow(b).mul(&z_b).mul(&one_minus(1, s as usize, order).pow(b))
}

/// The weighted composition generating function assembled from the shape
/// counts: the coefficient of `z^n` is
/// `sum_{m,w,r} C(r-1,w) C(n-(w+1)m, r-w-1, m-1) phi(m) (d-1)^(r-w) d^w`,
/// summed over first part `m`, multiplicity `w`, and length `r`.
pub fn g_series(d: u32, order: usize) -> FormalPowerSeries {
    assert!(d >= 1, "g_series requires d >= 1");
    use num_traits::Pow;
    let top = order as u32;
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut totals = vec![BigUint::zero(); order + 1];
    for m in 1..=top {
        let phi = BigUint::from(totient(u64::from(m)).expect("m >= 1"));
        // one shared table per first part: the free parts are bounded by m - 1
        let bounded = BoundedCompositionTable::new(m - 1, top, top);
        for n in m..=top {
            let mut w = 0;
            while (w + 1) * m <= n {
                let rest = n - (w + 1) * m;
                for r in (w + 1)..=(w + 1 + rest) {
                    let shape_count =
                        crate::hcomp::binomial(r - 1, w) * bounded.count(rest, r - w - 1);
                    if shape_count.is_zero() {
                        continue;
                    }
                    totals[n as usize] += shape_count
                        * &phi
                        * BigUint::from(d - 1).pow(r - w)
                        * BigUint::from(d).pow(w);
                }
                w += 1;
            }
        }
    }
    for (n, total) in totals.iter().enumerate().skip(1) {
        coeffs[n] = rational_big(total);
    }
    FormalPowerSeries { coeffs }
}

/// The same series as [`g_series`] assembled the way the telescoping proof
/// does it: for each first part `m`, the binomial sum over multiplicities
/// collapses to `(1 - d z^m)^(-r-1)` and the geometric sum over lengths to a
/// single rational factor, leaving
///
/// ```text
///   sum_m  phi(m) (d-1) z^m / (1-d z^m)
///          / (1 - (d-1) z (1-z^(m-1)) / ((1-d z^m)(1-z)))
/// ```
///
/// evaluated here with series inverses only (no symbolic simplification).
pub fn g_series_collapsed(d: u32, order: usize) -> FormalPowerSeries {
    assert!(d >= 1, "g_series_collapsed requires d >= 1");
    let mut acc = FormalPowerSeries::zero(order);
    for m in 1..=order {
        let phi = rational(totient(m as u64).expect("m >= 1") as u32);
        let inv_unit_dzm = one_minus(d, m, order).invert_unit().expect("constant term 1");
        // (d-1) z (1 - z^(m-1)) / ((1-d z^m)(1-z))
        let numerator = FormalPowerSeries::monomial(1, order)
            .scale(&rational(d - 1))
            .mul(&one_minus(1, m - 1, order));
        let denominator = one_minus(d, m, order).mul(&one_minus(1, 1, order));
        let ratio = numerator.mul(&denominator.invert_unit().expect("constant term 1"));
        let collapsed_lengths = FormalPowerSeries::one(order)
            .sub(&ratio)
            .invert_unit()
            .expect("constant term 1");
        let term = FormalPowerSeries::monomial(m, order)
            .scale(&(phi * rational(d - 1)))
            .mul(&inv_unit_dzm)
            .mul(&collapsed_lengths);
        acc = acc.add(&term);
    }
    acc
}

/// Exact expansion of `(d-1) z / ((1-dz)(1-z))`; the coefficient of `z^n`
/// is `d^n - 1`.
pub fn closed_form_series(d: u32, order: usize) -> FormalPowerSeries {
    assert!(d >= 1, "closed_form_series requires d >= 1");
    let denominator = one_minus(d, 1, order).mul(&one_minus(1, 1, order));
    FormalPowerSeries::monomial(1, order)
        .scale(&rational(d - 1))
        .mul(&denominator.invert_unit().expect("constant term 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hcomp::count_bounded_compositions;
    use num_traits::Pow;
    use proptest::prelude::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn telescoping_geometric_product() {
        let geometric = one_minus(1, 1, 40).invert_unit().unwrap();
        let product = one_minus(1, 1, 40).mul(&geometric);
        assert_eq!(product, FormalPowerSeries::one(40));
    }

    #[test]
    fn geometric_series_in_d() {
        let s = one_minus(3, 1, 20).invert_unit().unwrap();
        for n in 0..=20u32 {
            assert_eq!(s.coeff(n as usize), &rational_big(&BigUint::from(3u32).pow(n)));
        }
    }

    #[test]
    fn inversion_requires_unit_constant() {
        let z = FormalPowerSeries::monomial(1, 5);
        assert_eq!(z.invert_unit().unwrap_err(), SeriesError::NonUnitConstantTerm);
    }

    #[test]
    fn mixed_orders_truncate_down() {
        let a = FormalPowerSeries::one(10);
        let b = FormalPowerSeries::one(4);
        assert_eq!(a.add(&b).order(), 4);
        assert_eq!(a.mul(&b).order(), 4);
    }

    #[test]
    fn lambert_coefficients_count_up() {
        let s = lambert_series(60);
        assert_eq!(s.coeff(1), &int(1));
        assert_eq!(s.coeff(6), &int(6));
        for n in 1..=60 {
            assert_eq!(s.coeff(n), &int(n as i64), "coefficient of z^{n}");
        }
        // and the closed form z/(1-z)^2 agrees
        let closed = FormalPowerSeries::monomial(1, 60)
            .mul(&one_minus(1, 1, 60).pow(2).invert_unit().unwrap());
        assert_eq!(s, closed);
    }

    #[test]
    fn bounded_gf_examples() {
        let s = bounded_composition_gf(2, 3, 10);
        assert_eq!(s.coeff(4), &int(3));
        assert_eq!(bounded_composition_gf(0, 4, 8), FormalPowerSeries::one(8));
        let s = bounded_composition_gf(1, 1, 8);
        assert_eq!(s, FormalPowerSeries::monomial(1, 8));
    }

    #[test]
    fn bounded_gf_matches_dp_counts() {
        for b in 0..=5u32 {
            for s in 1..=5u32 {
                let gf = bounded_composition_gf(b, s, 20);
                for n in 0..=20u32 {
                    assert_eq!(
                        gf.coeff(n as usize),
                        &rational_big(&count_bounded_compositions(n, b, s)),
                        "(n,b,s)=({n},{b},{s})"
                    );
                }
            }
        }
    }

    #[test]
    fn g_series_reproduces_the_worked_example() {
        let g = g_series(3, 6);
        assert_eq!(g.coeff(5), &int(242));
    }

    #[test]
    fn g_series_vanishes_at_degree_one() {
        assert!(g_series(1, 12).is_zero());
        assert!(closed_form_series(1, 12).is_zero());
    }

    #[test]
    fn closed_form_coefficients_are_powers_minus_one() {
        let s = closed_form_series(2, 30);
        for n in 1..=30u32 {
            let expected = BigUint::from(2u32).pow(n) - BigUint::from(1u32);
            assert_eq!(s.coeff(n as usize), &rational_big(&expected));
        }
        let s = closed_form_series(5, 7);
        let expected = BigUint::from(5u32).pow(7u32) - BigUint::from(1u32);
        assert_eq!(s.coeff(7), &rational_big(&expected));
    }

    #[test]
    fn all_three_routes_agree() {
        for d in 1..=3 {
            let g = g_series(d, 15);
            let collapsed = g_series_collapsed(d, 15);
            let closed = closed_form_series(d, 15);
            assert_eq!(g, closed, "d = {d}");
            assert_eq!(collapsed, closed, "d = {d}");
        }
    }

    #[test]
    fn clearing_denominators_recovers_the_numerator() {
        for d in 2..=4 {
            let cleared = one_minus(1, 1, 25).mul(&one_minus(d, 1, 25)).mul(&closed_form_series(d, 25));
            let expected = FormalPowerSeries::monomial(1, 25).scale(&rational(d - 1));
            assert_eq!(cleared, expected);
        }
    }

    proptest! {
        #[test]
        fn product_matches_convolution_oracle(
            a in proptest::collection::vec(-9i64..=9, 11),
            b in proptest::collection::vec(-9i64..=9, 11),
        ) {
            let sa = FormalPowerSeries::from_coeffs(a.iter().map(|&v| int(v)).collect());
            let sb = FormalPowerSeries::from_coeffs(b.iter().map(|&v| int(v)).collect());
            let got = sa.mul(&sb);
            // direct double-loop convolution, truncated the same way
            for k in 0..=10usize {
                let mut acc = int(0);
                for i in 0..=k {
                    acc += int(a[i]) * int(b[k - i]);
                }
                prop_assert_eq!(got.coeff(k), &acc);
            }
        }

        #[test]
        fn inverse_is_a_two_sided_unit(c in proptest::collection::vec(-5i64..=5, 8), c0 in 1i64..=5) {
            let mut coeffs: Vec<BigRational> = c.iter().map(|&v| int(v)).collect();
            coeffs[0] = int(c0);
            let s = FormalPowerSeries::from_coeffs(coeffs);
            let inv = s.invert_unit().unwrap();
            prop_assert_eq!(s.mul(&inv), FormalPowerSeries::one(7));
        }
    }
}
