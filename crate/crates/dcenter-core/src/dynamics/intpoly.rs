//! Dense univariate polynomials over arbitrary-precision integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A polynomial with `BigInt` coefficients, stored densely from the
/// constant term up, with no trailing zeros (the zero polynomial has no
/// coefficients at all).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        IntPolynomial { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Coefficients from the constant term up; empty for the zero
    /// polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Integer power by repeated squaring; `pow(0)` is the constant 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = IntPolynomial { coeffs: vec![BigInt::one()] };
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

    /// Long division by a monic divisor: returns `(quotient, remainder)`
    /// with `self = divisor * quotient + remainder` and
    /// `deg(remainder) < deg(divisor)`, all over the integers.
    ///
    /// Panics if the divisor is not monic (monicity keeps every
    /// intermediate coefficient an integer).
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "division requires a monic divisor");
        let d_deg = divisor.degree().expect("monic divisor is nonzero");
        let n_deg = match self.degree() {
            Some(n) if n >= d_deg => n,
            _ => return (Self::zero(), self.clone()),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n_deg - d_deg + 1];
        for k in (0..quot.len()).rev() {
            let factor = rem[d_deg + k].clone();
            if factor.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + i] -= &factor * b;
                }
            }
            quot[k] = factor;
        }
        rem.truncate(d_deg);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" })?;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            }
            let magnitude = c.magnitude();
            match k {
                0 => write!(f, "{magnitude}")?,
                1 if magnitude.is_one() => write!(f, "z")?,
                1 => write!(f, "{magnitude}*z")?,
                _ if magnitude.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{magnitude}*z^{k}")?,
            }
            wrote = true;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn construction_trims() {
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn multiplication() {
        // (z + 1)(z - 1) = z^2 - 1
        assert_eq!(poly(&[1, 1]).mul(&poly(&[-1, 1])), poly(&[-1, 0, 1]));
        assert_eq!(poly(&[2, 3]).mul(&IntPolynomial::zero()), IntPolynomial::zero());
    }

    #[test]
    fn division_with_remainder() {
        // z^3 + 2z + 5 = (z^2 - z + 3)(z + 1) + 2... check by reconstruction
        let dividend = poly(&[5, 2, 0, 1]);
        let divisor = poly(&[1, 1]);
        let (q, r) = dividend.div_rem_monic(&divisor);
        assert_eq!(divisor.mul(&q).add(&r), dividend);
        assert!(r.degree() < divisor.degree());
    }

    #[test]
    fn exact_division_has_zero_remainder() {
        let a = poly(&[-1, 0, 1]);
        let b = poly(&[1, 1]);
        let (q, r) = a.div_rem_monic(&b);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(alloc::format!("{}", poly(&[0, 1, 1])), "z^2 + z");
        assert_eq!(alloc::format!("{}", poly(&[0, -1])), "-z");
    }
}
