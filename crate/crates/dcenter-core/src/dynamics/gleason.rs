//! Gleason polynomials: `h_0(z) = z`, `h_r(z) = h_{r-1}(z)^d + z`.
//!
//! The roots of `h_{n-1}` are exactly the parameters `c` whose critical
//! orbit under `z^d + c` returns to 0 after `n` steps, and they are all
//! simple, so there are `d^(n-1)` of them.

use super::{DynamicsError, IntPolynomial};

/// Default bound on `d^(n-1)`, the degree of the requested polynomial.
pub const DEFAULT_DEGREE_CAP: usize = 100_000;

/// The Gleason polynomial `h_{n-1}` for degree `d`: monic of degree
/// `d^(n-1)` with integer coefficients and zero constant term.
pub fn gleason_poly(d: u32, n: u32) -> Result<IntPolynomial, DynamicsError> {
    gleason_poly_capped(d, n, DEFAULT_DEGREE_CAP)
}

/// As [`gleason_poly`], with an explicit degree cap.
pub fn gleason_poly_capped(d: u32, n: u32, cap: usize) -> Result<IntPolynomial, DynamicsError> {
    if d < 2 {
        return Err(DynamicsError::Domain("Gleason polynomials require degree d >= 2"));
    }
    if n < 1 {
        return Err(DynamicsError::Domain("the period n must be at least 1"));
    }
    let degree = (0..n - 1).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(d)));
    match degree {
        Some(degree) if degree <= cap as u128 => {}
        _ => {
            return Err(DynamicsError::DegreeTooLarge { degree_exponent: n - 1, base: d, cap });
        }
    }
    let z = IntPolynomial::identity();
    let mut h = z.clone();
    for _ in 0..n - 1 {
        h = h.pow(d).add(&z);
    }
    Ok(h)
}

/// Result of dividing `h_{n-1}` by `h_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub quotient: IntPolynomial,
    /// Whether the remainder vanished identically. For `m | n` it always
    /// does: a critical orbit of period `m` also has period `n`, and the
    /// Gleason polynomials are squarefree.
    pub exact: bool,
}

/// Exact integer division of `h_{n-1}` by `h_{m-1}`; requires `m | n`.
pub fn divisibility_check(d: u32, m: u32, n: u32) -> Result<DivisibilityCheck, DynamicsError> {
    if m == 0 || n % m != 0 {
        return Err(DynamicsError::Domain("divisibility check requires m | n"));
    }
    let dividend = gleason_poly(d, n)?;
    let divisor = gleason_poly(d, m)?;
    let (quotient, remainder) = dividend.div_rem_monic(&divisor);
    Ok(DivisibilityCheck { quotient, exact: remainder.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use num_traits::Zero;

    fn coeffs(p: &IntPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_gleason_polynomials() {
        assert_eq!(coeffs(&gleason_poly(2, 2).unwrap()), [0, 1, 1]); // z^2 + z
        assert_eq!(coeffs(&gleason_poly(3, 2).unwrap()), [0, 1, 0, 1]); // z^3 + z
        assert_eq!(coeffs(&gleason_poly(2, 1).unwrap()), [0, 1]); // z
    }

    #[test]
    fn gleason_shape() {
        for (d, n) in [(2u32, 6u32), (3, 4), (4, 3)] {
            let h = gleason_poly(d, n).unwrap();
            assert_eq!(h.degree(), Some(d.pow(n - 1) as usize));
            assert!(h.is_monic());
            assert!(h.coeff(0).is_zero());
        }
    }

    /// Independent expansion oracle: multiply out
    /// `((z^2+z)^2+z)^2 + z` with a naive convolution written in place.
    #[test]
    fn degree_eight_matches_direct_expansion() {
        let naive_mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
            let mut out = alloc::vec![0i128; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut h = alloc::vec![0i128, 1]; // z
        for _ in 0..3 {
            let mut sq = naive_mul(&h, &h);
            sq[1] += 1;
            h = sq;
        }
        let got = gleason_poly(2, 4).unwrap();
        let expected: Vec<i64> = h.iter().map(|&c| c as i64).collect();
        assert_eq!(coeffs(&got), expected);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let err = gleason_poly_capped(2, 20, 1000).unwrap_err();
        assert!(matches!(err, DynamicsError::DegreeTooLarge { .. }));
        // the guard also catches exponents that overflow entirely
        assert!(matches!(
            gleason_poly(2, 200),
            Err(DynamicsError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn divisibility_examples() {
        let check = divisibility_check(2, 2, 4).unwrap();
        assert!(check.exact);
        // h_1 * quotient = h_3
        let h1 = gleason_poly(2, 2).unwrap();
        assert_eq!(h1.mul(&check.quotient), gleason_poly(2, 4).unwrap());

        for d in 2..=4 {
            for n in 1..=4 {
                let check = divisibility_check(d, 1, n).unwrap();
                assert!(check.exact, "z divides h for d={d}, n={n}");
            }
        }
        assert!(divisibility_check(3, 2, 4).unwrap().exact);
    }

    #[test]
    fn non_divisors_are_rejected() {
        assert!(matches!(divisibility_check(2, 2, 5), Err(DynamicsError::Domain(_))));
        assert!(matches!(divisibility_check(2, 0, 4), Err(DynamicsError::Domain(_))));
    }
}
