//! Exact arithmetic kernels shared across the workbench: integer and rational
//! matrices, Laurent polynomials and rational functions in one variable, and
//! the quadratic extension Q(sqrt(q)) used when evaluating at v = sqrt(q).
//!
//! Everything here is exact; no floating point anywhere.

pub mod imat;
pub mod laurent;
pub mod qmat;
pub mod quad;

pub use imat::IMat;
pub use laurent::{Laurent, RatFunc};
pub use qmat::QMat;
pub use quad::QSqrt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// `true` iff `n` is a perfect square. Used to reject sample points where
/// sqrt(q) would be rational and the (a, b*sqrt(q)) coordinates collapse.
pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|k| k >= 0 && k * k == n)
}

/// Number of points of projective space P^{m-1} over F_q:
/// (q^m - 1)/(q - 1) = 1 + q + ... + q^{m-1}. Zero for m = 0.
/// This counts hyperplanes of an m-dimensional space containing a fixed
/// codimension-m complement, the basic tally in Hall-number formulas.
pub fn projective_points(m: usize, q: &BigInt) -> BigInt {
    let mut acc = BigInt::from(0);
    let mut pw = BigInt::from(1);
    for _ in 0..m {
        acc += &pw;
        pw *= q;
    }
    acc
}

/// Exact n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_detected() {
        assert!(is_square(0));
        assert!(is_square(1));
        assert!(is_square(4));
        assert!(is_square(9));
        assert!(is_square(1024 * 1024));
        assert!(!is_square(2));
        assert!(!is_square(8));
        assert!(!is_square(27));
        assert!(!is_square(-4));
    }

    #[test]
    fn projective_point_counts() {
        let q = BigInt::from(5);
        assert_eq!(projective_points(0, &q), BigInt::from(0));
        assert_eq!(projective_points(1, &q), BigInt::from(1));
        assert_eq!(projective_points(2, &q), BigInt::from(6));
        assert_eq!(projective_points(3, &q), BigInt::from(31));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
