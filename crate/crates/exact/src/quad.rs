//! The quadratic extension Q(sqrt(q)) for a non-square integer q >= 2,
//! represented exactly as a + b*sqrt(q) with rational a, b. Hall-algebra
//! scalars live here once v is specialized to sqrt(q); non-squareness keeps
//! the (a, b) coordinates independent, which the zero tests rely on.

use crate::laurent::{Laurent, RatFunc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt {
    q: i64,
    a: BigRational,
    b: BigRational,
}

impl QSqrt {
    pub fn new(q: i64, a: BigRational, b: BigRational) -> Self {
        assert!(q >= 2, "radicand must be >= 2");
        assert!(!crate::is_square(q), "radicand must not be a perfect square");
        QSqrt { q, a, b }
    }

    pub fn zero(q: i64) -> Self {
        QSqrt::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q: i64) -> Self {
        QSqrt::new(q, BigRational::one(), BigRational::zero())
    }

    pub fn from_rational(q: i64, a: BigRational) -> Self {
        QSqrt::new(q, a, BigRational::zero())
    }

    pub fn from_int(q: i64, n: &BigInt) -> Self {
        QSqrt::from_rational(q, BigRational::from(n.clone()))
    }

    /// sqrt(q) itself, i.e. the evaluation of v.
    pub fn sqrt_q(q: i64) -> Self {
        QSqrt::new(q, BigRational::zero(), BigRational::one())
    }

    /// v^k = sqrt(q)^k for any integer k.
    pub fn v_pow(q: i64, k: i64) -> Self {
        let qr = BigRational::from(BigInt::from(q));
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let base = pow_rat(&qr, half);
        if odd {
            QSqrt::new(q, BigRational::zero(), base)
        } else {
            QSqrt::new(q, base, BigRational::zero())
        }
    }

    pub fn radicand(&self) -> i64 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &QSqrt) -> QSqrt {
        assert_eq!(self.q, other.q, "mixed radicands");
        QSqrt::new(self.q, &self.a + &other.a, &self.b + &other.b)
    }

    pub fn neg(&self) -> QSqrt {
        QSqrt::new(self.q, -&self.a, -&self.b)
    }

    pub fn sub(&self, other: &QSqrt) -> QSqrt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QSqrt) -> QSqrt {
        assert_eq!(self.q, other.q, "mixed radicands");
        let qr = BigRational::from(BigInt::from(self.q));
        let a = &self.a * &other.a + (&self.b * &other.b) * &qr;
        let b = &self.a * &other.b + &self.b * &other.a;
        QSqrt::new(self.q, a, b)
    }

    pub fn scale(&self, c: &BigRational) -> QSqrt {
        QSqrt::new(self.q, &self.a * c, &self.b * c)
    }

    /// Multiplicative inverse via the conjugate; panics on zero.
    pub fn inverse(&self) -> QSqrt {
        assert!(!self.is_zero(), "inverse of zero");
        let qr = BigRational::from(BigInt::from(self.q));
        let norm = &self.a * &self.a - (&self.b * &self.b) * &qr;
        assert!(!norm.is_zero(), "zero norm for nonzero element (q must be non-square)");
        QSqrt::new(self.q, &self.a / &norm, -&self.b / &norm)
    }

    pub fn div(&self, other: &QSqrt) -> QSqrt {
        self.mul(&other.inverse())
    }

    /// Evaluate a Laurent polynomial at v = sqrt(q).
    pub fn eval_laurent(q: i64, l: &Laurent) -> QSqrt {
        let mut acc = QSqrt::zero(q);
        for (k, c) in l.iter() {
            acc = acc.add(&QSqrt::v_pow(q, k).scale(c));
        }
        acc
    }

    /// Evaluate a rational function at v = sqrt(q); panics if the denominator
    /// vanishes there (the engine's denominators are products of
    /// (v^m - v^-m)-type factors, nonzero for q >= 2).
    pub fn eval_ratfunc(q: i64, r: &RatFunc) -> QSqrt {
        let num = Self::eval_laurent(q, r.num());
        let den = Self::eval_laurent(q, r.den());
        num.div(&den)
    }
}

fn pow_rat(x: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    let pos = x.clone();
    let base = if k >= 0 { pos } else { x.recip() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl std::fmt::Debug for QSqrt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
        }
    }
}

impl std::fmt::Display for QSqrt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn v_powers() {
        // v^2 = q, v^-2 = 1/q, v^3 = q*sqrt(q).
        let q = 5;
        assert_eq!(QSqrt::v_pow(q, 2), QSqrt::from_rational(q, rat(5)));
        assert_eq!(
            QSqrt::v_pow(q, -2),
            QSqrt::from_rational(q, BigRational::new(BigInt::from(1), BigInt::from(5)))
        );
        assert_eq!(QSqrt::v_pow(q, 3), QSqrt::new(q, rat(0), rat(5)));
        assert_eq!(QSqrt::v_pow(q, 0), QSqrt::one(q));
    }

    #[test]
    fn field_axioms_spot() {
        let q = 2;
        let x = QSqrt::new(q, rat(3), rat(1)); // 3 + sqrt(2)
        let y = QSqrt::new(q, rat(-1), rat(2)); // -1 + 2 sqrt(2)
        let prod = x.mul(&y);
        // (3 + r)(-1 + 2r) = -3 + 6r - r + 2*2 = 1 + 5r
        assert_eq!(prod, QSqrt::new(q, rat(1), rat(5)));
        assert_eq!(x.mul(&x.inverse()), QSqrt::one(q));
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn laurent_evaluation() {
        // v + v^-1 at q: sqrt(q) + 1/sqrt(q) = (q+1)/q * ... keep exact:
        // = (0, 1) + (0, 1/q) = (0, (q+1)/q) as sqrt-coordinates.
        let l = Laurent::v_pow(1).add(&Laurent::v_pow(-1));
        let x = QSqrt::eval_laurent(3, &l);
        assert_eq!(x.rational_part(), &rat(0));
        assert_eq!(
            x.radical_part(),
            &BigRational::new(BigInt::from(4), BigInt::from(3))
        );
    }

    #[test]
    fn ratfunc_evaluation() {
        // (v^2 - v^-2)/(v - v^-1) = v + v^-1.
        let num = Laurent::v_pow(2).sub(&Laurent::v_pow(-2));
        let den = Laurent::v_pow(1).sub(&Laurent::v_pow(-1));
        let r = RatFunc::ratio(num, den);
        let direct = QSqrt::eval_laurent(7, &Laurent::v_pow(1).add(&Laurent::v_pow(-1)));
        assert_eq!(QSqrt::eval_ratfunc(7, &r), direct);
    }

    #[test]
    #[should_panic(expected = "perfect square")]
    fn square_radicand_rejected() {
        let _ = QSqrt::one(9);
    }
}
