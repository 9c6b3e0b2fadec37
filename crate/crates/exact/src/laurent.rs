//! Laurent polynomials in one variable v over the exact rationals, and the
//! rational-function field they generate. These are the coefficient scalars
//! of the quantum-word engine; divisions like (K - K^{-1})/(v - v^{-1})
//! force genuine fractions, so the field is implemented, not just the ring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sum of coeffs[k] * v^(lo + k). Invariants: empty coeffs means zero (with
/// lo = 0); otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    lo: i64,
    coeffs: Vec<BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { lo: 0, coeffs: vec![c] }
        }
    }

    pub fn int(n: i64) -> Self {
        Laurent::constant(BigRational::from(BigInt::from(n)))
    }

    /// v^k.
    pub fn v_pow(k: i64) -> Self {
        Laurent { lo: k, coeffs: vec![BigRational::one()] }
    }

    /// c * v^k.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { lo: k, coeffs: vec![c] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient; `None` for the zero polynomial.
    pub fn lo_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Highest exponent with nonzero coefficient; `None` for the zero polynomial.
    pub fn hi_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    /// (exponent, coefficient) pairs for the nonzero coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }

    fn trim(mut lo: i64, mut coeffs: Vec<BigRational>) -> Laurent {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let strip = coeffs.iter().take_while(|c| c.is_zero()).count();
        if strip > 0 {
            coeffs.drain(..strip);
            lo += strip as i64;
        }
        if coeffs.is_empty() {
            Laurent::zero()
        } else {
            Laurent { lo, coeffs }
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize];
        for (k, c) in self.iter() {
            coeffs[(k - lo) as usize] = &coeffs[(k - lo) as usize] + c;
        }
        for (k, c) in other.iter() {
            coeffs[(k - lo) as usize] = &coeffs[(k - lo) as usize] + c;
        }
        Laurent::trim(lo, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        Laurent { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let lo = self.lo + other.lo;
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Laurent::trim(lo, coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by v^k.
    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            Laurent::zero()
        } else {
            Laurent { lo: self.lo + k, coeffs: self.coeffs.clone() }
        }
    }

    /// Ordinary-polynomial view: (shift, coefficients from degree 0).
    /// value = v^shift * sum coeffs[k] v^k.
    fn poly(&self) -> (i64, Vec<BigRational>) {
        (self.lo, self.coeffs.clone())
    }
}

impl std::fmt::Debug for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render(self))
    }
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render(self))
    }
}

fn render(l: &Laurent) -> String {
    if l.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in l.iter() {
        let body = match k {
            0 => c.to_string(),
            1 if c.is_one() => "v".to_string(),
            1 => format!("{c}*v"),
            _ if c.is_one() => format!("v^{k}"),
            _ => format!("{c}*v^{k}"),
        };
        parts.push(body);
    }
    parts.join(" + ")
}

// Ordinary-polynomial helpers over Q (coefficient vectors from degree 0,
// trailing zeros trimmed) used for gcd reduction of rational functions.

fn ptrim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn pdeg(a: &[BigRational]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn prem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = pdeg(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    while let Some(dr) = pdeg(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for k in 0..=db {
            let t = &b[k] * &f;
            r[dr - db + k] = &r[dr - db + k] - t;
        }
        r = ptrim(r);
    }
    r
}

fn pgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = pdeg(&x) {
        let lead = x[d].clone();
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

fn pdiv_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = pdeg(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = pdeg(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        q[dr - db] = f.clone();
        for k in 0..=db {
            let t = &b[k] * &f;
            r[dr - db + k] = &r[dr - db + k] - t;
        }
        r = ptrim(r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    ptrim(q)
}

/// Rational function num/den in v, kept reduced. Canonical form: den is an
/// ordinary polynomial with nonzero constant term and leading coefficient 1,
/// so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Laurent,
    den: Laurent,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        RatFunc::from(Laurent::one())
    }

    pub fn from(l: Laurent) -> Self {
        RatFunc { num: l, den: Laurent::one() }
    }

    pub fn ratio(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::reduce(num, den)
    }

    fn reduce(num: Laurent, den: Laurent) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (nlo, np) = num.poly();
        let (dlo, dp) = den.poly();
        let g = pgcd(&np, &dp);
        let (mut np, mut dp) = if pdeg(&g) == Some(0) {
            (np, dp)
        } else {
            (pdiv_exact(&np, &g), pdiv_exact(&dp, &g))
        };
        // Normalize: den monic.
        let lead = dp.last().expect("nonzero").clone();
        if !lead.is_one() {
            for c in np.iter_mut() {
                *c = &*c / &lead;
            }
            for c in dp.iter_mut() {
                *c = &*c / &lead;
            }
        }
        // Fold the v-power shift entirely into the numerator, keeping den an
        // ordinary polynomial with nonzero constant term.
        let dstrip = dp.iter().take_while(|c| c.is_zero()).count();
        let num = Laurent::trim(nlo - dlo - dstrip as i64, np);
        let den = Laurent::trim(0, dp[dstrip..].to_vec());
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` when the denominator is 1 (the value is a Laurent polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduce(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero");
        Self::reduce(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn scale_laurent(&self, l: &Laurent) -> RatFunc {
        Self::reduce(self.num.mul(l), self.den.clone())
    }
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Symmetric quantum integer [n] = (v^n - v^-n)/(v - v^-1).
pub fn quantum_int(n: i64) -> Laurent {
    if n == 0 {
        return Laurent::zero();
    }
    if n < 0 {
        return quantum_int(-n).neg();
    }
    let mut acc = Laurent::zero();
    let mut k = n - 1;
    while k >= -(n - 1) {
        acc = acc.add(&Laurent::v_pow(k));
        k -= 2;
    }
    acc
}

/// Symmetric quantum binomial, by the Pascal recursion
/// [n k] = v^(n-k) [n-1 k-1] + v^(-k) [n-1 k].
pub fn quantum_binom(n: i64, k: i64) -> Laurent {
    assert!(n >= 0, "negative upper index");
    if k < 0 || k > n {
        return Laurent::zero();
    }
    if k == 0 || k == n {
        return Laurent::one();
    }
    let a = quantum_binom(n - 1, k - 1).shift(n - k);
    let b = quantum_binom(n - 1, k).shift(-k);
    a.add(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v() -> Laurent {
        Laurent::v_pow(1)
    }

    #[test]
    fn laurent_ring_ops() {
        let a = v().add(&Laurent::v_pow(-1)); // v + v^-1
        let b = a.mul(&a); // v^2 + 2 + v^-2
        assert_eq!(b.iter().count(), 3);
        assert_eq!(b.hi_deg(), Some(2));
        assert_eq!(b.lo_deg(), Some(-2));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn trim_cancels_to_zero() {
        let a = v().sub(&v());
        assert!(a.is_zero());
        assert_eq!(a, Laurent::zero());
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_int(0).is_zero());
        assert_eq!(quantum_int(1), Laurent::one());
        assert_eq!(quantum_int(2), v().add(&Laurent::v_pow(-1)));
        // [3] = v^2 + 1 + v^-2
        let three = quantum_int(3);
        assert_eq!(three.iter().count(), 3);
        assert_eq!(quantum_int(-2), quantum_int(2).neg());
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(quantum_binom(2, 1), quantum_int(2));
        // [4 2] = [4][3]/[2][1] = (v^2+1+v^-2)(v^2+v^-2) + ... check via product identity
        let lhs = quantum_binom(4, 2).mul(&quantum_int(2)).mul(&quantum_int(1));
        let rhs = quantum_int(4).mul(&quantum_int(3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratfunc_field_ops() {
        // (v^2 - 1)/(v - 1) reduces to v + 1 ... in Laurent terms.
        let num = Laurent::v_pow(2).sub(&Laurent::one());
        let den = v().sub(&Laurent::one());
        let r = RatFunc::ratio(num, den);
        assert!(r.is_polynomial());
        assert_eq!(*r.num(), v().add(&Laurent::one()));

        // The quantum-group commutator scalar 1/(v - v^-1) round-trips.
        let s = RatFunc::ratio(Laurent::one(), v().sub(&Laurent::v_pow(-1)));
        let prod = s.mul(&RatFunc::from(v().sub(&Laurent::v_pow(-1))));
        assert_eq!(prod, RatFunc::one());
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn ratfunc_canonical_equality() {
        // Same value built two ways compares equal structurally.
        let a = RatFunc::ratio(v(), Laurent::v_pow(2).scale(&rat(3)));
        let b = RatFunc::ratio(Laurent::one().scale(&rat(1)), v().scale(&rat(3)));
        assert_eq!(a, b);
    }

    #[test]
    fn quantum_binom_symmetry() {
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(quantum_binom(n, k), quantum_binom(n, n - k));
            }
        }
    }
}
