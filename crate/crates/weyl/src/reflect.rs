//! Reflections and braid orders defined directly from a symmetric Cartan
//! matrix, shared by the star quiver and the linear-quiver identities.

use crate::element::WeylElement;
use crate::WeylError;
use exact::imat::IMat;

/// Symmetric form (a, b) = a^T C b.
pub fn pairing(cartan: &IMat, a: &[i64], b: &[i64]) -> i64 {
    let cb = cartan.mul_vec(b);
    a.iter().zip(&cb).map(|(x, y)| x * y).sum()
}

/// Simple reflection at basis vertex v: alpha_u -> alpha_u - c_{vu} alpha_v.
pub fn simple_reflection_at(cartan: &IMat, v: usize) -> WeylElement {
    let n = cartan.rows();
    assert!(v < n, "vertex index out of range");
    let mut m = IMat::identity(n);
    for u in 0..n {
        m[(v, u)] -= cartan[(v, u)];
    }
    WeylElement::from_matrix(m)
}

/// Reflection mu -> mu - (mu, alpha) alpha in a real root alpha.
pub fn reflection_in_vector(cartan: &IMat, alpha: &[i64]) -> Result<WeylElement, WeylError> {
    let norm = pairing(cartan, alpha, alpha);
    if norm != 2 {
        return Err(WeylError::NotRealRoot(norm));
    }
    let n = cartan.rows();
    let calpha = cartan.mul_vec(alpha);
    let mut m = IMat::identity(n);
    for r in 0..n {
        for s in 0..n {
            m[(r, s)] -= alpha[r] * calpha[s];
        }
    }
    Ok(WeylElement::from_matrix(m))
}

/// Smallest m <= cap with (r_u r_v)^m = id.
pub fn braid_order_at(cartan: &IMat, u: usize, v: usize, cap: u32) -> Result<u32, WeylError> {
    if u == v {
        return Err(WeylError::SameVertex);
    }
    let prod = simple_reflection_at(cartan, u).compose(&simple_reflection_at(cartan, v));
    let mut acc = prod.clone();
    for m in 1..=cap {
        if acc.is_identity() {
            return Ok(m);
        }
        acc = acc.compose(&prod);
    }
    Err(WeylError::BraidCapExceeded(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::an_cartan;

    #[test]
    fn simple_reflection_basics() {
        let c = an_cartan(3);
        let r1 = simple_reflection_at(&c, 0);
        // r_1(alpha_1) = -alpha_1, r_1(alpha_2) = alpha_1 + alpha_2.
        assert_eq!(r1.apply(&[1, 0, 0]), vec![-1, 0, 0]);
        assert_eq!(r1.apply(&[0, 1, 0]), vec![1, 1, 0]);
        assert!(r1.compose(&r1).is_identity());
        assert!(r1.preserves_form(&c));
    }

    #[test]
    fn reflection_in_vector_matches_simple() {
        let c = an_cartan(4);
        for v in 0..4 {
            let mut alpha = vec![0i64; 4];
            alpha[v] = 1;
            let r = reflection_in_vector(&c, &alpha).unwrap();
            assert_eq!(r, simple_reflection_at(&c, v));
        }
        // alpha_1 + alpha_2 is a real root; s_{alpha} = s_1 s_2 s_1.
        let r = reflection_in_vector(&c, &[1, 1, 0, 0]).unwrap();
        let s1 = simple_reflection_at(&c, 0);
        let s2 = simple_reflection_at(&c, 1);
        assert_eq!(r, s1.compose(&s2).compose(&s1));
        assert_eq!(r, s2.compose(&s1).compose(&s2));
    }

    #[test]
    fn rejects_isotropic_vector() {
        // Affine A_1 Cartan: delta = alpha_0 + alpha_1 has self-pairing 0.
        let c = IMat::from_rows(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(
            reflection_in_vector(&c, &[1, 1]),
            Err(WeylError::NotRealRoot(0))
        );
    }

    #[test]
    fn braid_orders() {
        let c = an_cartan(3);
        assert_eq!(braid_order_at(&c, 0, 2, 6), Ok(2));
        assert_eq!(braid_order_at(&c, 0, 1, 6), Ok(3));
        assert_eq!(braid_order_at(&c, 1, 1, 6), Err(WeylError::SameVertex));
        // Affine A_1: infinite order, cap exceeded.
        let aff = IMat::from_rows(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(braid_order_at(&aff, 0, 1, 6), Err(WeylError::BraidCapExceeded(6)));
    }
}
