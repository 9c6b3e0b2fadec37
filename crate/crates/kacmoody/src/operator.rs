//! Exact linear operators on a built algebra: nilpotent exp(ad), extension
//! of Chevalley-generator images along the bracket construction of the
//! basis, and diagonal sign characters. The automorphism flag is only set
//! after bracket preservation has been checked on basis pairs.

use crate::algebra::{BasisVector, KMAlgebra, LieElement, Mode};
use crate::KacmoodyError;
use exact::qmat::QMat;
use num_rational::BigRational;
use num_traits::Zero;

impl std::fmt::Debug for LieOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieOperator")
            .field("dim", &self.mat.rows())
            .field("automorphism", &self.automorphism)
            .finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieOperator {
    mat: QMat,
    automorphism: bool,
}

impl LieOperator {
    pub fn identity(n: usize) -> LieOperator {
        LieOperator { mat: QMat::identity(n), automorphism: true }
    }

    pub(crate) fn from_matrix(mat: QMat, automorphism: bool) -> LieOperator {
        LieOperator { mat, automorphism }
    }

    pub fn matrix(&self) -> &QMat {
        &self.mat
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (j, c) in x.coords() {
            for i in 0..self.mat.rows() {
                let entry = &self.mat[(i, *j)];
                if !entry.is_zero() {
                    out.add_term(i, &(entry * c));
                }
            }
        }
        out
    }

    pub fn apply_basis(&self, j: usize) -> LieElement {
        self.apply(&LieElement::unit(j))
    }

    /// Composition self after other: (self.compose(other))(x) = self(other(x)).
    pub fn compose(&self, other: &LieOperator) -> LieOperator {
        LieOperator {
            mat: self.mat.mul(&other.mat),
            automorphism: self.automorphism && other.automorphism,
        }
    }

    pub fn inverse(&self) -> Option<LieOperator> {
        Some(LieOperator { mat: self.mat.invert()?, automorphism: self.automorphism })
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

pub(crate) fn operator_from_images(images: &[LieElement], automorphism: bool) -> LieOperator {
    let n = images.len();
    let mut mat = QMat::zeros(n, n);
    for (j, img) in images.iter().enumerate() {
        for (i, c) in img.coords() {
            mat[(*i, j)] = c.clone();
        }
    }
    LieOperator { mat, automorphism }
}

/// Checks [T x, T y] = T [x, y] on basis pairs. Exhaustive on finite models;
/// on truncated models pairs whose bracket escapes the window are skipped.
pub(crate) fn check_automorphism(a: &KMAlgebra, op: &LieOperator) -> Result<(), KacmoodyError> {
    let dim = a.dim();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let Some(xy) = a.bracket_basis(i, j).as_ref() else { continue };
            let lhs = match a.bracket(&op.apply_basis(i), &op.apply_basis(j)) {
                Ok(e) => e,
                Err(KacmoodyError::OutsideWindow(_)) => continue,
                Err(other) => return Err(other),
            };
            if lhs != op.apply(xy) {
                return Err(KacmoodyError::NotAnAutomorphism(i, j));
            }
        }
    }
    Ok(())
}

/// exp(ad x) as an exact operator; requires ad x nilpotent, which bounds the
/// power series at dim + 1 terms.
pub fn exp_ad(a: &KMAlgebra, x: &LieElement) -> Result<LieOperator, KacmoodyError> {
    let n = a.dim();
    let mut ad = QMat::zeros(n, n);
    for j in 0..n {
        let col = a.bracket(x, &LieElement::unit(j))?;
        for (i, c) in col.coords() {
            ad[(*i, j)] = c.clone();
        }
    }
    let mut acc = QMat::identity(n);
    let mut term = QMat::identity(n);
    let cap = n + 1;
    let mut k = 0usize;
    loop {
        k += 1;
        if k > cap {
            return Err(KacmoodyError::NilpotencyCapExceeded(cap));
        }
        term = ad.mul(&term).scale(&BigRational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    let op = LieOperator::from_matrix(acc, false);
    match a.mode() {
        Mode::Finite => {
            check_automorphism(a, &op)?;
            Ok(LieOperator { automorphism: true, ..op })
        }
        Mode::Truncated { .. } => Ok(op),
    }
}

/// Diagonal character: e_alpha scales by the sign (-1)^(sum of alpha_v over
/// flagged vertices), the cartan is fixed. Always an automorphism.
pub fn diagonal_character(a: &KMAlgebra, flags: &[bool]) -> LieOperator {
    assert_eq!(flags.len(), a.rank());
    let mut images = Vec::with_capacity(a.dim());
    for idx in 0..a.dim() {
        let sign = match &a.basis()[idx] {
            BasisVector::Cartan(_) => 1,
            BasisVector::Root(deg) => {
                let parity: i64 = deg
                    .iter()
                    .zip(flags)
                    .filter(|(_, flag)| **flag)
                    .map(|(c, _)| *c)
                    .sum();
                if parity.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
        };
        images.push(LieElement::term(idx, sign));
    }
    operator_from_images(&images, true)
}

/// Extends prescribed images of e_v, f_v, h_v to the whole basis along the
/// bracket construction of each root vector, then certifies the result.
/// Finite models only: the certification must see every basis pair.
pub fn extend_from_generators(
    a: &KMAlgebra,
    e_img: &[LieElement],
    f_img: &[LieElement],
    h_img: &[LieElement],
) -> Result<LieOperator, KacmoodyError> {
    if a.mode() != Mode::Finite {
        return Err(KacmoodyError::FiniteModeOnly);
    }
    let rank = a.rank();
    assert_eq!(e_img.len(), rank);
    assert_eq!(f_img.len(), rank);
    assert_eq!(h_img.len(), rank);
    let dim = a.dim();
    let mut images: Vec<Option<LieElement>> = vec![None; dim];
    for v in 0..rank {
        images[a.simple_pos_index(v)] = Some(e_img[v].clone());
        // Basis vector at -alpha_v is -f_v in the finite model.
        images[a.simple_neg_index(v)] = Some(f_img[v].negated());
        images[a.cartan_index(v)] = Some(h_img[v].clone());
    }
    // Basis order puts lower |height| first within each sign block, so one
    // pass resolves every construction reference.
    for idx in 0..dim {
        if images[idx].is_some() {
            continue;
        }
        let (gen, sub, coeff) = a
            .made_from(idx)
            .expect("non-generator basis vectors carry construction data");
        let g = images[gen].clone().expect("generator image set before use");
        let s = images[sub].clone().expect("lower-height image set before use");
        let img = a.bracket(&g, &s)?.scaled_int(coeff);
        images[idx] = Some(img);
    }
    let resolved: Vec<LieElement> = images.into_iter().map(Option::unwrap).collect();
    let op = operator_from_images(&resolved, false);
    check_automorphism(a, &op)?;
    Ok(LieOperator::from_matrix(op.mat, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use lattice::WeightData;
    use weyl::StarQuiver;

    fn algebra(p: &[u32]) -> KMAlgebra {
        let w = WeightData::new(p).unwrap();
        build_algebra(&StarQuiver::new(w), Mode::Finite).unwrap()
    }

    #[test]
    fn exp_ad_e_moves_f_through_the_sl2() {
        let a = algebra(&[2, 2]);
        for v in 0..a.rank() {
            let op = exp_ad(&a, &a.e(v)).unwrap();
            assert!(op.is_automorphism());
            let want = a.f(v).plus(&a.h(v)).minus(&a.e(v));
            assert_eq!(op.apply(&a.f(v)), want);
        }
    }

    #[test]
    fn exp_ad_inverts_at_the_negated_argument() {
        let a = algebra(&[2, 3]);
        let x = a.e(0).plus(&a.e(1));
        let op = exp_ad(&a, &x).unwrap();
        let inv = exp_ad(&a, &x.negated()).unwrap();
        assert!(op.compose(&inv).is_identity());
    }

    #[test]
    fn exp_ad_rejects_semisimple_arguments() {
        let a = algebra(&[2, 2]);
        let err = exp_ad(&a, &a.h(0)).unwrap_err();
        assert!(matches!(err, KacmoodyError::NilpotencyCapExceeded(_)));
    }

    #[test]
    fn diagonal_characters_are_involutive_automorphisms() {
        let a = algebra(&[2, 2]);
        let flags = vec![true, false, true];
        let d = diagonal_character(&a, &flags);
        assert!(d.compose(&d).is_identity());
        check_automorphism(&a, &d).unwrap();
    }

    #[test]
    fn identity_extension_reproduces_the_identity() {
        let a = algebra(&[2, 2]);
        let e: Vec<_> = (0..a.rank()).map(|v| a.e(v)).collect();
        let f: Vec<_> = (0..a.rank()).map(|v| a.f(v)).collect();
        let h: Vec<_> = (0..a.rank()).map(|v| a.h(v)).collect();
        let op = extend_from_generators(&a, &e, &f, &h).unwrap();
        assert!(op.is_identity());
    }

    #[test]
    fn chevalley_involution_extends() {
        let a = algebra(&[2, 2, 2]);
        let e: Vec<_> = (0..a.rank()).map(|v| a.f(v).negated()).collect();
        let f: Vec<_> = (0..a.rank()).map(|v| a.e(v).negated()).collect();
        let h: Vec<_> = (0..a.rank()).map(|v| a.h(v).negated()).collect();
        let op = extend_from_generators(&a, &e, &f, &h).unwrap();
        assert!(op.is_automorphism());
        assert!(op.compose(&op).is_identity());
    }
}
