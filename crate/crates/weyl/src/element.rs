//! Weyl-group elements as dense integer matrices acting on ZI columns.

use exact::imat::IMat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    m: IMat,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { m: IMat::identity(n) }
    }

    pub fn from_matrix(m: IMat) -> Self {
        assert_eq!(m.rows(), m.cols(), "Weyl element must be square");
        WeylElement { m }
    }

    pub fn matrix(&self) -> &IMat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.m.mul_vec(v)
    }

    /// Composition self after other: (self * other)(v) = self(other(v)).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { m: self.m.mul(&other.m) }
    }

    /// Product of a word of elements, left to right: w1 w2 ... wk.
    pub fn compose_all<'a>(word: impl IntoIterator<Item = &'a WeylElement>, n: usize) -> WeylElement {
        word.into_iter().fold(WeylElement::identity(n), |acc, w| acc.compose(w))
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// Checks m^T C m = C, exactness of the symmetric-form action.
    pub fn preserves_form(&self, cartan: &IMat) -> bool {
        self.m.transpose().mul(cartan).mul(&self.m) == *cartan
    }

    pub fn is_unimodular(&self) -> bool {
        self.m.is_unimodular()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_compose() {
        let id = WeylElement::identity(3);
        assert!(id.is_identity());
        let m = WeylElement::from_matrix(IMat::from_rows(&[
            vec![0, 1, 0],
            vec![1, 0, 0],
            vec![0, 0, 1],
        ]));
        assert!(!m.is_identity());
        assert!(m.compose(&m).is_identity());
        assert_eq!(m.apply(&[1, 2, 3]), vec![2, 1, 3]);
        let w = WeylElement::compose_all([&m, &m, &m].into_iter(), 3);
        assert_eq!(w, m);
    }
}
