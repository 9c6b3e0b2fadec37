//! Dense matrices over the exact rationals. Used for adjoint operators and
//! automorphism matrices of the concrete Lie algebras, where entries are
//! rational but the dimensions stay small.

use crate::imat::IMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_int(m: &IMat) -> Self {
        let mut out = QMat::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = BigRational::from(BigInt::from(m[(i, j)]));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == QMat::identity(self.rows)
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let t = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self[(i, j)].is_zero() && !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = &*x + y;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = &*x * c;
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn invert(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m[(i, k)].is_zero())?;
            if pivot != k {
                for j in 0..n {
                    m.data.swap(k * n + j, pivot * n + j);
                    inv.data.swap(k * n + j, pivot * n + j);
                }
            }
            let pv = m[(k, k)].clone();
            for j in 0..n {
                m[(k, j)] = &m[(k, j)] / &pv;
                inv[(k, j)] = &inv[(k, j)] / &pv;
            }
            for i in 0..n {
                if i != k && !m[(i, k)].is_zero() {
                    let f = m[(i, k)].clone();
                    for j in 0..n {
                        let t1 = &m[(k, j)] * &f;
                        m[(i, j)] = &m[(i, j)] - t1;
                        let t2 = &inv[(k, j)] * &f;
                        inv[(i, j)] = &inv[(i, j)] - t2;
                    }
                }
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn inverse_round_trip() {
        let a = QMat::from_int(&IMat::from_rows(&[vec![2, 1], vec![1, 1]]));
        let inv = a.invert().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn singular_detected() {
        let a = QMat::from_int(&IMat::from_rows(&[vec![1, 2], vec![2, 4]]));
        assert!(a.invert().is_none());
    }

    #[test]
    fn scale_and_vec() {
        let a = QMat::from_int(&IMat::from_rows(&[vec![1, 2], vec![3, 4]]));
        let b = a.scale(&rat(2));
        assert_eq!(b[(1, 1)], rat(8));
        let v = a.mul_vec(&[rat(1), rat(1)]);
        assert_eq!(v, vec![rat(3), rat(7)]);
    }
}
