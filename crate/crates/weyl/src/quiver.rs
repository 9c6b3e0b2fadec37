//! The star-shaped quiver of a weight sequence: central vertex, one arm of
//! length p_i - 1 per weight, arrows pointing toward the center.

use crate::element::WeylElement;
use crate::reflect::{braid_order_at, reflection_in_vector, simple_reflection_at};
use crate::roots::{detect_finite_type, enumerate_roots_from_cartan, DynkinType, RootSet};
use crate::WeylError;
use exact::imat::IMat;
use lattice::{vertex_index, vertex_list, Vertex, WeightData};

#[derive(Debug, Clone)]
pub struct StarQuiver {
    w: WeightData,
    verts: Vec<Vertex>,
}

impl StarQuiver {
    pub fn new(w: WeightData) -> Self {
        let verts = vertex_list(&w);
        StarQuiver { w, verts }
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn index(&self, v: Vertex) -> Result<usize, WeylError> {
        match v {
            Vertex::Star => Ok(0),
            Vertex::Arm { arm, j } => {
                if self.w.check_arm(arm).is_err() || j == 0 || j >= self.w.weight(arm) {
                    Err(WeylError::UnknownVertex(v.to_string()))
                } else {
                    Ok(vertex_index(&self.w, v))
                }
            }
        }
    }

    /// Arrows as (source, target), each arm directed toward the center:
    /// omega_{i1} -> star, omega_{i,j+1} -> omega_{ij}.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 1..=self.w.arms() {
            for j in 1..self.w.weight(i) {
                let src = Vertex::Arm { arm: i, j };
                let tgt = if j == 1 { Vertex::Star } else { Vertex::Arm { arm: i, j: j - 1 } };
                out.push((src, tgt));
            }
        }
        out
    }

    /// Generalized Cartan matrix: 2 on the diagonal, minus the number of
    /// arrows between distinct vertices (orientation forgotten).
    pub fn cartan_matrix(&self) -> IMat {
        let n = self.vertex_count();
        let mut c = IMat::zeros(n, n);
        for r in 0..n {
            c[(r, r)] = 2;
        }
        for (src, tgt) in self.arrows() {
            let r = vertex_index(&self.w, src);
            let s = vertex_index(&self.w, tgt);
            c[(r, s)] -= 1;
            c[(s, r)] -= 1;
        }
        c
    }

    pub fn simple_reflection(&self, v: Vertex) -> Result<WeylElement, WeylError> {
        let idx = self.index(v)?;
        Ok(simple_reflection_at(&self.cartan_matrix(), idx))
    }

    pub fn reflection_in_root(&self, alpha: &[i64]) -> Result<WeylElement, WeylError> {
        reflection_in_vector(&self.cartan_matrix(), alpha)
    }

    pub fn braid_order(&self, u: Vertex, v: Vertex) -> Result<u32, WeylError> {
        let iu = self.index(u)?;
        let iv = self.index(v)?;
        braid_order_at(&self.cartan_matrix(), iu, iv, 6)
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        detect_finite_type(&self.w)
    }

    pub fn enumerate_roots(&self, height_cap: u32) -> RootSet {
        enumerate_roots_from_cartan(&self.cartan_matrix(), height_cap, self.dynkin_type().is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflect::pairing;
    use lattice::{euler_sym, K0Class};

    #[test]
    fn star_shape_and_cartan() {
        let q = StarQuiver::new(WeightData::new(&[2, 3]).unwrap());
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.arrows().len(), 3);
        // Vertex order: star, w11, w21, w22 so the Cartan is the A_4 path
        // in the order (w11, star, w21, w22) permuted.
        let c = q.cartan_matrix();
        assert_eq!(c[(0, 0)], 2);
        assert_eq!(c[(0, 1)], -1);
        assert_eq!(c[(0, 2)], -1);
        assert_eq!(c[(0, 3)], 0);
        assert_eq!(c[(2, 3)], -1);
        assert_eq!(c[(1, 2)], 0);
    }

    #[test]
    fn cartan_agrees_with_euler_form() {
        for p in [vec![2u32, 3], vec![2, 2, 2], vec![1, 4], vec![3, 3, 3]] {
            let w = WeightData::new(&p).unwrap();
            let q = StarQuiver::new(w.clone());
            let c = q.cartan_matrix();
            let n = q.vertex_count();
            for r in 0..n {
                for s in 0..n {
                    let mut zr = vec![0i64; n];
                    let mut zs = vec![0i64; n];
                    zr[r] = 1;
                    zs[s] = 1;
                    let a = K0Class::from_parts(zr.clone(), 0);
                    let b = K0Class::from_parts(zs.clone(), 0);
                    assert_eq!(euler_sym(&w, &a, &b), pairing(&c, &zr, &zs));
                }
            }
        }
    }

    #[test]
    fn unknown_vertices_rejected() {
        let q = StarQuiver::new(WeightData::new(&[2, 3]).unwrap());
        assert!(q.simple_reflection(Vertex::Arm { arm: 1, j: 2 }).is_err());
        assert!(q.simple_reflection(Vertex::Arm { arm: 3, j: 1 }).is_err());
        assert!(q.simple_reflection(Vertex::Arm { arm: 2, j: 0 }).is_err());
        assert!(q.simple_reflection(Vertex::Arm { arm: 2, j: 2 }).is_ok());
    }

    #[test]
    fn braid_orders_on_star() {
        let q = StarQuiver::new(WeightData::new(&[2, 2, 2]).unwrap());
        let star = Vertex::Star;
        let a = Vertex::Arm { arm: 1, j: 1 };
        let b = Vertex::Arm { arm: 2, j: 1 };
        assert_eq!(q.braid_order(star, a), Ok(3));
        assert_eq!(q.braid_order(a, b), Ok(2));
        assert_eq!(q.braid_order(a, a), Err(WeylError::SameVertex));
    }
}
