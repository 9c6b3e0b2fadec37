//! Grothendieck group coordinates: ZI + Z*delta, with I the star vertex set
//! {star} + {(i, j) : 1 <= i <= t, 1 <= j <= p_i - 1}.

use crate::group::{LVector, WeightData};
use crate::LatticeError;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::ops::{Add, Neg, Sub};

/// Vertex of the star. Arm indices are 1-based; `j` runs 1..=p_i-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Star,
    Arm { arm: usize, j: u32 },
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Vertex::Star => write!(f, "*"),
            Vertex::Arm { arm, j } => write!(f, "w{arm}{j}"),
        }
    }
}

/// Star vertex order: star first, then arm-major (arm 1 vertices j=1..p_1-1,
/// arm 2, ...). This fixes the coordinate order of every ZI vector.
pub fn vertex_list(w: &WeightData) -> Vec<Vertex> {
    let mut v = vec![Vertex::Star];
    v.extend(w.arm_vertices().map(|(arm, j)| Vertex::Arm { arm, j }));
    v
}

/// Number of star vertices: 1 + sum (p_i - 1).
pub fn vertex_count(w: &WeightData) -> usize {
    1 + w.weights().iter().map(|&p| p as usize - 1).sum::<usize>()
}

pub fn vertex_index(w: &WeightData, v: Vertex) -> usize {
    match v {
        Vertex::Star => 0,
        Vertex::Arm { arm, j } => {
            assert!(w.check_arm(arm).is_ok(), "arm index {arm} out of range");
            assert!(j >= 1 && j < w.weight(arm), "vertex index {j} out of range on arm {arm}");
            let before: usize = w.weights()[..arm - 1].iter().map(|&p| p as usize - 1).sum();
            1 + before + (j as usize - 1)
        }
    }
}

/// Class in ZI + Z*delta.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Class {
    zi: Vec<i64>,
    n_delta: i64,
}

impl K0Class {
    pub fn zero(w: &WeightData) -> Self {
        K0Class { zi: vec![0; vertex_count(w)], n_delta: 0 }
    }

    pub fn from_parts(zi: Vec<i64>, n_delta: i64) -> Self {
        K0Class { zi, n_delta }
    }

    /// Unit vector at a star vertex (a simple-root class alpha_v).
    pub fn alpha(w: &WeightData, v: Vertex) -> Self {
        let mut c = K0Class::zero(w);
        c.zi[vertex_index(w, v)] = 1;
        c
    }

    pub fn delta(w: &WeightData) -> Self {
        K0Class { zi: vec![0; vertex_count(w)], n_delta: 1 }
    }

    pub fn zi(&self) -> &[i64] {
        &self.zi
    }

    pub fn coeff(&self, w: &WeightData, v: Vertex) -> i64 {
        self.zi[vertex_index(w, v)]
    }

    pub fn n_delta(&self) -> i64 {
        self.n_delta
    }

    pub fn is_zero(&self) -> bool {
        self.n_delta == 0 && self.zi.iter().all(|&a| a == 0)
    }

    pub fn scaled(&self, n: i64) -> K0Class {
        K0Class { zi: self.zi.iter().map(|a| a * n).collect(), n_delta: self.n_delta * n }
    }

    /// Forget the delta component; the image in ZI = K0 / Z*delta.
    pub fn reduce_mod_delta(&self) -> Vec<i64> {
        self.zi.clone()
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, other: &K0Class) -> K0Class {
        assert_eq!(self.zi.len(), other.zi.len());
        K0Class {
            zi: self.zi.iter().zip(&other.zi).map(|(a, b)| a + b).collect(),
            n_delta: self.n_delta + other.n_delta,
        }
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, other: &K0Class) -> K0Class {
        assert_eq!(self.zi.len(), other.zi.len());
        K0Class {
            zi: self.zi.iter().zip(&other.zi).map(|(a, b)| a - b).collect(),
            n_delta: self.n_delta - other.n_delta,
        }
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class { zi: self.zi.iter().map(|a| -a).collect(), n_delta: -self.n_delta }
    }
}

// Serialized as the flat array [zi..., n_delta] for report payloads.
impl Serialize for K0Class {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.zi.len() + 1))?;
        for &x in &self.zi {
            seq.serialize_element(&x)?;
        }
        seq.serialize_element(&self.n_delta)?;
        seq.end()
    }
}

/// Class of the line bundle O(x): alpha_star + sum over arms of the partial
/// sums alpha_i1 + ... + alpha_i,l_i, plus lc * delta, where x has normal
/// form sum l_i x_i + lc * c.
pub fn class_of_line_bundle(w: &WeightData, x: &LVector) -> K0Class {
    let nf = x.normal_form(w);
    let mut zi = vec![0i64; vertex_count(w)];
    zi[0] = 1;
    for (i, &li) in nf.arm_coeffs().iter().enumerate() {
        let arm = i + 1;
        for j in 1..=li {
            zi[vertex_index(w, Vertex::Arm { arm, j })] += 1;
        }
    }
    K0Class { zi, n_delta: nf.lc() }
}

/// Class of the uniserial torsion sheaf of top S_{i,j} and length k:
/// sum_{m=0}^{k-1} [S_{i,j-m}], where [S_{i,j}] = alpha_{ij} for j != 0 and
/// [S_{i,0}] = delta - sum_{l=1}^{p_i-1} alpha_{il}. Length p_i gives delta.
pub fn class_of_torsion(w: &WeightData, i: usize, j: i64, k: u32) -> Result<K0Class, LatticeError> {
    w.check_arm(i)?;
    if k == 0 {
        return Ok(K0Class::zero(w));
    }
    let p = w.weight(i);
    let full = i64::from(k / p);
    let rem = k % p;
    let mut out = K0Class::zero(w);
    out.n_delta += full;
    for m in 0..i64::from(rem) {
        let jm = w.reduce_mod_arm(i, j - m);
        if jm == 0 {
            out.n_delta += 1;
            for l in 1..p {
                out.zi[vertex_index(w, Vertex::Arm { arm: i, j: l })] -= 1;
            }
        } else {
            out.zi[vertex_index(w, Vertex::Arm { arm: i, j: jm })] += 1;
        }
    }
    Ok(out)
}

/// Neighbor test in the star: star -- (i,1) and (i,j) -- (i,j+1).
fn adjacent(a: Vertex, b: Vertex) -> bool {
    match (a, b) {
        (Vertex::Star, Vertex::Arm { j: 1, .. }) | (Vertex::Arm { j: 1, .. }, Vertex::Star) => true,
        (Vertex::Arm { arm: i1, j: j1 }, Vertex::Arm { arm: i2, j: j2 }) => {
            i1 == i2 && (j1 + 1 == j2 || j2 + 1 == j1)
        }
        _ => false,
    }
}

/// Symmetrized Euler form (a, b) = a^T C b on ZI, extended by zero on delta.
/// C is the star Cartan matrix: 2 on the diagonal, -1 between neighbors.
pub fn euler_sym(w: &WeightData, a: &K0Class, b: &K0Class) -> i64 {
    let verts = vertex_list(w);
    let mut total = 0i64;
    for (r, &vr) in verts.iter().enumerate() {
        let ar = a.zi[r];
        if ar == 0 {
            continue;
        }
        for (s, &vs) in verts.iter().enumerate() {
            let bs = b.zi[s];
            if bs == 0 {
                continue;
            }
            let c = if r == s {
                2
            } else if adjacent(vr, vs) {
                -1
            } else {
                0
            };
            total += ar * c * bs;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w23() -> WeightData {
        WeightData::new(&[2, 3]).unwrap()
    }

    #[test]
    fn vertex_indexing() {
        let w = w23();
        assert_eq!(vertex_count(&w), 4);
        assert_eq!(
            vertex_list(&w),
            vec![
                Vertex::Star,
                Vertex::Arm { arm: 1, j: 1 },
                Vertex::Arm { arm: 2, j: 1 },
                Vertex::Arm { arm: 2, j: 2 },
            ]
        );
        assert_eq!(vertex_index(&w, Vertex::Arm { arm: 2, j: 2 }), 3);
    }

    #[test]
    fn line_bundle_classes() {
        let w = w23();
        // [O] = alpha_star.
        let o = class_of_line_bundle(&w, &LVector::zero(2));
        assert_eq!(o.zi(), &[1, 0, 0, 0]);
        assert_eq!(o.n_delta(), 0);
        // [O(c)] = alpha_star + delta.
        let oc = class_of_line_bundle(&w, &LVector::canonical(2));
        assert_eq!(oc.zi(), &[1, 0, 0, 0]);
        assert_eq!(oc.n_delta(), 1);
        // [O(x_1 + 2 x_2)] = alpha_star + alpha_11 + alpha_21 + alpha_22.
        let x = &LVector::xi(2, 1) + &LVector::xi(2, 2).scaled(2);
        let c = class_of_line_bundle(&w, &x);
        assert_eq!(c.zi(), &[1, 1, 1, 1]);
        assert_eq!(c.n_delta(), 0);
    }

    #[test]
    fn torsion_classes() {
        let w = w23();
        // S_{2,1} simple.
        let s = class_of_torsion(&w, 2, 1, 1).unwrap();
        assert_eq!(s.zi(), &[0, 0, 1, 0]);
        assert_eq!(s.n_delta(), 0);
        // Full period on arm 2 is delta.
        let d = class_of_torsion(&w, 2, 2, 3).unwrap();
        assert_eq!(d.zi(), &[0, 0, 0, 0]);
        assert_eq!(d.n_delta(), 1);
        // S_{2,0} = delta - alpha_21 - alpha_22.
        let s0 = class_of_torsion(&w, 2, 0, 1).unwrap();
        assert_eq!(s0.zi(), &[0, 0, -1, -1]);
        assert_eq!(s0.n_delta(), 1);
        // Length-2 window ending at j=1 on arm 2: [S_21] + [S_20].
        let s2 = class_of_torsion(&w, 2, 1, 2).unwrap();
        assert_eq!(s2.zi(), &[0, 0, 0, -1]);
        assert_eq!(s2.n_delta(), 1);
        // Arm index out of range.
        assert!(class_of_torsion(&w, 3, 0, 1).is_err());
    }

    #[test]
    fn weight_one_arm_torsion_is_delta_multiple() {
        let w = WeightData::new(&[1, 3]).unwrap();
        let c = class_of_torsion(&w, 1, 0, 2).unwrap();
        assert!(c.zi().iter().all(|&a| a == 0));
        assert_eq!(c.n_delta(), 2);
    }

    #[test]
    fn euler_form_values() {
        let w = w23();
        let star = K0Class::alpha(&w, Vertex::Star);
        let a11 = K0Class::alpha(&w, Vertex::Arm { arm: 1, j: 1 });
        let a21 = K0Class::alpha(&w, Vertex::Arm { arm: 2, j: 1 });
        let a22 = K0Class::alpha(&w, Vertex::Arm { arm: 2, j: 2 });
        assert_eq!(euler_sym(&w, &star, &star), 2);
        assert_eq!(euler_sym(&w, &star, &a11), -1);
        assert_eq!(euler_sym(&w, &star, &a21), -1);
        assert_eq!(euler_sym(&w, &star, &a22), 0);
        assert_eq!(euler_sym(&w, &a21, &a22), -1);
        assert_eq!(euler_sym(&w, &a11, &a21), 0);
        // delta is in the radical.
        let d = K0Class::delta(&w);
        assert_eq!(euler_sym(&w, &d, &star), 0);
        assert_eq!(euler_sym(&w, &(&star + &d), &a11), -1);
    }

    #[test]
    fn reduce_mod_delta_kills_delta_only() {
        let w = w23();
        let s0 = class_of_torsion(&w, 2, 0, 1).unwrap();
        assert_eq!(s0.reduce_mod_delta(), vec![0, 0, -1, -1]);
        assert_eq!(K0Class::delta(&w).reduce_mod_delta(), vec![0, 0, 0, 0]);
    }
}
