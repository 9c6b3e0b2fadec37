//! The rank-one abelian group L(p) on generators x_1..x_t with relations
//! p_i * x_i = c, and its unique normal forms.

use crate::LatticeError;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::ops::{Add, Neg, Sub};

/// Weight sequence p = (p_1, ..., p_t). Arms with p_i = 1 are legal; they
/// contribute no quiver vertices and no torsion symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightData {
    p: Vec<u32>,
}

impl WeightData {
    pub fn new(p: &[u32]) -> Result<Self, LatticeError> {
        if p.is_empty() {
            return Err(LatticeError::InvalidWeights("empty weight sequence".into()));
        }
        if let Some(bad) = p.iter().find(|&&w| w == 0) {
            return Err(LatticeError::InvalidWeights(format!("weight {bad} must be positive")));
        }
        Ok(WeightData { p: p.to_vec() })
    }

    /// Number of arms t.
    pub fn arms(&self) -> usize {
        self.p.len()
    }

    /// Weight p_i of arm `i` (1-based).
    pub fn weight(&self, i: usize) -> u32 {
        assert!(self.check_arm(i).is_ok(), "arm index {i} out of range");
        self.p[i - 1]
    }

    pub fn weights(&self) -> &[u32] {
        &self.p
    }

    pub fn check_arm(&self, i: usize) -> Result<(), LatticeError> {
        if i >= 1 && i <= self.p.len() {
            Ok(())
        } else {
            Err(LatticeError::ArmIndex { i, t: self.p.len() })
        }
    }

    /// Reduce a torsion index into 0..p_i-1.
    pub fn reduce_mod_arm(&self, i: usize, j: i64) -> u32 {
        j.rem_euclid(i64::from(self.weight(i))) as u32
    }

    /// The index set of arm vertices: pairs (i, j) with 1 <= j <= p_i - 1.
    pub fn arm_vertices(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (1..=self.arms()).flat_map(move |i| (1..self.weight(i)).map(move |j| (i, j)))
    }
}

/// Element of L(p) as an explicit integer combination
/// sum a_i * x_i + a_c * c, not necessarily in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LVector {
    coeffs: Vec<i64>,
    c: i64,
}

impl LVector {
    pub fn new(coeffs: Vec<i64>, c: i64) -> Self {
        LVector { coeffs, c }
    }

    pub fn zero(t: usize) -> Self {
        LVector { coeffs: vec![0; t], c: 0 }
    }

    /// The generator x_i (1-based arm index).
    pub fn xi(t: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= t, "arm index {i} out of range");
        let mut coeffs = vec![0; t];
        coeffs[i - 1] = 1;
        LVector { coeffs, c: 0 }
    }

    /// The canonical element c.
    pub fn canonical(t: usize) -> Self {
        LVector { coeffs: vec![0; t], c: 1 }
    }

    pub fn arm_coeff(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    pub fn c_coeff(&self) -> i64 {
        self.c
    }

    pub fn scaled(&self, n: i64) -> LVector {
        LVector { coeffs: self.coeffs.iter().map(|a| a * n).collect(), c: self.c * n }
    }

    /// Unique normal form: coefficients l_i in 0..p_i-1 plus an integer
    /// multiple of c, using the relations p_i x_i = c.
    pub fn normal_form(&self, w: &WeightData) -> LNormalForm {
        assert_eq!(self.coeffs.len(), w.arms(), "arm count mismatch");
        let mut lc = self.c;
        let mut l = Vec::with_capacity(w.arms());
        for (a, &p) in self.coeffs.iter().zip(w.weights()) {
            let p = i64::from(p);
            l.push(a.rem_euclid(p) as u32);
            lc += a.div_euclid(p);
        }
        LNormalForm { l, lc }
    }
}

impl Add for &LVector {
    type Output = LVector;
    fn add(self, other: &LVector) -> LVector {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        LVector {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            c: self.c + other.c,
        }
    }
}

impl Sub for &LVector {
    type Output = LVector;
    fn sub(self, other: &LVector) -> LVector {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        LVector {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            c: self.c - other.c,
        }
    }
}

impl Neg for &LVector {
    type Output = LVector;
    fn neg(self) -> LVector {
        LVector { coeffs: self.coeffs.iter().map(|a| -a).collect(), c: -self.c }
    }
}

impl std::fmt::Display for LVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                parts.push(match a {
                    1 => format!("x{}", k + 1),
                    -1 => format!("-x{}", k + 1),
                    _ => format!("{}x{}", a, k + 1),
                });
            }
        }
        if self.c != 0 {
            parts.push(match self.c {
                1 => "c".into(),
                -1 => "-c".into(),
                _ => format!("{}c", self.c),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join("+").replace("+-", "-"))
    }
}

/// Normal form sum l_i x_i + lc * c with 0 <= l_i <= p_i - 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LNormalForm {
    l: Vec<u32>,
    lc: i64,
}

impl LNormalForm {
    pub fn arm(&self, i: usize) -> u32 {
        self.l[i - 1]
    }

    pub fn arm_coeffs(&self) -> &[u32] {
        &self.l
    }

    pub fn lc(&self) -> i64 {
        self.lc
    }

    pub fn to_vector(&self) -> LVector {
        LVector { coeffs: self.l.iter().map(|&x| i64::from(x)).collect(), c: self.lc }
    }

    /// Effective positivity: y >= 0 in L(p) iff the normal form has lc >= 0.
    pub fn is_nonneg(&self) -> bool {
        self.lc >= 0
    }
}

impl std::fmt::Display for LNormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_vector())
    }
}

// Serialized as the flat array [l_1, ..., l_t, lc] for report payloads.
impl Serialize for LNormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.l.len() + 1))?;
        for &x in &self.l {
            seq.serialize_element(&i64::from(x))?;
        }
        seq.serialize_element(&self.lc)?;
        seq.end()
    }
}

/// Normal form of a sum x + y.
pub fn nf_add(x: &LNormalForm, y: &LNormalForm, w: &WeightData) -> LNormalForm {
    (&x.to_vector() + &y.to_vector()).normal_form(w)
}

/// Canonical and dualizing elements (c, omega) in normal form, with
/// omega = (t - 2) c - sum x_i.
pub fn special_elements(w: &WeightData) -> (LNormalForm, LNormalForm) {
    let t = w.arms();
    let c = LVector::canonical(t).normal_form(w);
    let omega = LVector::new(vec![-1; t], t as i64 - 2).normal_form(w);
    (c, omega)
}
