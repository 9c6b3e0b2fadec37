//! Hom/Ext vanishing tests between line bundles and uniserial torsion
//! sheaves, and the induced perpendicular-category membership predicates.

use crate::group::{special_elements, LVector, WeightData};
use crate::LatticeError;

/// Uniserial torsion sheaf on arm `i` with top S_{i,j} and length `k`:
/// composition series S_{i,j}, S_{i,j-1}, ..., S_{i,j-k+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorsionIdx {
    pub arm: usize,
    pub j: i64,
    pub k: u32,
}

impl TorsionIdx {
    pub fn simple(arm: usize, j: i64) -> Self {
        TorsionIdx { arm, j, k: 1 }
    }

    pub fn validate(&self, w: &WeightData) -> Result<(), LatticeError> {
        w.check_arm(self.arm)?;
        if self.k == 0 {
            return Err(LatticeError::InvalidWeights("torsion length must be positive".into()));
        }
        Ok(())
    }
}

/// Hom(O(x), O(y)) != 0 iff y - x >= 0.
pub fn hom_line_nonzero(w: &WeightData, x: &LVector, y: &LVector) -> bool {
    (y - x).normal_form(w).is_nonneg()
}

/// Ext^1(O(x), O(y)) != 0 iff x + omega - y >= 0 (Serre duality).
pub fn ext_line_nonzero(w: &WeightData, x: &LVector, y: &LVector) -> bool {
    let (_, omega) = special_elements(w);
    let diff = &(&x.clone() + &omega.to_vector()) - y;
    diff.normal_form(w).is_nonneg()
}

/// dim Hom(O(x), S) for S uniserial with top S_{i,j} and length k: the number
/// of socle-to-top positions m in {j-k+1, ..., j} with m = l_i mod p_i, where
/// l_i is the arm-i normal-form coordinate of x.
pub fn torsion_window_hom(w: &WeightData, x: &LVector, s: TorsionIdx) -> Result<u32, LatticeError> {
    s.validate(w)?;
    let li = i64::from(x.normal_form(w).arm(s.arm));
    let p = i64::from(w.weight(s.arm));
    let count = (0..i64::from(s.k)).filter(|m| (s.j - m).rem_euclid(p) == li).count();
    Ok(count as u32)
}

/// S in O(x)-right-perp: Hom(O(x), S) = 0 and Ext^1(O(x), S) = 0. Torsion
/// Ext vanishes against line bundles on the left, so only Hom matters.
pub fn torsion_in_right_perp(w: &WeightData, x: &LVector, s: TorsionIdx) -> Result<bool, LatticeError> {
    Ok(torsion_window_hom(w, x, s)? == 0)
}

/// S in O(x)-left-perp: Hom(S, O(x)) = 0 always; Ext^1(S, O(x)) is Serre-dual
/// to Hom(O(x), S(omega)) and twisting by omega shifts the window down by one.
pub fn torsion_in_left_perp(w: &WeightData, x: &LVector, s: TorsionIdx) -> Result<bool, LatticeError> {
    let shifted = TorsionIdx { arm: s.arm, j: s.j - 1, k: s.k };
    Ok(torsion_window_hom(w, x, shifted)? == 0)
}
