//! For each twist x and each star vertex, the unique loop offset whose
//! twisted object lands in the perpendicular category: line bundles O(kc)
//! for the central vertex, simple-versus-eta alternatives for arm vertices.

use lattice::{
    ext_line_nonzero, hom_line_nonzero, torsion_in_left_perp, torsion_in_right_perp, LVector,
    TorsionIdx, Vertex, WeightData,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMaps {
    /// Values in star vertex order (star first, then arm-major).
    right: Vec<i64>,
    left: Vec<i64>,
}

impl SigmaMaps {
    pub fn right(&self, w: &WeightData, v: Vertex) -> i64 {
        self.right[lattice::vertex_index(w, v)]
    }

    pub fn left(&self, w: &WeightData, v: Vertex) -> i64 {
        self.left[lattice::vertex_index(w, v)]
    }

    pub fn right_values(&self) -> &[i64] {
        &self.right
    }

    pub fn left_values(&self) -> &[i64] {
        &self.left
    }
}

/// Unique k with O(kc) in the right (resp. left) perpendicular of O(x),
/// found by scanning a window that provably contains it and asserting
/// uniqueness.
fn star_offset(w: &WeightData, x: &LVector, left: bool) -> i64 {
    let t = w.arms() as i64;
    let lc = x.normal_form(w).lc();
    let lo = lc - t - 2;
    let hi = lc + t + 2;
    let mut found = None;
    for k in lo..=hi {
        let okc = LVector::canonical(w.arms()).scaled(k);
        let in_perp = if left {
            !hom_line_nonzero(w, &okc, x) && !ext_line_nonzero(w, &okc, x)
        } else {
            !hom_line_nonzero(w, x, &okc) && !ext_line_nonzero(w, x, &okc)
        };
        if in_perp {
            assert!(found.is_none(), "offset must be unique");
            found = Some(k);
        }
    }
    found.expect("a perpendicular central twist exists in the scan window")
}

/// The two offset maps I -> Z for a twist x. Central value by window scan;
/// arm value 0 when the simple S_ij lies in the perpendicular, -1 otherwise
/// (the loop-lowered alternative).
pub fn sigma_maps(w: &WeightData, x: &LVector) -> SigmaMaps {
    let mut right = vec![star_offset(w, x, false)];
    let mut left = vec![star_offset(w, x, true)];
    for (i, j) in w.arm_vertices() {
        let s = TorsionIdx::simple(i, i64::from(j));
        right.push(if torsion_in_right_perp(w, x, s).unwrap() { 0 } else { -1 });
        left.push(if torsion_in_left_perp(w, x, s).unwrap() { 0 } else { -1 });
    }
    SigmaMaps { right, left }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w23() -> WeightData {
        WeightData::new(&[2, 3]).unwrap()
    }

    #[test]
    fn trivial_twist_values() {
        let w = w23();
        let s = sigma_maps(&w, &LVector::zero(2));
        // O(-c) is the unique central twist perpendicular to O.
        assert_eq!(s.right_values(), &[-1, 0, 0, 0]);
        // Left side: O(c) works, and S_{i1} fails (j = l_i + 1 = 1).
        assert_eq!(s.left_values(), &[1, -1, -1, 0]);
    }

    #[test]
    fn canonical_twist_values() {
        let w = w23();
        let s = sigma_maps(&w, &LVector::canonical(2));
        assert_eq!(s.right(&w, Vertex::Star), 0);
        assert_eq!(s.left(&w, Vertex::Star), 2);
    }

    #[test]
    fn arm_vertex_twist() {
        let w = w23();
        // x = x_2: l_2 = 1, so S_21 leaves the right perpendicular.
        let s = sigma_maps(&w, &LVector::xi(2, 2));
        assert_eq!(s.right(&w, Vertex::Arm { arm: 2, j: 1 }), -1);
        assert_eq!(s.right(&w, Vertex::Arm { arm: 2, j: 2 }), 0);
        assert_eq!(s.right(&w, Vertex::Arm { arm: 1, j: 1 }), 0);
        // Left side: j = l_2 + 1 = 2 fails.
        assert_eq!(s.left(&w, Vertex::Arm { arm: 2, j: 1 }), 0);
        assert_eq!(s.left(&w, Vertex::Arm { arm: 2, j: 2 }), -1);
    }

    #[test]
    fn closed_forms_from_vanishing() {
        // Frozen closed forms derived from the Hom/Ext window conditions:
        // right star value = lc + #{arms with l_i != 0} - 1, left = lc + 1.
        for (coeffs, c) in [
            (vec![0i64, 0], 0i64),
            (vec![1, 0], 0),
            (vec![0, 2], 0),
            (vec![1, 2], 0),
            (vec![1, 1], -1),
            (vec![0, 1], 3),
            (vec![1, 2], -2),
        ] {
            let w = w23();
            let x = LVector::new(coeffs, c);
            let nf = x.normal_form(&w);
            let m = nf.arm_coeffs().iter().filter(|&&l| l != 0).count() as i64;
            let s = sigma_maps(&w, &x);
            assert_eq!(s.right(&w, Vertex::Star), nf.lc() + m - 1, "x = {x}");
            assert_eq!(s.left(&w, Vertex::Star), nf.lc() + 1, "x = {x}");
        }
    }

    #[test]
    fn star_offset_differs_from_arm_sum_form() {
        // With l_2 = 2 the central offset counts nonzero arms, not the sum
        // of the arm coordinates.
        let w = w23();
        let x = LVector::xi(2, 2).scaled(2);
        let s = sigma_maps(&w, &x);
        assert_eq!(s.right(&w, Vertex::Star), 0);
        let nf = x.normal_form(&w);
        let sum: i64 = nf.arm_coeffs().iter().map(|&l| i64::from(l)).sum();
        assert_ne!(s.right(&w, Vertex::Star), sum + nf.lc() - 1);
    }
}
