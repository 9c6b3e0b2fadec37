//! The reflection induced on K0 mod delta by mutating at a line bundle, and
//! the theorem realizing every simple reflection of the star through them.

use lattice::{class_of_line_bundle, LNormalForm, LVector, Vertex, WeightData};
use report::{Check, Report};
use weyl::{StarQuiver, WeylElement};

#[derive(Debug, Clone)]
pub struct MutationOperator {
    x: LNormalForm,
    root: Vec<i64>,
    action: WeylElement,
}

impl MutationOperator {
    pub fn twist(&self) -> &LNormalForm {
        &self.x
    }

    /// The reflecting vector: the line bundle class reduced mod delta.
    pub fn root(&self) -> &[i64] {
        &self.root
    }

    pub fn action(&self) -> &WeylElement {
        &self.action
    }
}

/// v -> v - (v, u) u with u the class of O(x) mod delta. The class of any
/// line bundle is the indicator of a connected star subtree, hence a real
/// root, so the reflection always exists.
pub fn mutation_reflection(w: &WeightData, x: &LVector) -> MutationOperator {
    let q = StarQuiver::new(w.clone());
    let u = class_of_line_bundle(w, x).reduce_mod_delta();
    let action = q
        .reflection_in_root(&u)
        .expect("line bundle class mod delta is a real root");
    MutationOperator { x: x.normal_form(w), root: u, action }
}

/// Exact matrix identities: the star reflection equals the mutation
/// reflection at x = 0, and each arm reflection r_{ij} equals the composite
/// of mutation reflections at (j-1)x_i, j x_i, (j-1)x_i.
pub fn verify_simple_reflection_theorem(w: &WeightData) -> Report {
    let q = StarQuiver::new(w.clone());
    let mut report = Report::new(
        "mutation-simple-reflection",
        serde_json::json!({ "weights": w.weights() }),
    );
    let mat = |e: &WeylElement| serde_json::to_string(&e.matrix().to_rows()).unwrap();

    let r_star = q.simple_reflection(Vertex::Star).unwrap();
    let m0 = mutation_reflection(w, &LVector::zero(w.arms()));
    report.push(Check::equality(
        "srt-star",
        "star reflection equals the mutation reflection at the trivial twist",
        r_star == *m0.action(),
        mat(&r_star),
        mat(m0.action()),
    ));

    for (arm, j) in w.arm_vertices() {
        let r_ij = q.simple_reflection(Vertex::Arm { arm, j }).unwrap();
        let outer = mutation_reflection(w, &LVector::xi(w.arms(), arm).scaled(i64::from(j) - 1));
        let inner = mutation_reflection(w, &LVector::xi(w.arms(), arm).scaled(i64::from(j)));
        let composite = outer.action().compose(inner.action()).compose(outer.action());
        report.push(Check::equality(
            format!("srt-arm{arm}-j{j}"),
            format!("arm reflection r_{arm}{j} equals the mutation triple at ({}, {})x_{arm}", j - 1, j),
            r_ij == composite,
            mat(&r_ij),
            mat(&composite),
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice::vertex_index;

    fn w23() -> WeightData {
        WeightData::new(&[2, 3]).unwrap()
    }

    #[test]
    fn trivial_twist_is_star_reflection() {
        let w = w23();
        let q = StarQuiver::new(w.clone());
        let m = mutation_reflection(&w, &LVector::zero(2));
        assert_eq!(m.root(), &[1, 0, 0, 0]);
        assert_eq!(*m.action(), q.simple_reflection(Vertex::Star).unwrap());
        // Twisting by c gives the same reduced class, hence the same action.
        let mc = mutation_reflection(&w, &LVector::canonical(2));
        assert_eq!(m.root(), mc.root());
        assert_eq!(m.action(), mc.action());
    }

    #[test]
    fn single_twist_reflects_in_partial_sum() {
        let w = w23();
        let m = mutation_reflection(&w, &LVector::xi(2, 2));
        // Class of O(x_2) mod delta: alpha_star + alpha_21.
        let mut expect = vec![0i64; 4];
        expect[0] = 1;
        expect[vertex_index(&w, Vertex::Arm { arm: 2, j: 1 })] = 1;
        assert_eq!(m.root(), expect.as_slice());
        assert!(m.action().compose(m.action()).is_identity());
    }

    #[test]
    fn theorem_holds_for_small_weights() {
        for p in [vec![2u32, 3], vec![2, 2, 2], vec![3, 3, 3], vec![2, 3, 7]] {
            let w = WeightData::new(&p).unwrap();
            let r = verify_simple_reflection_theorem(&w);
            assert!(!r.has_failures(), "weights {p:?}: {}", r.to_json());
        }
    }

    #[test]
    fn composite_negates_own_root() {
        let w = w23();
        let q = StarQuiver::new(w.clone());
        let outer = mutation_reflection(&w, &LVector::zero(2));
        let inner = mutation_reflection(&w, &LVector::xi(2, 2));
        let composite = outer.action().compose(inner.action()).compose(outer.action());
        let idx = vertex_index(&w, Vertex::Arm { arm: 2, j: 1 });
        let mut alpha = vec![0i64; q.vertex_count()];
        alpha[idx] = 1;
        let image = composite.apply(&alpha);
        let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
        assert_eq!(image, neg);
    }
}
