//! Mutation operators on the Grothendieck group modulo delta: twisting a
//! line bundle induces a reflection, triple composites realize every simple
//! reflection of the star Weyl group, and the perpendicular categories carry
//! transported simple-root bases with sign-coherent root expansions.

mod basis;
mod reflection;
mod remark;
mod sigma;

pub use basis::{
    express_in_basis, transported_basis, twist_catalog, Side, TransportedBasis,
};
pub use reflection::{
    mutation_reflection, verify_simple_reflection_theorem, MutationOperator,
};
pub use remark::{verify_weight13_remark, weight13_remark_catalog, RemarkEntry, WEIGHT13_EXPECTED};
pub use sigma::{sigma_maps, SigmaMaps};

use lattice::{K0Class, WeightData};
use report::{Check, Report};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MutationError {
    #[error("transported basis is singular")]
    SingularBasis,
    #[error("class does not lie in the perpendicular lattice")]
    OutsideLattice,
}

/// Sign coherence of the root system in the transported bases: every root,
/// lifted to the perpendicular sublattice and solved against the transported
/// basis exactly, has all coefficients >= 0 or all <= 0. Checks both sides.
pub fn verify_sign_coherence(w: &WeightData, x: &lattice::LVector, height_cap: u32) -> Report {
    let q = weyl::StarQuiver::new(w.clone());
    let roots = q.enumerate_roots(height_cap);
    let mut report = Report::new(
        "mutation-sign-coherence",
        serde_json::json!({
            "weights": w.weights(),
            "x": x.normal_form(w),
            "height_cap": height_cap,
            "partial": !roots.complete(),
        }),
    );
    for side in [Side::Right, Side::Left] {
        let tb = transported_basis(w, x, side);
        let tag = side.tag();
        report.push(Check::equality(
            format!("sign-{tag}-unimodular"),
            format!("transported {tag} basis is a Z-basis (determinant +-1)"),
            tb.is_unimodular(),
            "unimodular",
            "unimodular",
        ));
        for (idx, root) in roots.roots().iter().enumerate() {
            let nonzero = root.vec.iter().any(|&a| a != 0);
            // Lift the ZI root vector to the perpendicular lattice through
            // the line-bundle basis, then expand in the transported basis.
            let lifted = tb.lift_mod_delta(&root.vec);
            let coeffs = lifted.as_ref().and_then(|g| express_in_basis(tb.elements(), g));
            let ok = match &coeffs {
                Some(c) => {
                    nonzero
                        && (c.iter().all(|&a| a >= 0) || c.iter().all(|&a| a <= 0))
                        && c.iter().any(|&a| a != 0)
                }
                None => false,
            };
            report.push(Check::equality(
                format!("sign-{tag}-root{idx:03}"),
                format!("root {:?} expands sign-coherently in the {tag} basis", root.vec),
                ok,
                format!("{:?}", root.vec),
                format!("{:?}", coeffs),
            ));
        }
    }
    report
}

pub fn k0_json(c: &K0Class) -> String {
    serde_json::to_string(c).unwrap()
}
