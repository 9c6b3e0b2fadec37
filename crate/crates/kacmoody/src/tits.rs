//! Tits automorphisms exp(ad e) exp(ad -f) exp(ad e) attached to sl2
//! triples. On root spaces they realize the corresponding simple or real
//! reflection; their square is the sign twist (-1)^(alpha, deg).

use crate::algebra::{KMAlgebra, LieElement};
use crate::operator::{exp_ad, LieOperator};
use crate::KacmoodyError;
use lattice::{vertex_index, Vertex};

/// exp(ad e) exp(ad -f) exp(ad e) for an sl2 pair (e, f).
pub fn tits_automorphism(
    a: &KMAlgebra,
    e: &LieElement,
    f: &LieElement,
) -> Result<LieOperator, KacmoodyError> {
    let outer = exp_ad(a, e)?;
    let middle = exp_ad(a, &f.negated())?;
    Ok(outer.compose(&middle).compose(&outer))
}

pub fn tits_at_vertex(a: &KMAlgebra, v: Vertex) -> Result<LieOperator, KacmoodyError> {
    let idx = vertex_index(a.weights(), v);
    tits_automorphism(a, &a.e(idx), &a.f(idx))
}
