use kacmoody::{
    build_algebra, diagonal_character, exp_ad, phi_dictionary, saturation_depth, tits_at_vertex,
    xi_with, KMAlgebra, LieElement, Mode,
};
use lattice::{LVector, WeightData};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;
use weyl::StarQuiver;

const TYPES: [&[u32]; 3] = [&[2, 2], &[2, 3], &[2, 2, 2]];

fn algebras() -> &'static Vec<(StarQuiver, KMAlgebra)> {
    static CELL: OnceLock<Vec<(StarQuiver, KMAlgebra)>> = OnceLock::new();
    CELL.get_or_init(|| {
        TYPES
            .iter()
            .map(|p| {
                let q = StarQuiver::new(WeightData::new(p).unwrap());
                let a = build_algebra(&q, Mode::Finite).unwrap();
                (q, a)
            })
            .collect()
    })
}

#[test]
fn phi_dictionary_is_path_independent_at_depth_three() {
    // Every generation replays all growth rules over the whole table, so a
    // successful build certifies that no two derivation paths disagree.
    for p in [&[2u32, 2][..], &[2, 2, 2]] {
        let q = StarQuiver::new(WeightData::new(p).unwrap());
        let a = build_algebra(&q, Mode::Finite).unwrap();
        let first = phi_dictionary(&a, 3).unwrap();
        let again = phi_dictionary(&a, 3).unwrap();
        let lhs: Vec<_> = first.entries().collect();
        let rhs: Vec<_> = again.entries().collect();
        assert_eq!(lhs, rhs);
        assert!(first.len() > 2 * a.rank());
    }
}

#[test]
fn phi_dictionary_growth_is_monotone_and_consistent() {
    let q = StarQuiver::new(WeightData::new(&[2, 3]).unwrap());
    let a = build_algebra(&q, Mode::Finite).unwrap();
    let full = phi_dictionary(&a, saturation_depth(a.weights())).unwrap();
    let mut prev = 0;
    for depth in 0..=saturation_depth(a.weights()) {
        let dict = phi_dictionary(&a, depth).unwrap();
        assert!(dict.len() >= prev);
        prev = dict.len();
        for (s, elt) in dict.entries() {
            assert_eq!(full.lookup(a.weights(), s).unwrap(), *elt);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // exp(ad b) for any root vector b is a Lie algebra automorphism with
    // inverse exp(ad -b), not just for the simple generators.
    #[test]
    fn exp_ad_of_root_vectors_is_invertible(ty in 0usize..TYPES.len(), pick in any::<u32>()) {
        let (_, a) = &algebras()[ty];
        let roots: Vec<usize> = (0..a.dim()).filter(|i| !a.is_cartan(*i)).collect();
        let idx = roots[pick as usize % roots.len()];
        let x = LieElement::unit(idx);
        let fwd = exp_ad(a, &x).unwrap();
        let back = exp_ad(a, &x.negated()).unwrap();
        prop_assert!(fwd.is_automorphism());
        prop_assert!(fwd.compose(&back).is_identity());
    }

    // Diagonal sign characters form an elementary abelian 2-group under
    // composition, indexed by xor of the flag vectors.
    #[test]
    fn diagonal_characters_compose_by_xor(ty in 0usize..TYPES.len(), seed in any::<u64>()) {
        let (_, a) = &algebras()[ty];
        let rank = a.rank();
        let bits = |s: u64| (0..rank).map(|v| (s >> v) & 1 == 1).collect::<Vec<bool>>();
        let f1 = bits(seed);
        let f2 = bits(seed >> 16);
        let fx: Vec<bool> = f1.iter().zip(&f2).map(|(a, b)| a ^ b).collect();
        let d1 = diagonal_character(a, &f1);
        let d2 = diagonal_character(a, &f2);
        let dx = diagonal_character(a, &fx);
        prop_assert!(d1.compose(&d2).matrix() == dx.matrix());
        prop_assert!(d1.compose(&d1).is_identity());
    }

    // Each vertex operator permutes root spaces exactly as its simple
    // reflection permutes degrees, across all finite types under test.
    #[test]
    fn tits_grading_follows_the_reflection(ty in 0usize..TYPES.len(), pick in any::<u32>()) {
        let (q, a) = &algebras()[ty];
        let verts = q.vertices();
        let v = verts[pick as usize % verts.len()];
        let op = tits_at_vertex(a, v).unwrap();
        let refl = q.simple_reflection(v).unwrap();
        for idx in 0..a.dim() {
            if a.is_cartan(idx) {
                continue;
            }
            let image = op.apply_basis(idx);
            let target = a.root_index(&refl.apply(a.degree(idx))).unwrap();
            for (i, c) in image.coords() {
                prop_assert_eq!(*i, target);
                prop_assert!(!c.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Transported generator systems stay integrable: every twist built from
    // a small lattice class extends to an automorphism whose square is a
    // diagonal sign matrix.
    #[test]
    fn xi_builds_an_automorphism_for_small_twists(coeffs in prop::collection::vec(-1i64..=1, 2), c in -1i64..=1) {
        let (_, a) = &algebras()[0];
        static DICT: OnceLock<kacmoody::PhiDictionary> = OnceLock::new();
        let dict = DICT.get_or_init(|| {
            phi_dictionary(a, saturation_depth(a.weights())).unwrap()
        });
        let x = LVector::new(coeffs, c);
        let op = xi_with(a, dict, &x).unwrap();
        prop_assert!(op.is_automorphism());
        let sq = op.compose(&op);
        for idx in 0..a.dim() {
            let col = sq.apply_basis(idx);
            for (i, coeff) in col.coords() {
                prop_assert_eq!(*i, idx);
                prop_assert!(coeff.abs() == num_rational::BigRational::from_integer(1.into()));
            }
        }
    }
}
