//! Transported simple-root bases of the perpendicular lattices. The lattice
//! of O(x)-perp has line-bundle basis {[O(x - y)] : 0 < y <= c} (left side
//! uses x + y); the transport sends each class of {O, S_ij} through the
//! mod-delta identification into that sublattice.

use exact::imat::{solve, solve_rectangular, IMat};
use lattice::{
    class_of_line_bundle, class_of_torsion, vertex_count, K0Class, LNormalForm, LVector,
    WeightData,
};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// The twists {y : 0 < y <= c}: the partial single-arm twists l x_i with
/// 1 <= l <= p_i - 1, then c itself. Exactly |I| elements.
pub fn twist_catalog(w: &WeightData) -> Vec<LVector> {
    let t = w.arms();
    let mut out = Vec::with_capacity(vertex_count(w));
    for i in 1..=t {
        for l in 1..w.weight(i) {
            out.push(LVector::xi(t, i).scaled(i64::from(l)));
        }
    }
    out.push(LVector::canonical(t));
    out
}

#[derive(Debug, Clone)]
pub struct TransportedBasis {
    x: LNormalForm,
    side: Side,
    /// Classes [O(x -+ y)] over the twist catalog: a basis of the
    /// perpendicular sublattice of ZI + Z delta.
    line_classes: Vec<K0Class>,
    /// Transported images of {[O], [S_ij]} in catalog order, inside the
    /// sublattice spanned by line_classes.
    elements: Vec<K0Class>,
    unimodular: bool,
}

impl TransportedBasis {
    pub fn x(&self) -> &LNormalForm {
        &self.x
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn line_classes(&self) -> &[K0Class] {
        &self.line_classes
    }

    pub fn elements(&self) -> &[K0Class] {
        &self.elements
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    /// The unique element of the perpendicular sublattice reducing to the
    /// given ZI vector mod delta.
    pub fn lift_mod_delta(&self, zi: &[i64]) -> Option<K0Class> {
        let m = IMat::from_cols(
            &self.line_classes.iter().map(|c| c.zi().to_vec()).collect::<Vec<_>>(),
        );
        let sol = to_ints(solve(&m, zi)?)?;
        let mut out = zero_like(&self.line_classes[0]);
        for (a, c) in sol.iter().zip(&self.line_classes) {
            out = &out + &c.scaled(*a);
        }
        Some(out)
    }
}

fn zero_like(c: &K0Class) -> K0Class {
    K0Class::from_parts(vec![0; c.zi().len()], 0)
}

fn to_ints(sol: Vec<BigRational>) -> Option<Vec<i64>> {
    sol.into_iter()
        .map(|r| if r.denom().is_one() { r.numer().to_i64() } else { None })
        .collect()
}

/// Integer coordinates of target in the given list of classes, solving over
/// the full (ZI, delta) coordinates; None if no integer solution exists.
pub fn express_in_basis(basis: &[K0Class], target: &K0Class) -> Option<Vec<i64>> {
    let cols: Vec<Vec<i64>> = basis
        .iter()
        .map(|c| {
            let mut col = c.zi().to_vec();
            col.push(c.n_delta());
            col
        })
        .collect();
    let m = IMat::from_cols(&cols);
    let mut rhs = target.zi().to_vec();
    rhs.push(target.n_delta());
    to_ints(solve_rectangular(&m, &rhs)?)
}

/// Transport of the simple-sheaf classes {[O], [S_ij]} into the
/// perpendicular sublattice: each bar-class is solved against the
/// bar-line-bundle basis and re-assembled with delta components.
pub fn transported_basis(w: &WeightData, x: &LVector, side: Side) -> TransportedBasis {
    let line_classes: Vec<K0Class> = twist_catalog(w)
        .iter()
        .map(|y| {
            let twisted = match side {
                Side::Right => x - y,
                Side::Left => x + y,
            };
            class_of_line_bundle(w, &twisted)
        })
        .collect();
    let m = IMat::from_cols(
        &line_classes.iter().map(|c| c.zi().to_vec()).collect::<Vec<_>>(),
    );
    let unimodular = m.is_unimodular();

    let mut catalog: Vec<K0Class> = vec![class_of_line_bundle(w, &LVector::zero(w.arms()))];
    for (i, j) in w.arm_vertices() {
        catalog.push(class_of_torsion(w, i, i64::from(j), 1).unwrap());
    }

    let elements = catalog
        .iter()
        .map(|s| {
            let sol = to_ints(solve(&m, s.zi()).expect("line-bundle classes span ZI mod delta"))
                .expect("transport solve must be integral");
            let mut out = zero_like(s);
            for (a, c) in sol.iter().zip(&line_classes) {
                out = &out + &c.scaled(*a);
            }
            out
        })
        .collect();

    TransportedBasis { x: x.normal_form(w), side, line_classes, elements, unimodular }
}
