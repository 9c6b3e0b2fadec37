//! Degree lattice and Grothendieck-group coordinates for a weighted
//! projective line with weight sequence p = (p_1, ..., p_t).
//!
//! Arm indices in public interfaces are 1-based; torsion indices j are
//! accepted as arbitrary integers and reduced mod p_i.

mod group;
mod k0;
mod perp;

pub use group::{nf_add, special_elements, LNormalForm, LVector, WeightData};
pub use k0::{
    class_of_line_bundle, class_of_torsion, euler_sym, vertex_count, vertex_index, vertex_list,
    K0Class, Vertex,
};
pub use perp::{
    ext_line_nonzero, hom_line_nonzero, torsion_in_left_perp, torsion_in_right_perp,
    torsion_window_hom, TorsionIdx,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("arm index {i} out of range 1..={t}")]
    ArmIndex { i: usize, t: usize },
}
