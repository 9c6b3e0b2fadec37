//! Exact models of the Kac-Moody algebra attached to a star quiver, the
//! exp(ad) and Tits operator calculus on them, and the transport of the
//! twist symmetries of the sheaf-symbol quotient onto Chevalley generators.

mod algebra;
mod omega;
mod operator;
mod phi;
mod tits;
mod xi;

pub use algebra::{
    build_algebra, structure_constants_csv, verify_model_integrity, BasisVector, KMAlgebra,
    LieElement, Mode,
};
pub use omega::{omega_tilde, varpi_element, verify_omega_family};
pub use operator::{diagonal_character, exp_ad, extend_from_generators, LieOperator};
pub use phi::{phi_dictionary, phi_of_e, phi_of_f, phi_of_h, pull_back, verify_phi, PhiDictionary};
pub use tits::{tits_at_vertex, tits_automorphism};
pub use xi::{saturation_depth, verify_tits_realization, xi, xi_with};

#[derive(Debug, thiserror::Error)]
pub enum KacmoodyError {
    #[error("finite mode requires a finite-type star quiver")]
    NotFiniteType,
    #[error("operation is only defined on the finite model")]
    FiniteModeOnly,
    #[error("truncated mode needs height >= 3, got {0}")]
    WindowTooSmall(u32),
    #[error("bracket escapes the height-{0} window")]
    OutsideWindow(u32),
    #[error("adjoint operator is not nilpotent within {0} powers")]
    NilpotencyCapExceeded(usize),
    #[error("generator images do not extend to an automorphism: mismatch at basis pair ({0}, {1})")]
    NotAnAutomorphism(usize, usize),
    #[error("dictionary conflict at {0}: derivation paths disagree")]
    InconsistentDictionary(String),
    #[error("dictionary entry missing for {0}")]
    MissingDictionaryEntry(String),
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Weyl(#[from] weyl::WeylError),
    #[error(transparent)]
    Symbols(#[from] rootcat::RootcatError),
}
