//! Symbolic catalog of the root category of a weighted projective line:
//! line bundles O(x) and exceptional torsion segments S_{ij}^{(k)} with shift
//! tracked mod 2. Rule-driven implementations of the object-level mutations
//! R_x, the quotient Lie-algebra automorphisms Upsilon_x, the partial Hall
//! Lie bracket, sign twists, and exp(ad) operators, with the braid and
//! triple-exponential theorems verified generator by generator.

mod bracket;
mod combo;
mod expad;
mod mutate;
mod symbol;
mod upsilon;

pub use bracket::partial_bracket;
pub use combo::SymbolCombination;
pub use expad::{
    exp_ad_line_bundle, exp_ad_symbol, exp_triple_line, exp_triple_symbol, verify_exp_ad_theorems,
    SignTwist,
};
pub use mutate::mutate_object;
pub use symbol::{generator_catalog, SheafSymbol, SymbolKind};
pub use upsilon::{upsilon, upsilon_combination, verify_upsilon_braid};

#[derive(Debug, thiserror::Error)]
pub enum RootcatError {
    #[error("torsion symbol needs arm weight >= 2 and length in 1..=p-1, got arm {arm} length {k}")]
    NotExceptional { arm: usize, k: i64 },
    #[error("symbol outside the rule table: {0}")]
    OutsideTable(String),
    #[error("bracket not determined by the rule tables: {0}")]
    UndefinedBracket(String),
    #[error("adjoint series left the integer lattice: {0}")]
    NonIntegralSeries(String),
    #[error("adjoint series exceeded the nilpotency bound on {0}")]
    SeriesDidNotTerminate(String),
    #[error("object is not in the right perpendicular category of O(x): {0}")]
    NotInPerp(String),
    #[error("sign twist needs arm weight >= 2 at the mutated arm, got weight 1 at arm {0}")]
    DegenerateArm(usize),
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
}
