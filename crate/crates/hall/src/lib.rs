//! Ringel-Hall computations over finite fields for path and cyclic quivers:
//! structure constants by brute-force submodule enumeration and by a
//! closed-form tally, skew commutators in the free product with the torus,
//! a normal-form engine for words in generators, numerical equality oracles,
//! and the symmetry verifications built on top of them.

mod brute;
mod cache;
mod gf;
mod hallalg;
mod isoclass;
mod quiver;
mod tally;
mod word;
mod zrep;

pub use brute::BRUTE_Q;
pub use cache::HallCache;
pub use hallalg::{hall_product, iterated_skew, skew_commutator, HallCtx, HallElement, Nesting};
pub use isoclass::{enumerate_isoclasses, segments_within, IsoClass, Seg, DIM_ENTRY_CAP};
pub use quiver::{EvalQuiver, Shape};
pub use word::{
    normalize, DoubleWord, Flavor, HomOp, LetterEval, LetterId, LetterSpec, Presentation, Side,
    TKey, Triang, Wl,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HallError {
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("dimension guard: {0}")]
    DimGuard(String),
    #[error("bad ground field size: {0}")]
    BadQ(String),
    #[error("word does not normalize to triangular form: {0}")]
    NotTriangular(String),
    #[error("exact-mode budget exceeded: {0}")]
    ExactBudget(String),
    #[error("infeasible request: {0}")]
    Infeasible(String),
}
