//! Star-shaped quivers, their Weyl groups as integer reflection matrices,
//! root enumeration, and the linear-quiver reflection identities.

mod element;
mod linear;
mod quiver;
mod reflect;
mod roots;

pub use element::WeylElement;
pub use linear::{an_cartan, projective_class, verify_linear_identities};
pub use quiver::StarQuiver;
pub use reflect::{braid_order_at, pairing, reflection_in_vector, simple_reflection_at};
pub use roots::{detect_finite_type, enumerate_roots_from_cartan, DynkinType, Root, RootSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("not a real root: self-pairing {0} != 2")]
    NotRealRoot(i64),
    #[error("braid order exceeds cap {0}")]
    BraidCapExceeded(u32),
    #[error("braid order of a vertex with itself is undefined")]
    SameVertex,
}
