//! Exact rational polyhedral kernel.
//!
//! All values are immutable after construction; representation conversions
//! are cached idempotently, so everything here is freely shareable across
//! threads.

pub mod dd;
pub mod linalg;
pub mod polyhedron;
pub mod rat;
pub mod subspace;

pub use linalg::RatVec;
pub use polyhedron::{closed_conv_union, GeneratorSystem, Halfspace, HalfspaceSystem, Polyhedron};
pub use subspace::Subspace;
