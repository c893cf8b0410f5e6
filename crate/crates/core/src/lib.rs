//! Exact computation with subdifferentials of pointwise-supremum convex
//! functions on ℝⁿ.
//!
//! Everything is carried out in exact rational arithmetic over polyhedral
//! sets, so set identities are decided, not approximated. The crate is
//! organized in four layers:
//!
//! * [`polyrat`] — rational scalars/vectors and a polyhedral kernel
//!   (H/V-representation conversion, intersection, Minkowski sums, closed
//!   convex hulls of unions, support functions, projection).
//! * [`convfun`] — representations of the data functions: max-of-affine
//!   plus a polyhedral indicator with optional point-value overrides, and a
//!   small catalog of 1-D analytic functions.
//! * [`subdiff`] — subdifferentials, ε-subdifferentials, normal cones,
//!   nearby-point enlargements with certified inner/outer sandwiches, and
//!   approximate-to-exact subgradient witnesses.
//! * [`formulas`] — right-hand-side constructors for the supremum-rule
//!   formulas, ε-grid intersection, and set-identity verdicts.

pub mod convfun;
pub mod error;
pub mod formulas;
pub mod polyrat;
pub mod subdiff;

pub use error::Error;
pub use polyrat::rat::{ExtRat, Rat};
pub use polyrat::{GeneratorSystem, HalfspaceSystem, Polyhedron, RatVec};

#[cfg(test)]
mod shareability {
    fn assert_send_sync<T: Send + Sync>() {}

    /// Values are immutable after construction with idempotent
    /// representation caches, so they may move freely between workers.
    #[test]
    fn values_are_shareable() {
        assert_send_sync::<crate::Polyhedron>();
        assert_send_sync::<crate::convfun::ConvexFunction>();
        assert_send_sync::<crate::convfun::FunctionFamily>();
        assert_send_sync::<crate::subdiff::EnlargementSandwich>();
    }
}
