//! Exact rational geometry for lattice-face polytopes.
//!
//! Everything in this crate runs over arbitrary-precision rationals; there is
//! no floating point anywhere. The crate provides:
//!
//! - [`linalg`]: determinants, affine hulls, and primitive integer hyperplane
//!   equations over `Q`.
//! - [`polytope`]: V-representation polytopes with exact vertex extraction,
//!   facet enumeration, coordinate-dropping projections, vertical fibers,
//!   volumes, and pulling triangulations.
//! - [`latticeface`]: the lattice-face and projection-general-position
//!   predicates, nonnegative-part lattice counting, and the search for
//!   triangulations into lattice-face simplices.
//! - [`transform`]: the two-stage pipeline that maps any full-dimensional
//!   rational polytope onto a lattice-face polytope (a unit upper-triangular
//!   integer shear followed by a diagonal integer scaling).
//! - [`ehrhart`]: exact lattice-point counting in dilates, the
//!   projection-volume Ehrhart polynomial, and an independent interpolation
//!   oracle.

pub mod combinatorics;
pub mod ehrhart;
pub mod error;
pub mod latticeface;
pub mod linalg;
mod lp;
pub mod multiset;
pub mod polytope;
pub mod rational;
pub mod transform;

pub use error::{Error, Result};
pub use rational::{Int, Rat};
