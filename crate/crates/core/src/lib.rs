//! Exact hyperspace calculus for closed convex polyhedra in `R^n` with the
//! sup norm.

pub mod cones;
pub mod error;
pub mod exact;
pub mod json;
pub mod lp;
pub mod metric;
pub mod polyhedra;
pub mod sample;
pub mod witness;

pub use error::{GeomError, Result};
pub use exact::{ExtRat, Rat, RatMat, RatVec};
pub use polyhedra::{HRep, Polyhedron, VRep};
