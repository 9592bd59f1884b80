//! 2-page book drawings of complete graphs.
//!
//! A drawing of `K_n` with all vertices on a line and each edge in one of
//! the two half-planes is recorded as an upper-triangular two-colored
//! matrix ([`Drawing`]). On top of that the crate provides crossing counts
//! (directly and through k-edge identities), the `4n`-element symmetry
//! group with canonical forms, constructions of crossing-optimal drawings,
//! exhaustive enumeration of their symmetry classes, and structural checks.

pub mod analysis;
pub mod construct;
pub mod count;
pub mod drawing;
pub mod enumerate;
pub mod kedge;
pub mod transform;

pub use count::{binomial, z_number};
pub use drawing::{Color, Drawing, DrawingError, EntryMap, MAX_N};
pub use kedge::{K4Census, KEdgeProfile};
pub use transform::GroupElement;
