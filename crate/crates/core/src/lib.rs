//! Combinatorial 3-sphere triangulations, their Regge action and the
//! edge-count spectrum, plus the nearly-flat vacuum model built on top.

pub mod census;
pub mod exec;
pub mod homology;
pub mod isosig;
pub mod nearly_flat;
pub mod pachner;
pub mod recognition;
pub mod regge;
pub mod spectrum;
pub mod perm;
pub mod triangulation;
pub mod format;
pub mod union_find;

pub use perm::Perm4;
pub use triangulation::{FVector, Gluing, Triangulation, TriangulationError, ValidityMode};

/// Exact rational used for mean edge degrees and coordination numbers.
pub type Rational = num_rational::Ratio<u64>;
