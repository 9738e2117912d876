//! Exact premodular data for small fusion rings.
//!
//! The crate is organized bottom-up: [`exact_algebra`] supplies cyclotomic arithmetic,
//! [`fusion_ring`] and [`premodular`] model Grothendieck-level data and the equations
//! relating fusion rules, dimensions, twists and S-matrices, [`groups`] provides
//! permutation groups with exact character tables, and [`classify`] runs the rank-5
//! case analysis and produces a [`classify::ClassificationReport`].

pub mod classify;
pub mod data;
pub mod exact_algebra;
pub mod fusion_ring;
pub mod groups;
pub mod premodular;

pub use exact_algebra::{CyclotomicNumber, IntPolynomial, Rational, RootOfUnity};
