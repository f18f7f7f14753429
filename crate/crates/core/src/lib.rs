//! Exact arithmetic for Sarkisov involutions of `P^3` and the cubic
//! threefold: weighted blowups, the Picard lattice of a curve blowup, the
//! anticanonical ring, curve catalogs, and words in the free product
//! `G * (*_J Z/2)`.
//!
//! Everything is computed over `Z` or `Q`; there is no floating point.

pub mod cli;
pub mod curve_catalog;
pub mod error;
pub mod graded_poly;
pub mod picard_lattice;
pub mod verify;
pub mod weighted_blowup;
pub mod word_engine;

pub use curve_catalog::{Catalog, CatalogEntry, CurveClass, HilbertBounds};
pub use error::{Error, Result};
pub use graded_poly::{ChartPullback, GradedPolynomial};
pub use picard_lattice::{AmbientSpace, BlowupLattice, DivisorClass, FlopMatrix, ProfileRow, RingProfile};
pub use weighted_blowup::{PositivityCertificate, WeightedBlowup};
pub use word_engine::{IndexPermutation, Letter, NonInnerCertificate, Word, WordEngine};

/// Exact rational number.
pub type Rational = num_rational::BigRational;
