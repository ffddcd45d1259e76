//! Texture quantifiers built on Hilbert-curve scanning.
//!
//! An image is read as a 1D series along a planar Hilbert curve, the series is
//! symbolized into Bandt–Pompe ordinal patterns, and the pattern distribution
//! is summarized by three numbers: normalized permutation entropy, Jensen–Shannon
//! statistical complexity and a Lehmer-ordered discrete Fisher information
//! measure. Those triples place textures on the complexity–entropy and
//! Fisher–entropy planes.
//!
//! With the default `parallel` feature, pattern counting and batch analysis run
//! on rayon; without it every path is sequential and produces identical output.

pub mod batch;
pub mod error;
pub mod grid;
pub mod hilbert;
pub mod imageio;
pub mod ordinal;
pub mod par;
pub mod patterns2d;
pub mod quantifiers;
pub mod synth;

pub use error::{Error, Result};
pub use grid::{ScalarGrid, Sequence};
pub use hilbert::HilbertMap;
pub use ordinal::{OrdinalDistribution, OrdinalPattern};
pub use quantifiers::{ComplexityBounds, InfoTriple};
