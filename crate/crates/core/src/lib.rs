//! Exact computations in the inverse semigroup of partial automorphisms of the
//! binary rooted tree, built as iterated partial wreath powers of the
//! two-point inverse symmetric semigroup.
//!
//! * [`base_i2`]: the seven partial bijections of `{1, 2}`.
//! * [`wreath`]: elements of level `n`, products, counting, enumeration and
//!   exact uniform sampling.
//! * [`tree_action`]: vertex maps, leaf actions and action matrices.
//! * [`spectral`]: cycle structure, ultimate rank and spectral measures.
//! * [`statistics`]: total ranks, ultimate-rank bounds and the convergence
//!   experiment for the spectral measure of a random element.

pub mod base_i2;
pub mod error;
pub mod rng;
pub mod spectral;
pub mod statistics;
pub mod tree_action;
pub mod wreath;

pub use base_i2::I2Element;
pub use error::{Error, Result};
pub use spectral::{SpectralMeasure, TestFunction};
pub use tree_action::{ActionMatrix, PartialTreeAutomorphism, VertexId};
pub use wreath::{BigCount, WreathElement};
