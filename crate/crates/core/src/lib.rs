//! Blocks of the Brauer algebra `B_n(δ)` through the dot action of the Weyl
//! group of type `D_n` and its affine version.
//!
//! Weights use the transposed convention: the geometric weight `λ` labels
//! the simple module `L(λ^T)`, and box contents are `c = i - j`.

pub mod abacus;
pub mod blocks;
pub mod diagrams;
pub mod error;
pub mod projection;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use weights::{Characteristic, Context, Partition, Weight};
pub use weyl::{OrbitWitness, ReflectionGen, ReflectionWord};
