//! Exact computations in `p`-localized double Burnside modules: composition, marks,
//! saturated fusion systems, characteristic idempotents and the Mackey functor
//! restriction/transfer maps they induce.

pub mod burnside;
pub mod catalog;
pub mod charidem;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod linalg;
pub mod mackey;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod scenario;
pub mod stability;

pub use error::{Error, Result};
