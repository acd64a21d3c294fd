//! Submodule lattices of finite modules and their intersection graphs.
//!
//! Two models are supported: semisimple modules given by their isotypic
//! components, and explicit finite abelian groups with a matrix action.
//! On top of the lattice the crate builds the intersection graph, computes
//! exact invariants, and checks closed-form counts and structural
//! predictions against brute force.

pub mod abelian;
pub mod bits;
pub mod bounds;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod goursat;
pub mod graph;
pub mod matrix;
pub mod module;
pub mod specfile;
pub mod harness;

pub use error::{Error, Result};
