//! Exact-arithmetic engine for Hom Lie triple systems with finite group
//! actions: axiom verification, equivariant cohomology, central extensions
//! and formal deformations.

pub mod error;
pub mod exactlin;
pub mod extensions;
pub mod cohomology;
pub mod deformations;
pub mod structures;
pub mod tensor;

pub use error::{Error, Result};
