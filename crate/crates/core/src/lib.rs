//! Hamiltonicity of locally finite claw-free graphs: families, structure
//! checks, and certificate construction for Hamilton circles and end-faithful
//! spanning trees.

pub mod cli;
pub mod detect;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamilton;
pub mod oracle;
pub mod structure;

pub use error::{Error, Result};
