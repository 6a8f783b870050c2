//! Exact computer algebra for determinantal hyperedge ideals arising from
//! conditional-independence statements with hidden variables.

pub mod error;
pub mod grid;
pub mod groebner;
pub mod ideals;
pub mod poly;
pub mod proofcheck;
pub mod report;
pub mod simplicial;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};

/// Version tag written into every JSON artifact.
pub const SCHEMA: &str = "cia/1";
