//! Supersingular isogeny graphs with level structure.

pub mod arith;
pub mod cli;
pub mod curve;
pub mod error;
pub mod hecke;
pub mod modgroup;
pub mod ssgraph;

pub use error::{Error, Result};
