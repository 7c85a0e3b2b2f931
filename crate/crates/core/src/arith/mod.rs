//! Finite field arithmetic: F_p helpers, F_{p^k}, polynomials, embeddings.

mod embed;
mod field;
pub mod fp;
mod poly;

pub use embed::Embedding;
pub use field::{primitive_root_of_unity, Field, FieldDesc, FieldElem};
pub use poly::Poly;
