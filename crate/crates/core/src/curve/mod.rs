//! Elliptic curves over finite fields: models, group law, torsion bases,
//! Weil pairing, Vélu isogenies, and matrices of automorphisms and Frobenius.

mod iso;
mod isogeny;
mod models;
mod pairing;
mod torsion;
mod weierstrass;

pub use iso::{automorphisms, isomorphisms, Iso};
pub use isogeny::{ell_kernels, isogeny_eval, velu, Isogeny, Kernel};
pub use models::{
    curve_from_j, curve_order, fp2, frobenius_sign, is_supersingular, primitive_element,
    supersingular_model, SAMPLE_SEED,
};
pub use pairing::{dlog_mu, miller, weil_pairing};
pub use torsion::{
    automorphism_matrices, frobenius_matrix, is_primitive_root, torsion_field,
    torsion_field_degree, TorsionBasis, BASIS_SEED,
};
pub use weierstrass::{Curve, Point};

#[cfg(test)]
mod tests;
