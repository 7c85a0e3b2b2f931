//! Hecke modules on supersingular points.

mod cover;
pub mod linalg;
mod module;
mod sieve;
#[cfg(test)]
mod tests;

pub use cover::{
    adjoint_on, is_stable, new_subspace, old_subspace, orthogonal, pullback, pushforward,
};
pub use module::{
    hecke_matrix, module_from, verify_suite, HeckeMatrix, Rational, SupersingularModule,
    VerifyReport,
};
pub use sieve::{
    cuspidal_eigenvalues, flag_new, hasse_bound, is_sound, rational_kernel, sieve, sieve_within,
    within_ramanujan, EigensystemCandidate, TraceTable,
};
