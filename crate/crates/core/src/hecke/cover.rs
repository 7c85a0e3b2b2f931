//! Pushforward and pullback along X_H -> X_G, and new/old subspaces.

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::ssgraph::VertexCover;

use super::linalg::{contained, mat_vec, right_kernel, span_rank, IntMatrix};
use super::module::{HeckeMatrix, SupersingularModule};

/// pi_* as a matrix on coefficient columns: (lower rank) x (upper rank).
pub fn pushforward(c: &VertexCover) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; c.upper.len()]; c.lower.len()];
    for (h, &g) in c.map.iter().enumerate() {
        m[g][h] = 1;
    }
    m
}

/// pi^* as a matrix on coefficient columns: (upper rank) x (lower rank),
/// with multiplicity w(pi(h)) / w(h) at h.
pub fn pullback(c: &VertexCover) -> Result<Vec<Vec<i64>>> {
    let mut m = vec![vec![0i64; c.lower.len()]; c.upper.len()];
    for (h, e) in c.multiplicities().iter().enumerate() {
        if !e.is_integer() {
            return Err(Error::Internal(format!("fractional multiplicity {e}")));
        }
        m[h][c.map[h]] = e.to_integer();
    }
    Ok(m)
}

fn big(m: &[Vec<i64>]) -> IntMatrix {
    super::linalg::to_big(m)
}

/// <pi^* x, y>_upper = <x, pi_* y>_lower on the given vectors.
pub fn adjoint_on(c: &VertexCover, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
    let up = SupersingularModule::from_vertices(c.upper.vertices())?;
    let low = SupersingularModule::from_vertices(c.lower.vertices())?;
    let lhs = up.inner_product_int(&mat_vec(&big(&pullback(c)?), x), y)?;
    let rhs = low.inner_product_int(x, &mat_vec(&big(&pushforward(c)), y))?;
    Ok(lhs == rhs)
}

/// Intersection of the kernels of pi_* inside the degree-zero divisors.
pub fn new_subspace(m: &SupersingularModule, covers: &[VertexCover]) -> Result<Vec<Vec<BigInt>>> {
    let n = m.rank();
    let mut rows: IntMatrix = vec![vec![BigInt::from(1); n]];
    for c in covers {
        if c.upper.len() != n {
            return Err(Error::DimensionMismatch(c.upper.len(), n));
        }
        rows.extend(big(&pushforward(c)));
    }
    Ok(right_kernel(&rows, n))
}

/// Span of the pullbacks of degree-zero divisors, reduced to a basis.
pub fn old_subspace(m: &SupersingularModule, covers: &[VertexCover]) -> Result<Vec<Vec<BigInt>>> {
    let n = m.rank();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for c in covers {
        if c.upper.len() != n {
            return Err(Error::DimensionMismatch(c.upper.len(), n));
        }
        let low = SupersingularModule::from_vertices(c.lower.vertices())?;
        let pb = big(&pullback(c)?);
        gens.extend(low.degree_zero_basis().iter().map(|x| mat_vec(&pb, x)));
    }
    Ok(basis_of(gens, n))
}

/// A maximal independent subset, in order.
fn basis_of(gens: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for g in gens {
        if g.iter().all(Zero::is_zero) {
            continue;
        }
        out.push(g);
        if span_rank(&out, n) < out.len() {
            out.pop();
        }
    }
    out
}

/// Gram matrix entries <u, v> over two bases all vanish.
pub fn orthogonal(m: &SupersingularModule, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Result<bool> {
    for u in a {
        for v in b {
            if !m.inner_product_int(u, v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// T(V) is inside V for the span V of `basis`.
pub fn is_stable(t: &HeckeMatrix, basis: &[Vec<BigInt>]) -> bool {
    let n = t.dim();
    let images: Vec<Vec<BigInt>> = basis.iter().map(|v| t.apply_int(v)).collect();
    contained(&images, basis, n)
}
