//! The eigensystem sieve over kernels of T_l - a, and the spectral check.

use std::fmt::Write;

use nalgebra::{DMatrix, Schur};
use num::{BigInt, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

use crate::ssgraph::VertexCover;

use super::cover::pushforward;
use super::linalg::{columns, mat_vec, primitive, rank_mod_p, right_kernel, to_big, IntMatrix};
use super::module::{HeckeMatrix, SupersingularModule};

/// floor(2 sqrt(l)).
pub fn hasse_bound(ell: u64) -> i64 {
    let mut c = (2.0 * (ell as f64).sqrt()) as i64;
    while (c + 1) * (c + 1) <= 4 * ell as i64 {
        c += 1;
    }
    while c * c > 4 * ell as i64 {
        c -= 1;
    }
    c
}

/// Primitive integer basis of ker(mat^T - a).
pub fn rational_kernel(mat: &[Vec<i64>], a: i64) -> Vec<Vec<BigInt>> {
    let n = mat.len();
    let m: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(mat[j][i] - if i == j { a } else { 0 }))
                .collect()
        })
        .collect();
    right_kernel(&m, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigensystemCandidate {
    pub traces: Vec<(u64, i64)>,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// One entry per cover passed to `flag_new`: the kernel is killed by pi_*.
    pub new_flags: Vec<bool>,
}

/// Restriction of (T - a) to the span of `basis`, solved for coefficients.
fn refine(t: &HeckeMatrix, a: i64, basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = t.dim();
    let images: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|v| {
            t.apply_int(v)
                .into_iter()
                .zip(v)
                .map(|(x, y)| x - y * a)
                .collect()
        })
        .collect();
    let sys = columns(&images, n);
    let cols = columns(basis, n);
    right_kernel(&sys, basis.len())
        .iter()
        .map(|c| primitive(mat_vec(&cols, c)))
        .collect()
}

/// Cheap exclusion of a that are not eigenvalues: rank of mat^T - a modulo a
/// large prime.
fn may_be_eigenvalue(t: &HeckeMatrix, a: i64) -> bool {
    let n = t.dim();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| t.mat[j][i] - if i == j { a } else { 0 })
                .collect()
        })
        .collect();
    rank_mod_p(&m, n) < n
}

/// Candidates whose terminal kernel has dimension at most `max_dim`, with
/// T_l ordered by increasing l. Kernels are intersected inside degree zero.
pub fn sieve(
    m: &SupersingularModule,
    ts: &[HeckeMatrix],
    max_dim: usize,
) -> Result<Vec<EigensystemCandidate>> {
    for t in ts {
        if t.dim() != m.rank() {
            return Err(Error::DimensionMismatch(t.dim(), m.rank()));
        }
    }
    sieve_within(&m.degree_zero_basis(), ts, max_dim)
}

/// The sieve started from the span of `start` (e.g. a new subspace), which
/// must be stable under every T_l.
pub fn sieve_within(
    start: &[Vec<BigInt>],
    ts: &[HeckeMatrix],
    max_dim: usize,
) -> Result<Vec<EigensystemCandidate>> {
    if let Some(t) = ts.iter().find(|t| start.iter().any(|v| v.len() != t.dim())) {
        return Err(Error::DimensionMismatch(start[0].len(), t.dim()));
    }
    let mut ts: Vec<&HeckeMatrix> = ts.iter().collect();
    ts.sort_by_key(|t| t.ell);
    if start.is_empty() {
        return Ok(Vec::new());
    }
    let mut live: Vec<(Vec<(u64, i64)>, Vec<Vec<BigInt>>)> = vec![(Vec::new(), start.to_vec())];
    for (k, t) in ts.iter().enumerate() {
        let c = hasse_bound(t.ell);
        live = live
            .into_par_iter()
            .flat_map_iter(|(traces, basis)| {
                (-c..=c)
                    .filter(|&a| k > 0 || may_be_eigenvalue(t, a))
                    .filter_map(|a| {
                        let v = refine(t, a, &basis);
                        if v.is_empty() {
                            return None;
                        }
                        let mut tr = traces.clone();
                        tr.push((t.ell, a));
                        Some((tr, v))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    Ok(live
        .into_iter()
        .filter(|(_, v)| v.len() <= max_dim)
        .map(|(traces, kernel_basis)| EigensystemCandidate {
            traces,
            kernel_dim: kernel_basis.len(),
            kernel_basis,
            new_flags: Vec::new(),
        })
        .collect())
}

/// Records for each cover whether the candidate lies in its new subspace.
pub fn flag_new(cands: &mut [EigensystemCandidate], covers: &[VertexCover]) {
    let push: Vec<IntMatrix> = covers.iter().map(|c| to_big(&pushforward(c))).collect();
    for c in cands {
        c.new_flags = push
            .iter()
            .map(|m| {
                c.kernel_basis
                    .iter()
                    .all(|v| mat_vec(m, v).iter().all(Zero::is_zero))
            })
            .collect();
    }
}

/// Every kernel vector is an eigenvector of every T_l with its trace.
pub fn is_sound(c: &EigensystemCandidate, ts: &[HeckeMatrix]) -> bool {
    c.traces.iter().all(|&(ell, a)| {
        a.abs() <= hasse_bound(ell)
            && ts.iter().filter(|t| t.ell == ell).all(|t| {
                c.kernel_basis.iter().all(|v| {
                    t.apply_int(v)
                        .iter()
                        .zip(v)
                        .all(|(x, y)| (x - y * a).is_zero())
                })
            })
    })
}

/// Header of primes and one row of traces per candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    pub primes: Vec<u64>,
    pub rows: Vec<Vec<i64>>,
}

impl TraceTable {
    pub fn new(cands: &[EigensystemCandidate]) -> TraceTable {
        let primes = cands
            .first()
            .map(|c| c.traces.iter().map(|t| t.0).collect())
            .unwrap_or_default();
        let rows = cands
            .iter()
            .map(|c| c.traces.iter().map(|t| t.1).collect())
            .collect();
        TraceTable { primes, rows }
    }

    fn line(v: impl Iterator<Item = String>) -> String {
        format!("[{}]", v.map(|x| format!("{x:>4}")).collect::<String>())
    }

    /// Bracketed rows of width-4 right-aligned entries.
    pub fn to_text(&self) -> String {
        let mut s = String::from("Modular form traces of Frobenius:\n");
        let _ = writeln!(s, "{}", Self::line(self.primes.iter().map(u64::to_string)));
        for r in &self.rows {
            let _ = writeln!(s, "{}", Self::line(r.iter().map(i64::to_string)));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let join = |v: Vec<String>| v.join(",");
        let _ = writeln!(
            s,
            "{}",
            join(self.primes.iter().map(|p| format!("a{p}")).collect())
        );
        for r in &self.rows {
            let _ = writeln!(s, "{}", join(r.iter().map(i64::to_string).collect()));
        }
        s
    }
}

/// Float eigenvalues of T on the degree-zero quotient (the eigenvalue l + 1
/// of the degree functional removed once), as complex pairs.
pub fn cuspidal_eigenvalues(t: &HeckeMatrix) -> Result<Vec<(f64, f64)>> {
    let n = t.dim();
    if n <= 1 {
        return Ok(Vec::new());
    }
    let m = DMatrix::from_fn(n, n, |i, j| t.mat[i][j] as f64);
    // machine epsilon as the tolerance can stall on repeated eigenvalues
    let schur = Schur::try_new(m, 1e-12, 100 * n)
        .ok_or_else(|| Error::Internal(format!("Schur form of T_{} did not converge", t.ell)))?;
    let mut ev: Vec<(f64, f64)> = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    let top = t.ell as f64 + 1.0;
    let k = (0..ev.len())
        .min_by(|&a, &b| {
            let da = (ev[a].0 - top).hypot(ev[a].1);
            let db = (ev[b].0 - top).hypot(ev[b].1);
            da.total_cmp(&db)
        })
        .expect("nonempty");
    ev.remove(k);
    Ok(ev)
}

/// Whether all cuspidal eigenvalues have modulus at most 2 sqrt(l) + tol.
pub fn within_ramanujan(t: &HeckeMatrix, tol: f64) -> Result<bool> {
    let b = 2.0 * (t.ell as f64).sqrt() + tol;
    Ok(cuspidal_eigenvalues(t)?
        .iter()
        .all(|&(re, im)| re.hypot(im) <= b))
}
