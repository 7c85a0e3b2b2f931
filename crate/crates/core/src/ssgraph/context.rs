//! Per-(p, N) curve data shared by every level structure of modulus N:
//! one reference basis per supersingular j and the transition matrices of
//! degree-l isogenies between reference bases.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;

use crate::arith::fp::{gcd, is_prime};
use crate::arith::{primitive_root_of_unity, FieldElem};
use crate::curve::{
    automorphism_matrices, ell_kernels, isomorphisms, torsion_field, velu, TorsionBasis, BASIS_SEED,
};
use crate::error::{Error, Result};
use crate::modgroup::ModMatrix;

use super::enumerate::{ss_j_enumerate, SupersingularJ};

/// Reference data over one j-invariant.
#[derive(Clone, Debug)]
pub struct JData {
    pub ss: SupersingularJ,
    /// Basis of E[N] with e_N(P, Q) equal to the context's zeta.
    pub basis: TorsionBasis,
    /// A_alpha with alpha(B) = B A_alpha, one per automorphism.
    pub aut_matrices: Vec<ModMatrix>,
}

/// psi(B_j) = B_target M for the isogeny psi with one of the l + 1
/// kernels at j, followed by the isomorphism onto the target's model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub target: usize,
    pub matrix: ModMatrix,
}

#[derive(Debug)]
pub struct LevelContext {
    p: u64,
    n: u32,
    zeta: FieldElem,
    js: Vec<JData>,
    by_j: BTreeMap<FieldElem, usize>,
    transitions: Mutex<HashMap<u64, Arc<Vec<Vec<Transition>>>>>,
}

static CONTEXTS: LazyLock<Mutex<HashMap<(u64, u32), Arc<LevelContext>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl LevelContext {
    pub fn new(p: u64, n: u32) -> Result<LevelContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || gcd(p, u64::from(n)) != 1 {
            return Err(Error::NotCoprime {
                level: n,
                what: "characteristic",
                value: p,
            });
        }
        let ss = ss_j_enumerate(p)?;
        let m = crate::curve::torsion_field_degree(&ss[0].curve, n)?;
        let zeta = primitive_root_of_unity(&torsion_field(p, m)?, u64::from(n))?;
        let js = ss
            .into_par_iter()
            .map(|s| {
                let basis = TorsionBasis::new(&s.curve, n, BASIS_SEED)?;
                let basis = if n > 1 {
                    basis.normalized(&zeta)?
                } else {
                    basis
                };
                let aut_matrices = automorphism_matrices(&s.curve, &basis)?;
                Ok(JData {
                    ss: s,
                    basis,
                    aut_matrices,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let by_j = js
            .iter()
            .enumerate()
            .map(|(i, d)| (d.ss.j.clone(), i))
            .collect();
        Ok(LevelContext {
            p,
            n,
            zeta,
            js,
            by_j,
            transitions: Mutex::new(HashMap::new()),
        })
    }

    /// Process-wide shared context.
    pub fn shared(p: u64, n: u32) -> Result<Arc<LevelContext>> {
        if let Some(c) = CONTEXTS.lock().expect("poisoned").get(&(p, n)) {
            return Ok(c.clone());
        }
        let c = Arc::new(Self::new(p, n)?);
        Ok(CONTEXTS
            .lock()
            .expect("poisoned")
            .entry((p, n))
            .or_insert(c)
            .clone())
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }

    pub fn js(&self) -> &[JData] {
        &self.js
    }

    pub fn j_index(&self, j: &FieldElem) -> Option<usize> {
        self.by_j.get(j).copied()
    }

    /// Transition matrices for every (j, kernel) pair, computed once per l.
    pub fn transitions(&self, ell: u64) -> Result<Arc<Vec<Vec<Transition>>>> {
        if let Some(t) = self.transitions.lock().expect("poisoned").get(&ell) {
            return Ok(t.clone());
        }
        if !is_prime(ell) || ell == self.p || u64::from(self.n) % ell == 0 {
            return Err(Error::BadDegree(ell));
        }
        let t: Vec<Vec<Transition>> = (0..self.js.len())
            .into_par_iter()
            .map(|i| self.transitions_at(i, ell))
            .collect::<Result<_>>()?;
        let t = Arc::new(t);
        self.transitions
            .lock()
            .expect("poisoned")
            .insert(ell, t.clone());
        Ok(t)
    }

    fn transitions_at(&self, i: usize, ell: u64) -> Result<Vec<Transition>> {
        let src = &self.js[i];
        let e = &src.ss.curve;
        let det = (ell % u64::from(self.n)) as u32;
        ell_kernels(e, ell)?
            .iter()
            .map(|k| {
                let phi = velu(e, &k.generator, ell)?;
                let target = self.j_index(&phi.codomain.j_invariant()).ok_or_else(|| {
                    Error::Internal("isogenous curve is not in the enumeration".into())
                })?;
                let dst = &self.js[target];
                let iso = isomorphisms(&phi.codomain, &dst.ss.curve)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| {
                        Error::Internal("codomain is a nontrivial twist of the model".into())
                    })?;
                let psi = phi.then_iso(&iso);
                let matrix = dst
                    .basis
                    .matrix_of(&psi.eval(&src.basis.p), &psi.eval(&src.basis.q))?;
                // e(psi P, psi Q) = e(P, Q)^l with a common zeta
                if matrix.det() != det {
                    return Err(Error::Internal(format!(
                        "transition determinant {} != {det}",
                        matrix.det()
                    )));
                }
                Ok(Transition { target, matrix })
            })
            .collect()
    }
}
