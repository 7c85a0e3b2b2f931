//! The divisor module on supersingular points, its inner product and the
//! Hecke operators T_l given by isogeny graphs.

use num::rational::Ratio;
use num::{BigInt, Integer, Zero};

use crate::error::{Error, Result};
use crate::ssgraph::{EnhancedVertex, LevelGraph, VertexSet};

use super::linalg::primitive;

pub type Rational = Ratio<i64>;

/// M(S_G) = sum of Z [E] over the vertices, with <[E],[E]> = w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularModule {
    pub vertices: Vec<EnhancedVertex>,
    pub weights: Vec<Rational>,
}

impl SupersingularModule {
    pub fn from_vertices(vertices: &[EnhancedVertex]) -> Result<SupersingularModule> {
        if vertices.is_empty() {
            return Err(Error::Internal("empty vertex set".into()));
        }
        Ok(SupersingularModule {
            vertices: vertices.to_vec(),
            weights: vertices.iter().map(EnhancedVertex::weight).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.rank() {
            return Err(Error::DimensionMismatch(n, self.rank()));
        }
        Ok(())
    }

    /// sum x_i y_i w_i.
    pub fn inner_product(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(x.iter()
            .zip(y)
            .zip(&self.weights)
            .map(|((a, b), w)| a * b * w)
            .sum())
    }

    pub fn inner_product_int(&self, x: &[BigInt], y: &[BigInt]) -> Result<Ratio<BigInt>> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(x.iter()
            .zip(y)
            .zip(&self.weights)
            .map(|((a, b), w)| {
                Ratio::new(a * b * BigInt::from(*w.numer()), BigInt::from(*w.denom()))
            })
            .sum())
    }

    /// Eis = sum [E] / w.
    pub fn eisenstein(&self) -> Vec<Rational> {
        self.weights.iter().map(|w| w.recip()).collect()
    }

    /// Eis rescaled to a primitive integer vector.
    pub fn eisenstein_integral(&self) -> Vec<BigInt> {
        let eis = self.eisenstein();
        let l = eis.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        primitive(
            eis.iter()
                .map(|x| BigInt::from(x.numer() * (l / x.denom())))
                .collect(),
        )
    }

    /// Basis [E_0] - [E_i] of the degree-zero divisors.
    pub fn degree_zero_basis(&self) -> Vec<Vec<BigInt>> {
        (1..self.rank())
            .map(|i| {
                let mut v = vec![BigInt::zero(); self.rank()];
                v[0] = 1.into();
                v[i] = (-1).into();
                v
            })
            .collect()
    }
}

pub fn module_from(vs: &VertexSet) -> Result<SupersingularModule> {
    SupersingularModule::from_vertices(vs.vertices())
}

/// T_l with stored rows indexed by source vertex; it acts on coefficient
/// vectors through the transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    pub ell: u64,
    pub mat: Vec<Vec<i64>>,
    /// Permutation induced by the scalar l (the diamond operator <l>).
    pub diamond: Vec<usize>,
}

pub fn hecke_matrix(g: &LevelGraph) -> HeckeMatrix {
    HeckeMatrix {
        ell: g.ell,
        mat: g.dense(),
        diamond: g.diamond.clone(),
    }
}

impl HeckeMatrix {
    pub fn dim(&self) -> usize {
        self.mat.len()
    }

    /// T x = mat^T x.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| x[i] * Rational::from(self.mat[i][j])).sum())
            .collect()
    }

    pub fn apply_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| self.mat[i][j] != 0)
                    .map(|i| &x[i] * self.mat[i][j])
                    .sum()
            })
            .collect()
    }

    pub fn product(&self, o: &HeckeMatrix) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.mat[i][k] * o.mat[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    pub fn commutes_with(&self, o: &HeckeMatrix) -> bool {
        self.product(o) == o.product(self)
    }
}

/// Outcome of the exact checks on a family of Hecke matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub row_sums: bool,
    /// mat(i,j) w_j = mat(j, <l> i) w_i; the plain Hermitian identity when <l> is trivial.
    pub hermitian: bool,
    pub commute: bool,
    pub eisenstein: bool,
}

impl VerifyReport {
    pub fn all(&self) -> bool {
        self.row_sums && self.hermitian && self.commute && self.eisenstein
    }
}

pub fn verify_suite(m: &SupersingularModule, ts: &[HeckeMatrix]) -> Result<VerifyReport> {
    let n = m.rank();
    for t in ts {
        m.check_dim(t.dim())?;
    }
    let w = &m.weights;
    let row_sums = ts.iter().all(|t| {
        t.mat
            .iter()
            .all(|r| r.iter().sum::<i64>() == t.ell as i64 + 1)
    });
    // <T e_i, e_j> = mat(i,j) w_j; the dual edges j -> <l> i give mat(j, <l> i) w_i
    let hermitian = ts.iter().all(|t| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                Rational::from(t.mat[i][j]) * w[j] == Rational::from(t.mat[j][t.diamond[i]]) * w[i]
            })
        })
    });
    let commute = ts
        .iter()
        .enumerate()
        .all(|(a, s)| ts[a + 1..].iter().all(|t| s.commutes_with(t)));
    let eis = m.eisenstein();
    let eisenstein = ts.iter().all(|t| {
        let scale = Rational::from(t.ell as i64 + 1);
        t.apply(&eis).iter().zip(&eis).all(|(a, b)| *a == b * scale)
    });
    Ok(VerifyReport {
        row_sums,
        hermitian,
        commute,
        eisenstein,
    })
}
