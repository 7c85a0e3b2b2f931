//! Vertex sets as double cosets over each j, and the directed l-isogeny
//! multigraph on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::rational::Ratio;
use rayon::prelude::*;

use crate::arith::fp::{gcd, is_prime};
use crate::arith::FieldElem;
use crate::error::{Error, Result};
use crate::modgroup::{CosetTable, DoubleCosetSpace, ModMatrix, OpenSubgroup};

use super::context::LevelContext;
use super::enumerate::eichler_mass;

/// An enhanced supersingular curve (E_j, B_j rep G) up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedVertex {
    pub j: FieldElem,
    pub rep: ModMatrix,
    /// #{alpha in Aut(E_j) : alpha fixes the level structure}.
    pub stabilizer: u32,
    pub aut_order: usize,
}

impl EnhancedVertex {
    /// <[E],[E]> = |Aut(E, BG)| / 2.
    pub fn weight(&self) -> Ratio<i64> {
        Ratio::new(i64::from(self.stabilizer), 2)
    }
}

/// The vertices of X_G over F_p-bar for one group G, laid out j by j.
#[derive(Clone, Debug)]
pub struct VertexSet {
    context: Arc<LevelContext>,
    group: OpenSubgroup,
    spaces: Vec<DoubleCosetSpace>,
    offsets: Vec<usize>,
    vertices: Vec<EnhancedVertex>,
}

/// The vertex set of X_G at p. G is used at its stored modulus.
pub fn vertex_set(g: &OpenSubgroup, p: u64) -> Result<VertexSet> {
    let ctx = LevelContext::shared(p, g.modulus())?;
    VertexSet::new(ctx, g)
}

impl VertexSet {
    pub fn new(context: Arc<LevelContext>, g: &OpenSubgroup) -> Result<VertexSet> {
        let n = context.modulus();
        if g.modulus() != n {
            return Err(Error::ModulusMismatch(n, g.modulus()));
        }
        let table = Arc::new(CosetTable::new(g));
        let spaces = context
            .js()
            .par_iter()
            .map(|d| DoubleCosetSpace::new(table.clone(), &d.aut_matrices))
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(spaces.len());
        let mut vertices = Vec::new();
        for (d, space) in context.js().iter().zip(&spaces) {
            offsets.push(vertices.len());
            for (i, rep) in space.reps().iter().enumerate() {
                vertices.push(EnhancedVertex {
                    j: d.ss.j.clone(),
                    rep: *rep,
                    stabilizer: space.stabilizer(i),
                    aut_order: d.ss.aut_order,
                });
            }
        }
        let vs = VertexSet {
            context,
            group: g.clone(),
            spaces,
            offsets,
            vertices,
        };
        let found = vs.mass();
        let expected =
            eichler_mass(vs.context.characteristic()) * Ratio::from_integer(g.index() as i64);
        if found != expected {
            return Err(Error::MassMismatch {
                found: found.to_string(),
                expected: expected.to_string(),
            });
        }
        Ok(vs)
    }

    pub fn context(&self) -> &Arc<LevelContext> {
        &self.context
    }

    pub fn group(&self) -> &OpenSubgroup {
        &self.group
    }

    pub fn vertices(&self) -> &[EnhancedVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sum of 1/w over the vertices.
    pub fn mass(&self) -> Ratio<i64> {
        self.vertices.iter().map(|v| v.weight().recip()).sum()
    }

    /// Vertices lying over the j with the given index in the context.
    pub fn fibre(&self, j_index: usize) -> std::ops::Range<usize> {
        let start = self.offsets[j_index];
        start..start + self.spaces[j_index].len()
    }

    /// Index of the vertex (E_j, B_j m G).
    pub fn locate(&self, j_index: usize, m: &ModMatrix) -> usize {
        self.offsets[j_index] + self.spaces[j_index].index_of(m)
    }

    /// Index of the context j-invariant under vertex i.
    pub fn j_index_of(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    /// The l-isogeny graph on this vertex set.
    pub fn graph(&self, ell: u64) -> Result<LevelGraph> {
        let n = self.context.modulus();
        if !is_prime(ell) || ell == self.context.characteristic() || gcd(ell, u64::from(n)) != 1 {
            return Err(Error::BadDegree(ell));
        }
        let trans = self.context.transitions(ell)?;
        let rows: Vec<Vec<(usize, u32)>> = (0..self.len())
            .into_par_iter()
            .map(|i| {
                let v = &self.vertices[i];
                let mut row: BTreeMap<usize, u32> = BTreeMap::new();
                for t in &trans[self.j_index_of(i)] {
                    *row.entry(self.locate(t.target, &t.matrix.mul(&v.rep)))
                        .or_default() += 1;
                }
                row.into_iter().collect()
            })
            .collect();
        let scalar = ModMatrix::scalar(n, ell as i64);
        let diamond = (0..self.len())
            .map(|i| self.locate(self.j_index_of(i), &scalar.mul(&self.vertices[i].rep)))
            .collect();
        let g = LevelGraph {
            p: self.context.characteristic(),
            ell,
            group: self.group.label().to_string(),
            modulus: n,
            vertices: self.vertices.clone(),
            rows,
            diamond,
        };
        g.check()?;
        Ok(g)
    }
}

/// Directed multigraph of degree-l isogenies; entry (i, j) counts the
/// kernels at vertex i whose quotient is vertex j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGraph {
    pub p: u64,
    pub ell: u64,
    /// Subgroup spec string.
    pub group: String,
    pub modulus: u32,
    pub vertices: Vec<EnhancedVertex>,
    /// Sparse rows, sorted by column.
    pub rows: Vec<Vec<(usize, u32)>>,
    /// The permutation of vertices induced by the scalar l: the dual of an
    /// edge i -> j ends at diamond[i].
    pub diamond: Vec<usize>,
}

pub fn build_graph(g: &OpenSubgroup, p: u64, ell: u64) -> Result<LevelGraph> {
    vertex_set(g, p)?.graph(ell)
}

impl LevelGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or(0)
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.len()]; self.len()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, c) in row {
                m[i][j] = i64::from(c);
            }
        }
        m
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().flatten().map(|&(_, c)| u64::from(c)).sum()
    }

    pub fn weights(&self) -> Vec<Ratio<i64>> {
        self.vertices.iter().map(EnhancedVertex::weight).collect()
    }

    /// entry(i, j) w_j = entry(j, i) w_i for all i, j. Holds when the scalar
    /// l lies in the group; see [`LevelGraph::check`] for the general form.
    pub fn is_weighted_symmetric(&self) -> bool {
        let w = self.weights();
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().all(|&(j, c)| {
                Ratio::from_integer(i64::from(c)) * w[j]
                    == Ratio::from_integer(i64::from(self.entry(j, i))) * w[i]
            })
        })
    }

    pub fn diamond_is_trivial(&self) -> bool {
        self.diamond.iter().enumerate().all(|(i, &d)| i == d)
    }

    /// Row sums equal l + 1, and entry(i, j) w_j = entry(j, diamond[i]) w_i.
    pub fn check(&self) -> Result<()> {
        if self.rows.len() != self.len() || self.diamond.len() != self.len() {
            return Err(Error::DimensionMismatch(self.rows.len(), self.len()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let s: u64 = row.iter().map(|&(_, c)| u64::from(c)).sum();
            if s != self.ell + 1 {
                return Err(Error::Internal(format!("row {i} sums to {s}")));
            }
        }
        let w = self.weights();
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, c) in row {
                let back = self.entry(j, self.diamond[i]);
                if Ratio::from_integer(i64::from(c)) * w[j]
                    != Ratio::from_integer(i64::from(back)) * w[i]
                {
                    return Err(Error::Internal(format!(
                        "weighted symmetry fails at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}
