//! Covering maps X_H -> X_G on supersingular points, and the Atkin-Lehner
//! involution on X_0(N).

use num::rational::Ratio;

use crate::arith::fp::{is_prime, lcm};
use crate::curve::{isomorphisms, velu};
use crate::error::{Error, Result};
use crate::modgroup::{standard, ModMatrix, OpenSubgroup};

use super::context::LevelContext;
use super::graph::{LevelGraph, VertexSet};

/// Vertex sets of H and G over a shared context, with the projection.
#[derive(Clone, Debug)]
pub struct VertexCover {
    pub upper: VertexSet,
    pub lower: VertexSet,
    /// map[h] = g for the projection of vertex h.
    pub map: Vec<usize>,
}

/// A covering of graphs together with its vertex projection.
#[derive(Clone, Debug)]
pub struct Covering {
    pub upper: LevelGraph,
    pub lower: LevelGraph,
    pub map: Vec<usize>,
}

/// The projection S(X_H, p) -> S(X_G, p) for H contained in G.
pub fn cover_map(h: &OpenSubgroup, g: &OpenSubgroup, p: u64) -> Result<VertexCover> {
    let m = lcm(u64::from(h.modulus()), u64::from(g.modulus())) as u32;
    let (hm, gm) = (h.lift(m)?, g.lift(m)?);
    if !hm.is_subgroup_of(&gm)? {
        return Err(Error::NotContained(
            h.label().to_string(),
            g.label().to_string(),
        ));
    }
    let ctx = LevelContext::shared(p, m)?;
    let upper = VertexSet::new(ctx.clone(), &hm)?;
    let lower = VertexSet::new(ctx, &gm)?;
    let map = (0..upper.len())
        .map(|i| lower.locate(upper.j_index_of(i), &upper.vertices()[i].rep))
        .collect();
    Ok(VertexCover { upper, lower, map })
}

impl VertexCover {
    /// [G : H].
    pub fn degree(&self) -> u64 {
        self.lower.group().order() / self.upper.group().order()
    }

    /// Pi[h][g] = 1 when h lies over g.
    pub fn projection_matrix(&self) -> Vec<Vec<i64>> {
        let mut pi = vec![vec![0i64; self.lower.len()]; self.upper.len()];
        for (h, &g) in self.map.iter().enumerate() {
            pi[h][g] = 1;
        }
        pi
    }

    /// Multiplicity of h in the pullback of its image: w(pi(h)) / w(h).
    pub fn multiplicities(&self) -> Vec<Ratio<i64>> {
        self.map
            .iter()
            .enumerate()
            .map(|(h, &g)| self.lower.vertices()[g].weight() / self.upper.vertices()[h].weight())
            .collect()
    }

    pub fn graphs(&self, ell: u64) -> Result<Covering> {
        Ok(Covering {
            upper: self.upper.graph(ell)?,
            lower: self.lower.graph(ell)?,
            map: self.map.clone(),
        })
    }
}

pub fn covering(h: &OpenSubgroup, g: &OpenSubgroup, p: u64, ell: u64) -> Result<Covering> {
    cover_map(h, g, p)?.graphs(ell)
}

impl Covering {
    /// A_H Pi = Pi A_G: the edges out of h map onto the edges out of pi(h).
    pub fn intertwines(&self) -> bool {
        let (nh, ng) = (self.upper.len(), self.lower.len());
        (0..nh).all(|h| {
            let mut lhs = vec![0u32; ng];
            for &(k, c) in &self.upper.rows[h] {
                lhs[self.map[k]] += c;
            }
            (0..ng).all(|g| lhs[g] == self.lower.entry(self.map[h], g))
        })
    }
}

/// The involution (E, C) -> (E/C, E[N]/C) on the vertices of X_0(N), N prime.
pub fn atkin_lehner(vs: &VertexSet) -> Result<Vec<usize>> {
    let ctx = vs.context();
    let n = ctx.modulus();
    if !is_prime(u64::from(n)) || *vs.group() != standard("B0", n, None)? {
        return Err(Error::Unsupported(
            "Atkin-Lehner needs B0(N) with N prime".into(),
        ));
    }
    (0..vs.len())
        .map(|i| {
            let v = &vs.vertices()[i];
            let src = &ctx.js()[vs.j_index_of(i)];
            let b = src.basis.act(&v.rep);
            let phi = velu(&src.ss.curve, &b.p, u64::from(n))?;
            let t = ctx
                .j_index(&phi.codomain.j_invariant())
                .ok_or_else(|| Error::Internal("quotient is not in the enumeration".into()))?;
            let dst = &ctx.js()[t];
            let iso = isomorphisms(&phi.codomain, &dst.ss.curve)?
                .into_iter()
                .next()
                .ok_or_else(|| {
                    Error::Internal("codomain is a nontrivial twist of the model".into())
                })?;
            let (x, y) = dst.basis.dlp2d(&phi.then_iso(&iso).eval(&b.q))?;
            let (x, y) = (i64::from(x), i64::from(y));
            let gamma = if x != 0 {
                ModMatrix::raw(n, x, 0, y, 1)
            } else {
                ModMatrix::raw(n, 0, 1, y, 0)
            };
            Ok(vs.locate(t, &gamma))
        })
        .collect()
}
