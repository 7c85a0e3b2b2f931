//! DOT and JSON forms of a level graph.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::arith::{FieldDesc, FieldElem};
use crate::error::{Error, Result};
use crate::modgroup::ModMatrix;

use super::graph::{EnhancedVertex, LevelGraph};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct VertexJson {
    j: Vec<u64>,
    rep: [u32; 4],
    stabilizer: u32,
    aut_order: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    schema_version: u32,
    p: u64,
    ell: u64,
    group: String,
    modulus: u32,
    /// Defining polynomial of F_{p^2}, constant term first.
    field_modulus: Vec<u64>,
    vertices: Vec<VertexJson>,
    /// (from, to, multiplicity)
    edges: Vec<(usize, usize, u32)>,
    diamond: Vec<usize>,
}

/// Label "j | rep" for each vertex.
pub fn default_labels(g: &LevelGraph) -> Vec<String> {
    g.vertices
        .iter()
        .map(|v| format!("{} | {}", v.j, v.rep))
        .collect()
}

/// Hint u^2 = d (j - 1728) for the twisted Cartan curve of CnsTwist2(d);
/// a display aid only, the sign of u is not determined by the vertex.
pub fn twist_labels(g: &LevelGraph, d: i64) -> Vec<String> {
    g.vertices
        .iter()
        .map(|v| {
            let f = v.j.field();
            let u2 = &FieldElem::from_i64(f, d) * &(&v.j - &FieldElem::from_u64(f, 1728));
            match u2.sqrt() {
                Some(u) if u.is_zero() => format!("j={} u=0", v.j),
                Some(u) => format!("j={} u=±{}", v.j, u),
                None => format!("j={} u^2={}", v.j, u2),
            }
        })
        .collect()
}

/// Directed multigraph in DOT, one edge line per isogeny.
pub fn to_dot(g: &LevelGraph, labels: Option<&[String]>) -> String {
    let default = default_labels(g);
    let labels = labels.unwrap_or(&default);
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{} p={} l={}\" {{", g.group, g.p, g.ell);
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"{}\"];", l.replace('"', "'"));
    }
    for (i, row) in g.rows.iter().enumerate() {
        for &(j, c) in row {
            for _ in 0..c {
                let _ = writeln!(s, "  v{i} -> v{j};");
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn to_json(g: &LevelGraph) -> Result<String> {
    let field_modulus = g
        .vertices
        .first()
        .map(|v| v.j.field().modulus().to_vec())
        .unwrap_or_default();
    let doc = GraphJson {
        schema_version: SCHEMA_VERSION,
        p: g.p,
        ell: g.ell,
        group: g.group.clone(),
        modulus: g.modulus,
        field_modulus,
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexJson {
                j: v.j.coeffs().to_vec(),
                rep: v.rep.entries(),
                stabilizer: v.stabilizer,
                aut_order: v.aut_order,
            })
            .collect(),
        edges: g
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, c)| (i, j, c)))
            .collect(),
        diamond: g.diamond.clone(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))
}

pub fn from_json(s: &str) -> Result<LevelGraph> {
    let bad = |m: &str| Error::Internal(format!("graph JSON: {m}"));
    let doc: GraphJson = serde_json::from_str(s).map_err(|e| bad(&e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(bad(&format!("schema version {}", doc.schema_version)));
    }
    let f = FieldDesc::new(doc.p, 2, Some(&doc.field_modulus))?;
    let n = doc.modulus;
    let vertices: Vec<EnhancedVertex> = doc
        .vertices
        .into_iter()
        .map(|v| {
            let [a, b, c, d] = v.rep.map(i64::from);
            Ok(EnhancedVertex {
                j: FieldElem::from_coeffs(&f, &v.j),
                rep: ModMatrix::new(n, a, b, c, d)?,
                stabilizer: v.stabilizer,
                aut_order: v.aut_order,
            })
        })
        .collect::<Result<_>>()?;
    let mut rows = vec![Vec::new(); vertices.len()];
    for (i, j, c) in doc.edges {
        if i >= vertices.len() || j >= vertices.len() {
            return Err(bad("edge out of range"));
        }
        rows[i].push((j, c));
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    let g = LevelGraph {
        p: doc.p,
        ell: doc.ell,
        group: doc.group,
        modulus: n,
        vertices,
        rows,
        diamond: doc.diamond,
    };
    g.check()?;
    Ok(g)
}
