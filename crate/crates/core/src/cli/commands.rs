use std::fmt::Write;
use std::path::PathBuf;

use num::rational::Ratio;
use serde_json::json;

use crate::arith::fp::is_prime;
use crate::hecke::{
    flag_new, hecke_matrix, is_stable, module_from, new_subspace, old_subspace, orthogonal,
    sieve_within, within_ramanujan, HeckeMatrix, SupersingularModule, TraceTable,
};
use crate::modgroup::{parse_spec, OpenSubgroup};
use crate::ssgraph::{
    cover_map, eichler_mass, ss_j_enumerate, to_dot, to_json, LevelGraph, VertexCover,
};

use super::cache::{write_atomic, Cache};
use super::CliError;

/// What a command printed, plus its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
    pub code: i32,
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(CliError::Usage(format!("p = {p} is not prime")));
    }
    Ok(())
}

fn group(spec: &str, p: u64, notes: &mut Vec<String>) -> Result<OpenSubgroup, CliError> {
    check_prime(p)?;
    let g = parse_spec(spec)?;
    if !g.is_admissible_fp2(p)? {
        notes.push(format!(
            "warning: {} is not admissible at p = {p} (p^2 is not in det G); the graph may be disconnected",
            g.label()
        ));
    }
    Ok(g)
}

pub fn cmd_enumerate(p: u64, as_json: bool) -> Result<Report, CliError> {
    check_prime(p)?;
    let js = ss_j_enumerate(p)?;
    let mass: Ratio<i64> = js.iter().map(|s| Ratio::new(2, s.aut_order as i64)).sum();
    let ok = mass == eichler_mass(p);
    let mut out = String::new();
    if as_json {
        let inv: Vec<_> = js
            .iter()
            .map(
                |s| json!({"j": s.j.to_string(), "coeffs": s.j.coeffs(), "aut_order": s.aut_order}),
            )
            .collect();
        let doc = json!({"p": p, "invariants": inv, "mass": mass.to_string(), "mass_ok": ok});
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        )
        .ok();
    } else {
        writeln!(out, "p = {p}: {} supersingular j-invariants", js.len()).ok();
        for s in &js {
            writeln!(out, "j = {:<12} |Aut| = {}", s.j.to_string(), s.aut_order).ok();
        }
        let tag = if ok { "ok" } else { "MISMATCH" };
        writeln!(
            out,
            "mass = {mass} (expected (p-1)/12 = {}) {tag}",
            eichler_mass(p)
        )
        .ok();
    }
    Ok(Report {
        stdout: out,
        notes: vec![],
        code: if ok { 0 } else { 1 },
    })
}

/// A graph from the cache, or built and stored. The flag reports a hit.
pub fn load_graph(
    cache: &Cache,
    g: &OpenSubgroup,
    p: u64,
    ell: u64,
) -> Result<(LevelGraph, bool), CliError> {
    if let Some(graph) = cache.load(g, p, ell) {
        return Ok((graph, true));
    }
    let graph = crate::ssgraph::build_graph(g, p, ell)?;
    cache.store(g, &graph)?;
    Ok((graph, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn cmd_graph(
    cache: &Cache,
    p: u64,
    spec: &str,
    ell: u64,
    format: GraphFormat,
    output: Option<PathBuf>,
) -> Result<Report, CliError> {
    let mut notes = Vec::new();
    let g = group(spec, p, &mut notes)?;
    let (graph, hit) = load_graph(cache, &g, p, ell)?;
    let body = match format {
        GraphFormat::Dot => to_dot(&graph, None),
        GraphFormat::Json => to_json(&graph)? + "\n",
    };
    notes.push(format!("cache: {}", if hit { "hit" } else { "miss" }));
    notes.push(format!(
        "vertices: {}, edges: {}, row sums: ok ({}), weighted symmetry: {}",
        graph.len(),
        graph.edge_count(),
        ell + 1,
        if graph.is_weighted_symmetric() {
            "ok"
        } else {
            "twisted by <l> (l is not a scalar of G)"
        }
    ));
    let stdout = match output {
        Some(path) => {
            write_atomic(&path, body.as_bytes())?;
            notes.push(format!("wrote {}", path.display()));
            String::new()
        }
        None => body,
    };
    Ok(Report {
        stdout,
        notes,
        code: 0,
    })
}

fn covers_for(g: &OpenSubgroup, p: u64, specs: &[String]) -> Result<Vec<VertexCover>, CliError> {
    specs
        .iter()
        .map(|s| Ok(cover_map(g, &parse_spec(s)?, p)?))
        .collect()
}

pub struct SieveJob<'a> {
    pub p: u64,
    pub spec: &'a str,
    pub primes: &'a [u64],
    pub max_dim: usize,
    /// Restrict to the subspace new with respect to these covers.
    pub new_over: &'a [String],
    pub csv: bool,
    /// Writes PREFIX.txt and PREFIX.csv.
    pub output: Option<PathBuf>,
}

pub fn cmd_sieve(cache: &Cache, job: &SieveJob) -> Result<Report, CliError> {
    let mut notes = Vec::new();
    let g = group(job.spec, job.p, &mut notes)?;
    let mut primes = job.primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.is_empty() {
        return Err(CliError::Usage("no primes given".into()));
    }
    let mut ts: Vec<HeckeMatrix> = Vec::new();
    let mut module: Option<SupersingularModule> = None;
    for &ell in &primes {
        let (graph, _) = load_graph(cache, &g, job.p, ell)?;
        if module.is_none() {
            module = Some(SupersingularModule::from_vertices(&graph.vertices)?);
        }
        ts.push(hecke_matrix(&graph));
    }
    let module = module.expect("at least one prime");
    let covers = covers_for(&g, job.p, job.new_over)?;
    let start = if covers.is_empty() {
        module.degree_zero_basis()
    } else {
        new_subspace(&module, &covers)?
    };
    let mut cands = sieve_within(&start, &ts, job.max_dim)?;
    flag_new(&mut cands, &covers);
    let bad: Vec<u64> = ts
        .iter()
        .filter(|t| !matches!(within_ramanujan(t, 1e-6), Ok(true)))
        .map(|t| t.ell)
        .collect();
    if !bad.is_empty() {
        notes.push(format!(
            "warning: cuspidal eigenvalues above 2 sqrt(l), or not computed, for l in {bad:?}"
        ));
    }
    notes.push(format!(
        "rank {}, start dimension {}, {} candidate(s) of dimension <= {}",
        module.rank(),
        start.len(),
        cands.len(),
        job.max_dim
    ));
    let table = TraceTable::new(&cands);
    if let Some(prefix) = &job.output {
        let with = |ext: &str| {
            let mut s = prefix.clone().into_os_string();
            s.push(ext);
            PathBuf::from(s)
        };
        write_atomic(&with(".txt"), table.to_text().as_bytes())?;
        write_atomic(&with(".csv"), table.to_csv().as_bytes())?;
    }
    let stdout = if cands.is_empty() {
        String::new()
    } else if job.csv {
        table.to_csv()
    } else {
        table.to_text()
    };
    Ok(Report {
        stdout,
        notes,
        code: if cands.is_empty() { 3 } else { 0 },
    })
}

pub fn cmd_decompose(
    p: u64,
    spec: &str,
    covers: &[String],
    ell: Option<u64>,
) -> Result<Report, CliError> {
    let mut notes = Vec::new();
    let g = group(spec, p, &mut notes)?;
    let covers = covers_for(&g, p, covers)?;
    let vs = crate::ssgraph::vertex_set(&g, p)?;
    let m = module_from(&vs)?;
    let new = new_subspace(&m, &covers)?;
    let old = old_subspace(&m, &covers)?;
    let orth = orthogonal(&m, &new, &old)?;
    let n = u64::from(g.modulus());
    let ell = ell.unwrap_or_else(|| {
        (3..)
            .find(|&l| is_prime(l) && l != p && n % l != 0)
            .expect("a prime exists")
    });
    let t = hecke_matrix(&vs.graph(ell)?);
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    writeln!(out, "group: {} (index {})", g.label(), g.index()).ok();
    writeln!(out, "rank: {}", m.rank()).ok();
    writeln!(out, "eisenstein: 1").ok();
    writeln!(out, "degree-0: {}", m.degree_zero_basis().len()).ok();
    writeln!(out, "old: {}", old.len()).ok();
    writeln!(out, "new: {}", new.len()).ok();
    writeln!(out, "orthogonal: {}", yn(orth)).ok();
    writeln!(
        out,
        "T_{ell}-stable: new {}, old {}",
        yn(is_stable(&t, &new)),
        yn(is_stable(&t, &old))
    )
    .ok();
    Ok(Report {
        stdout: out,
        notes,
        code: if orth { 0 } else { 1 },
    })
}
