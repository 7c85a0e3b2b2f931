//! On-disk cache of built graphs, keyed by (p, subgroup fingerprint, l,
//! code version).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::modgroup::OpenSubgroup;
use crate::ssgraph::{from_json, to_json, LevelGraph, SCHEMA_VERSION};

pub const CACHE_ENV: &str = "SSLEVEL_CACHE_DIR";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hash of the modulus and the sorted element codes; independent of the
/// generators used to describe the group.
pub fn fingerprint(g: &OpenSubgroup) -> String {
    let mut codes: Vec<u32> = g.elements().iter().map(|m| m.code()).collect();
    codes.sort_unstable();
    let mut h = Sha256::new();
    h.update(g.modulus().to_le_bytes());
    for c in codes {
        h.update(c.to_le_bytes());
    }
    hex::encode(h.finalize())
}

pub fn default_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("sslevel")
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, g: &OpenSubgroup, p: u64, ell: u64) -> Option<PathBuf> {
        let fp = fingerprint(g);
        self.dir.as_ref().map(|d| {
            d.join(format!(
                "graph-{p}-{}-{ell}-v{VERSION}-s{SCHEMA_VERSION}.json",
                &fp[..24]
            ))
        })
    }

    /// A stored graph, or None when absent or unreadable (stale entries are
    /// rebuilt, not trusted).
    pub fn load(&self, g: &OpenSubgroup, p: u64, ell: u64) -> Option<LevelGraph> {
        let s = fs::read_to_string(self.path(g, p, ell)?).ok()?;
        from_json(&s).ok()
    }

    /// Write-temp-then-rename.
    pub fn store(&self, g: &OpenSubgroup, graph: &LevelGraph) -> std::io::Result<()> {
        let Some(path) = self.path(g, graph.p, graph.ell) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let json = to_json(graph).map_err(std::io::Error::other)?;
        write_atomic(&path, json.as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
