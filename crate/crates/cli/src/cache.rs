//! JSON-lines cache of oracle results.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rankcrit::LValueReport;
use serde::{Deserialize, Serialize};

pub const ENV_VAR: &str = "RANKCRIT_CACHE";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    report: LValueReport,
}

/// FNV-1a, 64-bit. Stable across builds and platforms.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub fn oracle_key(p: u64, tol: f64) -> String {
    format!("{:016x}", fnv1a(format!("oracle|Ep|{p}|{:016x}", tol.to_bits()).as_bytes()))
}

/// `--cache`, then `RANKCRIT_CACHE`, then the user cache directory.
pub fn resolve(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("rankcrit").join("oracle.jsonl"))
}

pub struct Cache {
    path: PathBuf,
    entries: Vec<Entry>,
}

impl Cache {
    /// Reads whatever is there. Unreadable lines are skipped with a warning.
    pub fn open(path: PathBuf) -> Self {
        let mut entries = Vec::new();
        if let Ok(file) = fs::File::open(&path) {
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => {
                        eprintln!("warning: {}: line {}: {e}; ignoring the rest", path.display(), i + 1);
                        break;
                    }
                };
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Entry>(&line) {
                    Ok(e) => entries.push(e),
                    Err(e) => eprintln!("warning: {}: line {}: ignoring corrupt cache entry ({e})", path.display(), i + 1),
                }
            }
        }
        Cache { path, entries }
    }

    pub fn get(&self, key: &str) -> Option<&LValueReport> {
        self.entries.iter().rev().find(|e| e.key == key).map(|e| &e.report)
    }

    /// Appends; a failed write only costs a recomputation next time.
    pub fn put(&mut self, key: String, report: LValueReport) {
        let entry = Entry { key, report };
        let written = (|| -> std::io::Result<()> {
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
            let line = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
            writeln!(f, "{line}")
        })();
        if let Err(e) = written {
            eprintln!("warning: could not write cache {}: {e}", self.path.display());
        }
        self.entries.push(entry);
    }
}
