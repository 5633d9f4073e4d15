//! Append-only JSONL store keyed by the SHA-256 of each record's canonical
//! JSON.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "HULLSMITH_CATALOG";
const DEFAULT_PATH: &str = ".hullsmith/catalog.jsonl";

#[derive(Debug, Serialize, Deserialize)]
pub struct Entry {
    pub hash: String,
    pub kind: String,
    pub record: Value,
}

pub struct Catalog {
    path: PathBuf,
    known: HashSet<String>,
}

/// Compact JSON with object keys sorted.
pub fn canonical(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let body: Vec<String> = keys.iter().map(|k| format!("{}:{}", Value::String((*k).clone()), canonical(&m[*k]))).collect();
            format!("{{{}}}", body.join(","))
        }
        Value::Array(a) => format!("[{}]", a.iter().map(canonical).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

pub fn content_hash(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical(v).as_bytes()))
}

impl Catalog {
    pub fn default_path() -> PathBuf {
        std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_PATH))
    }

    pub fn open(path: &Path) -> Result<Catalog> {
        let mut known = HashSet::new();
        if path.exists() {
            let file = fs::File::open(path).with_context(|| format!("opening catalog {}", path.display()))?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: Entry = serde_json::from_str(&line).with_context(|| format!("malformed catalog line in {}", path.display()))?;
                known.insert(e.hash);
            }
        }
        Ok(Catalog { path: path.to_path_buf(), known })
    }

    /// Appends the records not yet present; returns how many were new.
    pub fn add_all<'a>(&mut self, kind: &str, records: impl IntoIterator<Item = &'a Value>) -> Result<usize> {
        let mut lines = String::new();
        let mut added = 0;
        for r in records {
            let hash = content_hash(r);
            if self.known.insert(hash.clone()) {
                let e = Entry { hash, kind: kind.to_string(), record: r.clone() };
                lines.push_str(&serde_json::to_string(&e)?);
                lines.push('\n');
                added += 1;
            }
        }
        if added > 0 {
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let mut f = OpenOptions::new().create(true).append(true).open(&self.path).with_context(|| format!("writing catalog {}", self.path.display()))?;
            f.write_all(lines.as_bytes())?;
        }
        Ok(added)
    }

    #[cfg(test)]
    fn add(&mut self, kind: &str, record: &Value) -> Result<usize> {
        self.add_all(kind, std::iter::once(record))
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.known.len()
    }
}
