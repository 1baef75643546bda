//! Append-only length cache.
//!
//! Line-oriented log, one record per line:
//!
//! ```text
//! v1 <ring-hash> <ideal-hash> <q> <engine> <length> <tool-version> <unix-time>
//! ```
//!
//! Records are never rewritten; a version bump tags new records without
//! invalidating old ones. Lookups are keyed by `(ring, ideal, q)` so
//! that values computed by different engines land on the same key: any
//! disagreement aborts the run.

use crate::error::Error;
use crate::invariants::Engine;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// One parsed cache line.
#[derive(Debug, Clone, PartialEq)]
pub struct CacheRecord {
    pub ring_hash: String,
    pub ideal_hash: String,
    pub q: u64,
    pub engine: Engine,
    pub length: u64,
    pub tool_version: String,
    pub timestamp: u64,
}

/// A corrupt line survived from disk: reported, then recomputed over.
#[derive(Debug, Clone, PartialEq)]
pub struct CacheDamage {
    pub offset: u64,
    pub msg: String,
}

struct CacheInner {
    map: HashMap<(String, String, u64), u64>,
    hits: u64,
    misses: u64,
    writer: Option<std::fs::File>,
}

/// Concurrent-read, serialized-append length cache.
pub struct LengthCache {
    path: Option<PathBuf>,
    inner: Mutex<CacheInner>,
    damage: Vec<CacheDamage>,
}

/// Short content hash used to key rings and ideals.
pub fn content_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{:02x}", b)).collect()
}

impl LengthCache {
    /// In-memory cache with no backing file.
    pub fn ephemeral() -> Self {
        LengthCache {
            path: None,
            inner: Mutex::new(CacheInner {
                map: HashMap::new(),
                hits: 0,
                misses: 0,
                writer: None,
            }),
            damage: Vec::new(),
        }
    }

    /// Opens (creating if absent) a file-backed cache, replaying every
    /// intact record. Corrupt records are collected with their byte
    /// offsets and skipped; the run continues by recomputation.
    pub fn open(path: &Path) -> Result<Self, Error> {
        let mut map = HashMap::new();
        let mut damage = Vec::new();
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let mut offset = 0u64;
            for line in text.split_inclusive('\n') {
                let trimmed = line.trim_end_matches('\n');
                if !trimmed.is_empty() {
                    match parse_record(trimmed) {
                        Ok(rec) => {
                            let key = (rec.ring_hash, rec.ideal_hash, rec.q);
                            if let Some(&prev) = map.get(&key) {
                                if prev != rec.length {
                                    return Err(Error::EngineDisagreement {
                                        key: format!("{}/{}/q={}", key.0, key.1, key.2),
                                        a: prev,
                                        b: rec.length,
                                    });
                                }
                            }
                            map.insert(key, rec.length);
                        }
                        Err(msg) => damage.push(CacheDamage { offset, msg }),
                    }
                }
                offset += line.len() as u64;
            }
        }
        let writer = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        Ok(LengthCache {
            path: Some(path.to_path_buf()),
            inner: Mutex::new(CacheInner { map, hits: 0, misses: 0, writer: Some(writer) }),
            damage,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn damage(&self) -> &[CacheDamage] {
        &self.damage
    }

    /// (hits, misses) since open.
    pub fn stats(&self) -> (u64, u64) {
        let inner = self.inner.lock().unwrap();
        (inner.hits, inner.misses)
    }

    /// Returns the cached length for `(ring, ideal, q)` if present;
    /// otherwise runs the thunk, records the value, and returns it. A
    /// cached value that disagrees with a freshly computed one (or one
    /// computed by another engine) aborts with a cross-engine
    /// disagreement error.
    pub fn get_or_compute(
        &self,
        ring_hash: &str,
        ideal_hash: &str,
        q: u64,
        engine: Engine,
        thunk: impl FnOnce() -> Result<u64, Error>,
    ) -> Result<u64, Error> {
        let key = (ring_hash.to_string(), ideal_hash.to_string(), q);
        {
            let mut inner = self.inner.lock().unwrap();
            if let Some(&len) = inner.map.get(&key) {
                inner.hits += 1;
                return Ok(len);
            }
        }
        // Compute outside the lock: thunks are pure and may be slow.
        let length = thunk()?;
        let mut inner = self.inner.lock().unwrap();
        if let Some(&prev) = inner.map.get(&key) {
            if prev != length {
                return Err(Error::EngineDisagreement {
                    key: format!("{}/{}/q={}", ring_hash, ideal_hash, q),
                    a: prev,
                    b: length,
                });
            }
            inner.hits += 1;
            return Ok(prev);
        }
        inner.misses += 1;
        inner.map.insert(key, length);
        if let Some(writer) = inner.writer.as_mut() {
            let ts = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            writeln!(
                writer,
                "v1 {} {} {} {} {} {} {}",
                ring_hash,
                ideal_hash,
                q,
                engine,
                length,
                env!("CARGO_PKG_VERSION"),
                ts
            )?;
        }
        Ok(length)
    }
}

fn parse_record(line: &str) -> Result<CacheRecord, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 8 {
        return Err(format!("expected 8 fields, got {}", fields.len()));
    }
    if fields[0] != "v1" {
        return Err(format!("unknown record version `{}`", fields[0]));
    }
    let int = |s: &str, what: &str| -> Result<u64, String> {
        s.parse().map_err(|_| format!("bad {} `{}`", what, s))
    };
    Ok(CacheRecord {
        ring_hash: fields[1].to_string(),
        ideal_hash: fields[2].to_string(),
        q: int(fields[3], "q")?,
        engine: fields[4].parse::<Engine>().map_err(|e| e.to_string())?,
        length: int(fields[5], "length")?,
        tool_version: fields[6].to_string(),
        timestamp: int(fields[7], "timestamp")?,
    })
}
