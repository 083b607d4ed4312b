//! Content-addressed on-disk cache of JSON results.
//!
//! Each entry is `<dir>/<sha256(key)>.json` holding the key, the payload and a digest of the
//! payload. Entries whose key or digest do not match are counted as corrupted and recomputed.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
    corrupted: AtomicU64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub corrupted: u64,
}

impl Cache {
    /// A cache that stores nothing.
    pub fn disabled() -> Cache {
        Cache::default()
    }

    pub fn new(dir: impl AsRef<Path>) -> Result<Cache> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::Failed(format!("cannot create cache directory {}: {e}", dir.display())))?;
        Ok(Cache { dir: Some(dir), ..Cache::default() })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", sha256_hex(key.as_bytes()))))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let path = self.path_for(key)?;
        let Ok(text) = fs::read_to_string(&path) else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        let entry: Option<Value> = serde_json::from_str(&text).ok();
        let valid = entry.as_ref().and_then(|e| {
            let payload = e.get("payload")?;
            let digest = e.get("digest")?.as_str()?;
            (e.get("key")?.as_str()? == key && digest == sha256_hex(payload.to_string().as_bytes())).then(|| payload.clone())
        });
        match valid {
            Some(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            None => {
                self.corrupted.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Writes atomically through a temporary file in the same directory.
    pub fn put(&self, key: &str, payload: &Value) -> Result<()> {
        let Some(path) = self.path_for(key) else { return Ok(()) };
        let entry = json!({
            "key": key,
            "payload": payload,
            "digest": sha256_hex(payload.to_string().as_bytes()),
        });
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, entry.to_string()).map_err(|e| Error::Failed(format!("cache write failed: {e}")))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Failed(format!("cache rename failed: {e}")))
    }

    /// Cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<T>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(key) {
            if let Ok(t) = serde_json::from_value(v) {
                return Ok(t);
            }
            self.corrupted.fetch_add(1, Ordering::Relaxed);
        }
        let t = compute()?;
        let v = serde_json::to_value(&t).map_err(|e| Error::Failed(format!("cannot serialise cache entry: {e}")))?;
        self.put(key, &v)?;
        Ok(t)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            corrupted: self.corrupted.load(Ordering::Relaxed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path()).unwrap();
        let v: u64 = c.get_or_compute("k", || Ok(7)).unwrap();
        assert_eq!(v, 7);
        let again: u64 = c.get_or_compute("k", || panic!("should hit")).unwrap();
        assert_eq!(again, 7);
        assert_eq!(c.stats(), CacheStats { hits: 1, misses: 1, corrupted: 0 });
        let path = c.path_for("k").unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("7", "8");
        fs::write(&path, text).unwrap();
        let fixed: u64 = c.get_or_compute("k", || Ok(7)).unwrap();
        assert_eq!(fixed, 7);
        assert_eq!(c.stats().corrupted, 1);
        let off = Cache::disabled();
        assert_eq!(off.get_or_compute("k", || Ok(3u64)).unwrap(), 3);
    }
}
