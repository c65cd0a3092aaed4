//! On-disk result cache. Each entry is a JSON file named by the hash of its
//! key, holding the payload text and a checksum of it.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/1");

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    version: String,
    payload: String,
    checksum: String,
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

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

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", digest(key))))
    }

    /// Stored payload for `key`, if present and intact.
    pub fn load(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key
            && entry.version == FORMAT_VERSION
            && entry.checksum == digest(&entry.payload))
        .then_some(entry.payload)
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store(&self, key: &str, payload: &str) -> Result<()> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let entry = CacheEntry {
            key: key.to_owned(),
            version: FORMAT_VERSION.to_owned(),
            payload: payload.to_owned(),
            checksum: digest(payload),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<String> {
        if let Some(hit) = self.load(key) {
            return Ok(hit);
        }
        let payload = compute()?;
        self.store(key, &payload)?;
        Ok(payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        assert_eq!(cache.load("k"), None);
        let v = cache.get_or_compute("k", || Ok("payload".into())).unwrap();
        assert_eq!(v, "payload");
        assert_eq!(cache.load("k").as_deref(), Some("payload"));
        let v = cache.get_or_compute("k", || panic!("should hit")).unwrap();
        assert_eq!(v, "payload");

        let path = cache.path("k").unwrap();
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace("payload", "tampered");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load("k"), None);
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::disabled();
        cache.store("k", "v").unwrap();
        assert_eq!(cache.load("k"), None);
    }
}
