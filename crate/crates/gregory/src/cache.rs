//! Constant catalog persisted between runs, keyed by constant name and
//! precision.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use gregory_core::real::consts::{ConstantCatalog, CATALOG_NAMES};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    /// precision in digits -> constant name -> decimal text
    precisions: BTreeMap<u32, BTreeMap<String, String>>,
}

pub struct ConstantCache {
    path: PathBuf,
}

/// Where a catalog came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Computed,
    Cached,
}

impl ConstantCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ConstantCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Cache { path: self.path.clone(), msg: msg.into() }
    }

    fn read(&self) -> Result<CacheFile> {
        match fs::read_to_string(&self.path) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| self.err(e.to_string())),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(CacheFile::default()),
            Err(source) => Err(Error::Io { path: self.path.clone(), source }),
        }
    }

    fn write(&self, file: &CacheFile) -> Result<()> {
        let tmp = self.path.with_extension("tmp");
        let io = |source| Error::Io { path: tmp.clone(), source };
        fs::write(&tmp, serde_json::to_string_pretty(file)?).map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(|source| Error::Io { path: self.path.clone(), source })
    }

    /// The catalog at exactly `digits`, read from the file when an entry for
    /// that precision is present and complete, otherwise computed and stored.
    /// Entries at other precisions are never used.
    pub fn catalog(&self, digits: u32) -> Result<(ConstantCatalog, Source)> {
        let mut file = self.read()?;
        if let Some(entries) = file.precisions.get(&digits) {
            if CATALOG_NAMES.iter().all(|n| entries.contains_key(*n)) {
                let cat = ConstantCatalog::from_entries(digits, entries.iter().map(|(k, v)| (k.as_str(), v.as_str())))
                    .map_err(|e| self.err(e.to_string()))?;
                return Ok((cat, Source::Cached));
            }
        }
        let cat = ConstantCatalog::compute(digits)?;
        let entries = cat.entries().into_iter().map(|(n, v)| (n.to_string(), v)).collect();
        file.precisions.insert(digits, entries);
        self.write(&file)?;
        Ok((cat, Source::Computed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warm_equals_cold() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ConstantCache::new(dir.path().join("c.json"));
        let (cold, s1) = cache.catalog(30).unwrap();
        let (warm, s2) = cache.catalog(30).unwrap();
        assert_eq!((s1, s2), (Source::Computed, Source::Cached));
        for n in CATALOG_NAMES {
            let (a, b) = (cold.get(n).unwrap(), warm.get(n).unwrap());
            assert_eq!(a, b, "{n}");
            assert_eq!(a.prec(), b.prec(), "{n}");
        }
        // a different precision is computed, not served from the 30-digit entry
        let (_, s3) = cache.catalog(25).unwrap();
        assert_eq!(s3, Source::Computed);
    }

    #[test]
    fn truncated_entry_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let cache = ConstantCache::new(&path);
        cache.catalog(20).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut file: CacheFile = serde_json::from_str(&text).unwrap();
        file.precisions.get_mut(&20).unwrap().insert("pi".into(), "3.14159".into());
        fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(cache.catalog(20).is_err());
    }
}
