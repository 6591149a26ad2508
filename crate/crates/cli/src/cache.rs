//! On-disk cache for zero lists and coefficient tables, keyed by a hash of
//! the parameters that determine them.

use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use mollify_core::zeta::{find_zeros, read_zeros, write_zeros, ZeroList, ZeroSource};
use mollify_core::{ArithFnTable, Result, TableCache};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "MOLLIFY_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    root: Option<PathBuf>,
}

pub fn key(parts: &str) -> String {
    hex::encode(&Sha256::digest(parts.as_bytes())[..12])
}

impl Cache {
    /// `$MOLLIFY_CACHE_DIR`, else `mollify-cache` in the system temp dir.
    pub fn from_env(enabled: bool) -> Self {
        let root = enabled.then(|| {
            std::env::var_os(CACHE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| std::env::temp_dir().join("mollify-cache"))
        });
        Self { root }
    }

    pub fn disabled() -> Self {
        Self { root: None }
    }

    pub fn zeros(&self, height: f64) -> Result<ZeroList> {
        let Some(root) = &self.root else {
            return find_zeros(height);
        };
        let dir = root.join("zeros");
        let path = dir.join(format!("{}.txt", key(&format!("zeros v1 T={height:?}"))));
        if path.exists() {
            // A damaged entry is recomputed rather than trusted.
            if let Ok(list) = read_zeros(BufReader::new(fs::File::open(&path)?)) {
                if let Ok(list) = ZeroList::new(list.ordinates().to_vec(), ZeroSource::Computed, height) {
                    return Ok(list);
                }
            }
        }
        let list = find_zeros(height)?;
        fs::create_dir_all(&dir)?;
        write_zeros(&list, BufWriter::new(fs::File::create(&path)?))?;
        Ok(list)
    }

    /// `params` must pin down the table completely; it becomes part of the key.
    pub fn table(
        &self,
        name: &str,
        params: &str,
        limit: usize,
        compute: impl FnOnce() -> Result<ArithFnTable>,
    ) -> Result<ArithFnTable> {
        let Some(root) = &self.root else {
            return compute();
        };
        let full = format!("{name}-{}", key(params));
        TableCache::new(root).load_or_compute(&full, limit, compute)
    }
}
