//! Binary cache of computed tables.
//!
//! Layout: one text line `arithfn <name> <N>\n`, then N little-endian f64 values.
//! Files live under a versioned subdirectory so a layout change never reads
//! stale data.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::ArithFnTable;
use crate::error::{Error, Result};

const CACHE_VERSION: &str = "v1";

pub fn write_table<W: Write>(table: &ArithFnTable, mut w: W) -> Result<()> {
    if table.name().split_whitespace().count() != 1 {
        return Err(Error::InvalidParameter(format!(
            "table name `{}` must be a single token to be cached",
            table.name()
        )));
    }
    writeln!(w, "arithfn {} {}", table.name(), table.limit())?;
    for v in table.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_table<R: BufRead>(mut r: R) -> Result<ArithFnTable> {
    let mut header = String::new();
    r.read_line(&mut header)?;
    let bad = |message: &str| Error::Parse {
        line: 1,
        message: message.to_string(),
    };
    let mut parts = header.trim_end_matches('\n').split(' ');
    if parts.next() != Some("arithfn") {
        return Err(bad("missing `arithfn` header"));
    }
    let name = parts.next().ok_or_else(|| bad("missing table name"))?.to_string();
    let limit: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad("missing or malformed table length"))?;
    if parts.next().is_some() {
        return Err(bad("trailing fields in header"));
    }
    let mut bytes = vec![0u8; limit * 8];
    r.read_exact(&mut bytes)?;
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    ArithFnTable::new(name, values)
}

/// Directory-backed cache keyed by (name, N).
#[derive(Debug, Clone)]
pub struct TableCache {
    root: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        Self {
            root: dir.as_ref().join("arithfn").join(CACHE_VERSION),
        }
    }

    pub fn path_for(&self, name: &str, limit: usize) -> PathBuf {
        self.root.join(format!("{name}-{limit}.bin"))
    }

    pub fn load(&self, name: &str, limit: usize) -> Result<Option<ArithFnTable>> {
        let path = self.path_for(name, limit);
        if !path.exists() {
            return Ok(None);
        }
        let table = read_table(BufReader::new(fs::File::open(path)?))?;
        if table.name() != name || table.limit() != limit {
            return Ok(None);
        }
        Ok(Some(table))
    }

    pub fn store(&self, table: &ArithFnTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.root)?;
        let path = self.path_for(table.name(), table.limit());
        write_table(table, BufWriter::new(fs::File::create(&path)?))?;
        Ok(path)
    }

    pub fn load_or_compute(
        &self,
        name: &str,
        limit: usize,
        compute: impl FnOnce() -> Result<ArithFnTable>,
    ) -> Result<ArithFnTable> {
        if let Some(t) = self.load(name, limit)? {
            return Ok(t);
        }
        let table = compute()?.renamed(name);
        self.store(&table)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout_is_exact() {
        let t = ArithFnTable::new("mobius", vec![1.0, -1.0]).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        assert!(buf.starts_with(b"arithfn mobius 2\n"));
        assert_eq!(buf.len(), "arithfn mobius 2\n".len() + 16);
        assert_eq!(&buf[17..25], &1.0f64.to_le_bytes());
        assert_eq!(read_table(&buf[..]).unwrap(), t);
    }

    #[test]
    fn malformed_headers_rejected() {
        assert!(read_table(&b"table x 1\n"[..]).is_err());
        assert!(read_table(&b"arithfn x\n"[..]).is_err());
        assert!(read_table(&b"arithfn x 2\n\0\0\0\0\0\0\0\0"[..]).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let mut calls = 0;
        let mut compute = || {
            calls += 1;
            super::super::sieve_standard(super::super::StandardFn::Mobius, 50)
        };
        let a = cache.load_or_compute("mobius", 50, &mut compute).unwrap();
        let b = cache.load_or_compute("mobius", 50, &mut compute).unwrap();
        assert_eq!(a, b);
        assert_eq!(calls, 1);
    }
}
