//! On-disk cache of reduced relation bases, one file per slice.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic    8 bytes  "ALTGSLC\0"
//! version  u32      format and code version
//! mode     u32      0 = full diagram basis, 1 = sub-staircase projection
//! n        u32
//! d1       u32
//! d2       u32
//! prime    u64
//! ncols    u64
//! nrows    u64
//! rows     nrows × { len: u64, len × (column: u32, residue: u64) }
//! ```
//!
//! Writers go through a temporary file in the same directory followed by an
//! atomic rename, so concurrent writers never expose a torn file.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::echelon::SparseVec;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"ALTGSLC\0";
pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "ALTGEN_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceKey {
    pub mode: u32,
    pub n: u32,
    pub d1: u32,
    pub d2: u32,
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedSlice {
    pub key: SliceKey,
    pub ncols: u64,
    pub rows: Vec<SparseVec<u64>>,
}

/// `$ALTGEN_CACHE_DIR`, else the platform cache directory.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return Some(PathBuf::from(dir));
    }
    dirs::cache_dir().map(|d| d.join("altgen"))
}

#[derive(Clone, Debug)]
pub struct SliceCache {
    dir: PathBuf,
}

impl SliceCache {
    pub fn new(dir: impl Into<PathBuf>) -> SliceCache {
        SliceCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &SliceKey) -> PathBuf {
        self.dir.join(format!(
            "v{}-m{}-n{}-{}-{}-p{}.slice",
            FORMAT_VERSION, key.mode, key.n, key.d1, key.d2, key.prime
        ))
    }

    /// A miss, an unreadable file and a header mismatch all read as `None`.
    pub fn load(&self, key: &SliceKey) -> Option<CachedSlice> {
        let file = fs::File::open(self.path_for(key)).ok()?;
        let slice = decode(&mut BufReader::new(file)).ok()?;
        (slice.key == *key).then_some(slice)
    }

    pub fn store(&self, slice: &CachedSlice) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            encode(slice, &mut w)?;
            w.flush()?;
        }
        tmp.persist(self.path_for(&slice.key))
            .map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }
}

pub fn encode(slice: &CachedSlice, w: &mut impl Write) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    let k = &slice.key;
    for v in [k.mode, k.n, k.d1, k.d2] {
        w.write_all(&v.to_le_bytes())?;
    }
    w.write_all(&k.prime.to_le_bytes())?;
    w.write_all(&slice.ncols.to_le_bytes())?;
    w.write_all(&(slice.rows.len() as u64).to_le_bytes())?;
    for row in &slice.rows {
        w.write_all(&(row.len() as u64).to_le_bytes())?;
        for (c, x) in row {
            w.write_all(&c.to_le_bytes())?;
            w.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub fn decode(r: &mut impl Read) -> Result<CachedSlice> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = read_u32(r)?;
    if version != FORMAT_VERSION {
        return Err(Error::Cache(format!("version {version}")));
    }
    let key = SliceKey {
        mode: read_u32(r)?,
        n: read_u32(r)?,
        d1: read_u32(r)?,
        d2: read_u32(r)?,
        prime: read_u64(r)?,
    };
    let ncols = read_u64(r)?;
    let nrows = read_u64(r)?;
    if nrows > ncols {
        return Err(Error::Cache("more rows than columns".into()));
    }
    let mut rows = Vec::with_capacity(nrows as usize);
    for _ in 0..nrows {
        let len = read_u64(r)?;
        if len == 0 || len > ncols {
            return Err(Error::Cache("bad row length".into()));
        }
        let mut row = Vec::with_capacity(len as usize);
        for _ in 0..len {
            let c = read_u32(r)?;
            let x = read_u64(r)?;
            row.push((c, x));
        }
        rows.push(row);
    }
    Ok(CachedSlice { key, ncols, rows })
}
