//! On-disk cache of the Zech and trace tables.
//!
//! Layout, all integers little-endian `u32`:
//! magic `CYFT`, version, p, f, modulus (f + 1 words), q, then `q - 1` Zech
//! entries and `q - 1` trace entries.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use super::{FieldError, FieldSpec, FieldTable};

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"CYFT";

fn cache_path(dir: &Path, spec: &FieldSpec) -> PathBuf {
    let m: Vec<String> = spec.modulus.iter().map(|c| c.to_string()).collect();
    dir.join(format!("gf_{}_{}_{}.cyft", spec.p, spec.f, m.join("-")))
}

fn io_err(e: io::Error) -> FieldError {
    FieldError::Cache(e.to_string())
}

pub fn save_cache(dir: &Path, table: &FieldTable) -> Result<PathBuf, FieldError> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let spec = table.spec();
    let path = cache_path(dir, spec);
    let mut buf: Vec<u8> = Vec::with_capacity(8 * table.q() as usize + 64);
    buf.extend_from_slice(MAGIC);
    let mut put = |v: u32| buf.extend_from_slice(&v.to_le_bytes());
    put(CACHE_VERSION);
    put(spec.p);
    put(spec.f);
    for &c in &spec.modulus {
        put(c);
    }
    put(table.q());
    for &z in table.zech_table() {
        put(z);
    }
    for &t in table.trace_table() {
        put(t);
    }
    let tmp = path.with_extension("tmp");
    let mut file = fs::File::create(&tmp).map_err(io_err)?;
    file.write_all(&buf).map_err(io_err)?;
    file.sync_all().map_err(io_err)?;
    fs::rename(&tmp, &path).map_err(io_err)?;
    Ok(path)
}

/// Loads the cached tables for `spec`, or `Ok(None)` if no cache file exists.
pub fn load_cache(dir: &Path, spec: &FieldSpec) -> Result<Option<FieldTable>, FieldError> {
    let path = cache_path(dir, spec);
    let mut file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(e)),
    };
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes).map_err(io_err)?;
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(FieldError::Cache(format!("{}: bad magic", path.display())));
    }
    let words: Vec<u32> = bytes[4..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    let mut it = words.into_iter();
    let mut next = || {
        it.next()
            .ok_or_else(|| FieldError::Cache(format!("{}: truncated", path.display())))
    };
    let version = next()?;
    if version != CACHE_VERSION {
        return Err(FieldError::Cache(format!(
            "unsupported cache version {version}"
        )));
    }
    let p = next()?;
    let f = next()?;
    let mut modulus = Vec::with_capacity(f as usize + 1);
    for _ in 0..=f {
        modulus.push(next()?);
    }
    let stored = FieldSpec { p, f, modulus };
    if &stored != spec {
        return Err(FieldError::Cache("cache key mismatch".into()));
    }
    let q = next()?;
    if q != spec.order() {
        return Err(FieldError::Cache("field order mismatch".into()));
    }
    let n = (q - 1) as usize;
    let mut zech = Vec::with_capacity(n);
    for _ in 0..n {
        zech.push(next()?);
    }
    let mut trace = Vec::with_capacity(n);
    for _ in 0..n {
        trace.push(next()?);
    }
    Ok(Some(FieldTable::from_parts(spec.clone(), zech, trace)))
}

impl FieldTable {
    /// Builds the field, going through `cache_dir` when one is given.
    pub fn build_cached(p: u64, f: u64, cache_dir: Option<&Path>) -> Result<Self, FieldError> {
        Self::from_spec_cached(FieldSpec::canonical(p, f)?, cache_dir)
    }

    pub fn from_spec_cached(spec: FieldSpec, cache_dir: Option<&Path>) -> Result<Self, FieldError> {
        let Some(dir) = cache_dir else {
            return Ok(FieldTable::from_spec(spec));
        };
        if let Some(table) = load_cache(dir, &spec)? {
            return Ok(table);
        }
        let table = FieldTable::from_spec(spec);
        save_cache(dir, &table)?;
        Ok(table)
    }
}
