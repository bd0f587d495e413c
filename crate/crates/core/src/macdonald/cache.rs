//! On-disk `H~` tables: one JSON file per degree,
//! `{"degree": n, "format": 1, "entries": {"[2,1]": {"[3]": "1|1", ...}}}`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_htilde, install_table, HTildeTable, MacError};
use crate::qt::QtRational;
use crate::shapes::Partition;

const FORMAT: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed cache file {path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
    #[error("cache file {path} failed validation: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: MacError,
    },
    #[error(transparent)]
    Build(#[from] MacError),
}

#[derive(Serialize, Deserialize)]
struct Wire {
    degree: usize,
    format: u32,
    entries: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn table_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("htilde-{n}.json"))
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the table through a temporary file and a rename.
pub fn write_table(table: &HTildeTable, dir: &Path) -> Result<PathBuf, CacheError> {
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut entries = BTreeMap::new();
    for mu in table.shapes() {
        let coeffs = table
            .schur(&mu)
            .iter()
            .map(|(lam, c)| (lam.to_string(), c.render()))
            .collect();
        entries.insert(mu.to_string(), coeffs);
    }
    let wire = Wire {
        degree: table.degree(),
        format: FORMAT,
        entries,
    };
    let body = serde_json::to_string_pretty(&wire).expect("string maps serialize");
    let path = table_path(dir, table.degree());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
    tmp.write_all(body.as_bytes()).map_err(io(tmp.path()))?;
    tmp.write_all(b"\n").map_err(io(tmp.path()))?;
    tmp.as_file().sync_all().map_err(io(tmp.path()))?;
    tmp.persist(&path).map_err(|e| io(&path)(e.error))?;
    Ok(path)
}

/// Reads and re-validates the table for degree `n`; `Ok(None)` if absent.
pub fn read_table(dir: &Path, n: usize) -> Result<Option<HTildeTable>, CacheError> {
    let path = table_path(dir, n);
    let body = match fs::read_to_string(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io(&path)(e)),
    };
    let malformed = |detail: String| CacheError::Malformed {
        path: path.clone(),
        detail,
    };
    let wire: Wire = serde_json::from_str(&body).map_err(|e| malformed(e.to_string()))?;
    if wire.format != FORMAT {
        return Err(malformed(format!("unsupported format {}", wire.format)));
    }
    if wire.degree != n {
        return Err(malformed(format!("holds degree {} instead of {n}", wire.degree)));
    }
    let mut schur = BTreeMap::new();
    for (mu, coeffs) in wire.entries {
        let mu: Partition = mu.parse().map_err(|e| malformed(format!("{e}")))?;
        let mut m = BTreeMap::new();
        for (lam, c) in coeffs {
            let lam: Partition = lam.parse().map_err(|e| malformed(format!("{e}")))?;
            let c = QtRational::parse(&c).map_err(|e| malformed(format!("{e}")))?;
            m.insert(lam, c);
        }
        schur.insert(mu, m);
    }
    HTildeTable::from_schur(n, schur)
        .map(Some)
        .map_err(|source| CacheError::Invalid { path, source })
}

/// Loads degree `n` from `dir`, building and writing it if absent, and
/// registers it. Returns whether a build happened.
pub fn load_or_build(dir: &Path, n: usize) -> Result<(Arc<HTildeTable>, bool), CacheError> {
    if let Some(t) = read_table(dir, n)? {
        return Ok((install_table(t), false));
    }
    let t = build_htilde(n)?;
    write_table(&t, dir)?;
    Ok((install_table(t), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::htilde;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        for n in 0..=4 {
            let t = htilde(n).unwrap();
            let path = write_table(&t, dir.path()).unwrap();
            let first = fs::read(&path).unwrap();
            let back = read_table(dir.path(), n).unwrap().unwrap();
            for mu in t.shapes() {
                assert_eq!(back.schur(&mu), t.schur(&mu));
            }
            write_table(&back, dir.path()).unwrap();
            assert_eq!(fs::read(&path).unwrap(), first);
        }
        assert!(read_table(dir.path(), 9).unwrap().is_none());
    }

    #[test]
    fn corrupted_files_fail_loudly() {
        let dir = tempfile::tempdir().unwrap();
        let t = htilde(3).unwrap();
        let path = write_table(&t, dir.path()).unwrap();
        let body = fs::read_to_string(&path).unwrap();
        fs::write(&path, body.replacen("q + t|", "q + 2*t|", 1)).unwrap();
        assert!(matches!(read_table(dir.path(), 3), Err(CacheError::Invalid { .. })));
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(read_table(dir.path(), 3), Err(CacheError::Malformed { .. })));
    }

    #[test]
    fn warm_cache_skips_building() {
        let dir = tempfile::tempdir().unwrap();
        let (_, built) = load_or_build(dir.path(), 2).unwrap();
        assert!(built);
        let (_, built) = load_or_build(dir.path(), 2).unwrap();
        assert!(!built);
    }
}
