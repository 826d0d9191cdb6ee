//! A content-addressed directory of `YBX/1` records: files are named by
//! their canonical hash, writes are atomic (temp file then rename), and
//! queries filter on invariant keys.

use std::fs;
use std::path::{Path, PathBuf};

use crate::catalog::{parse, serialize, CatalogRecord};
use crate::error::{Error, Result};

fn file_name(hash: &str) -> String {
    format!("{}.ybx", hash.replace(':', "-"))
}

/// Writes `record` under its canonical hash. Re-putting a record whose
/// canonical payload is already stored is a no-op; a hash collision with
/// a different canonical payload is an integrity error.
pub fn store_put(dir: &Path, record: &CatalogRecord) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let hash = record.canonical_hash();
    let path = dir.join(file_name(&hash));
    let text = serialize(record);
    if path.exists() {
        let existing = fs::read_to_string(&path)?;
        let existing_record = parse(&existing)?;
        if existing_record.canonical_hash() != hash {
            return Err(Error::Integrity(format!(
                "{} holds a record with a different canonical payload",
                path.display()
            )));
        }
        return Ok(path);
    }
    let tmp = dir.join(format!(".{}.tmp", file_name(&hash)));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Returns every stored record whose invariants match all `filter` pairs.
/// The pseudo-key `kind` matches the payload kind. Results are ordered by
/// file name.
pub fn store_query(dir: &Path, filter: &[(&str, &str)]) -> Result<Vec<CatalogRecord>> {
    let mut paths: Vec<PathBuf> = Vec::new();
    if dir.exists() {
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "ybx") {
                paths.push(path);
            }
        }
    }
    paths.sort();
    let mut result = Vec::new();
    for path in paths {
        let record = parse(&fs::read_to_string(&path)?)?;
        let matches = filter.iter().all(|(k, v)| match *k {
            "kind" => record.payload.kind() == *v,
            key => record.invariant(key) == Some(*v),
        });
        if matches {
            result.push(record);
        }
    }
    Ok(result)
}
