//! On-disk cache of plane partitions, one JSON file per size.
//!
//! Each file is `{"n": n, "count": c, "partitions": [[[a,b,c], ...], ...]}`
//! with the header fields first and partitions in canonical order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PlanePartition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub n: usize,
    pub count: usize,
    pub partitions: Vec<PlanePartition>,
}

pub fn cache_file_name(n: usize) -> String {
    format!("plane_partitions_{n:03}.json")
}

/// Writes the list for size `n` into `dir`, creating `dir` if needed.
/// Returns the path written.
pub fn write_cache(dir: &Path, n: usize, partitions: &[PlanePartition]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        n,
        count: partitions.len(),
        partitions: partitions.to_vec(),
    };
    let path = dir.join(cache_file_name(n));
    let mut text = serde_json::to_string(&file)?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

/// Reads the list for size `n` if a cache file exists; rejects files whose
/// header disagrees with their content.
pub fn read_cache(dir: &Path, n: usize) -> Result<Option<Vec<PlanePartition>>> {
    let path = dir.join(cache_file_name(n));
    if !path.exists() {
        return Ok(None);
    }
    let file: CacheFile = serde_json::from_str(&fs::read_to_string(&path)?)?;
    if file.n != n || file.count != file.partitions.len() || file.partitions.iter().any(|p| p.size() != n) {
        return Err(Error::InvalidInput(format!("corrupt cache file {}", path.display())));
    }
    Ok(Some(file.partitions))
}
