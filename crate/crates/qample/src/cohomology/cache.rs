//! On-disk cohomology cache: JSON lines keyed by (fan hash, divisor
//! coefficients, characteristic).

use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;

#[derive(Serialize, Deserialize, Clone)]
pub struct CacheEntry {
    pub fan: String,
    pub coeffs: Vec<i64>,
    pub ch: u64,
    pub dims: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims_char0: Option<Vec<u64>>,
    #[serde(default)]
    pub torsion: bool,
}

pub struct DiskCache {
    path: PathBuf,
    map: HashMap<(String, Vec<i64>, u64), CacheEntry>,
}

impl DiskCache {
    pub fn open(path: PathBuf) -> Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let f = std::fs::File::open(&path)?;
            for line in std::io::BufReader::new(f).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: CacheEntry = serde_json::from_str(&line)?;
                map.insert((e.fan.clone(), e.coeffs.clone(), e.ch), e);
            }
        }
        Ok(DiskCache { path, map })
    }

    pub fn lookup(&self, key: &(String, Vec<i64>, u64)) -> Option<CacheEntry> {
        self.map.get(key).cloned()
    }

    pub fn store(&mut self, key: &(String, Vec<i64>, u64), table: &super::CohomologyTable) -> Result<()> {
        if self.map.contains_key(key) {
            return Ok(());
        }
        let entry = CacheEntry {
            fan: key.0.clone(),
            coeffs: key.1.clone(),
            ch: key.2,
            dims: table.dims.clone(),
            dims_char0: table.dims_char0.clone(),
            torsion: table.torsion,
        };
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&entry)?)?;
        self.map.insert(key.clone(), entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
