use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CliError, CliResult, EXIT_PARSE};
use crate::symmetry::QuandlePolynomial;

/// Environment variable naming the default catalog path.
pub const CATALOG_ENV: &str = "QUANDLEKIT_CATALOG";

/// One catalog line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub n: usize,
    /// Canonical table.
    pub table: Vec<Vec<usize>>,
    pub partition_type: Vec<usize>,
    /// Every orbit group acts 2-transitively on its orbit.
    pub right2t: bool,
    pub left2t: bool,
    pub qp: QuandlePolynomial,
}

pub fn read_catalog(path: &Path) -> CliResult<Vec<CatalogEntry>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(|e| CliError::params(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::params(format!("{}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}:{}: {e}", path.display(), k + 1)))?;
        out.push(entry);
    }
    Ok(out)
}

/// Appends entries whose canonical table is not present yet; returns how many
/// lines were written.
pub fn append_catalog(path: &Path, entries: &[CatalogEntry]) -> CliResult<usize> {
    let mut seen: BTreeSet<(usize, Vec<Vec<usize>>)> =
        read_catalog(path)?.into_iter().map(|e| (e.n, e.table)).collect();
    let fresh: Vec<&CatalogEntry> = entries.iter().filter(|e| seen.insert((e.n, e.table.clone()))).collect();
    if fresh.is_empty() {
        return Ok(0);
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::params(format!("{}: {e}", path.display())))?;
    for e in &fresh {
        let line = serde_json::to_string(e).expect("entry serializes");
        writeln!(file, "{line}").map_err(|e| CliError::params(format!("{}: {e}", path.display())))?;
    }
    Ok(fresh.len())
}
