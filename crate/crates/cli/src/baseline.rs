//! Numeric comparison of an output directory against a stored baseline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub default: f64,
    /// Per column name; overrides `default`.
    #[serde(default)]
    pub columns: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { default: 1e-9, columns: BTreeMap::new() }
    }
}

impl Tolerances {
    pub fn for_column(&self, name: &str) -> f64 {
        self.columns.get(name).copied().unwrap_or(self.default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Drift {
    pub file: String,
    pub row: usize,
    pub column: String,
    pub current: f64,
    pub baseline: f64,
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|e| schema(path, e.to_string()))?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty());
    let header = lines.next().ok_or_else(|| schema(path, "empty table".into()))?;
    Ok(Table {
        header: header.split(',').map(str::to_owned).collect(),
        rows: lines.map(|l| l.split(',').map(str::to_owned).collect()).collect(),
    })
}

fn schema(path: &Path, message: String) -> CliError {
    CliError::Schema { path: path.to_path_buf(), message }
}

fn csv_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    out.sort();
    Ok(out)
}

/// Compares every CSV of `baseline` with the same file under `current`. A
/// numeric cell drifts when `|a − b| > tol · max(1, |b|)`; text cells must
/// match exactly. Missing files or columns and row-count changes are schema
/// errors.
pub fn compare_baseline(current: &Path, baseline: &Path, tol: &Tolerances) -> Result<Vec<Drift>> {
    let mut drifts = Vec::new();
    for base_path in csv_files(baseline)? {
        let name = base_path.file_name().unwrap().to_string_lossy().into_owned();
        let cur_path = current.join(&name);
        if !cur_path.is_file() {
            return Err(schema(&cur_path, "missing file".into()));
        }
        let (b, c) = (read_table(&base_path)?, read_table(&cur_path)?);
        if b.rows.len() != c.rows.len() {
            return Err(schema(&cur_path, format!("{} rows, baseline has {}", c.rows.len(), b.rows.len())));
        }
        for (j, col) in b.header.iter().enumerate() {
            let k = c.header.iter().position(|h| h == col).ok_or_else(|| schema(&cur_path, format!("missing column {col}")))?;
            let t = tol.for_column(col);
            for (row, (br, cr)) in b.rows.iter().zip(&c.rows).enumerate() {
                let (bs, cs) = (br.get(j).map_or("", String::as_str), cr.get(k).map_or("", String::as_str));
                let drifted = match (bs.parse::<f64>(), cs.parse::<f64>()) {
                    (Ok(bv), Ok(cv)) if bv.is_nan() && cv.is_nan() => false,
                    (Ok(bv), Ok(cv)) => !((cv - bv).abs() <= t * bv.abs().max(1.0)),
                    _ => bs != cs,
                };
                if drifted {
                    drifts.push(Drift {
                        file: name.clone(),
                        row,
                        column: col.clone(),
                        current: cs.parse().unwrap_or(f64::NAN),
                        baseline: bs.parse().unwrap_or(f64::NAN),
                    });
                }
            }
        }
    }
    Ok(drifts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn put(dir: &Path, name: &str, body: &str) {
        fs::write(dir.join(name), body).unwrap();
    }

    #[test]
    fn identical_and_perturbed() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        put(a.path(), "n.csv", "# pmshock 0 config_hash=x\nt,v,label\n1,0.5,ok\n2,0.25,ok\n");
        put(b.path(), "n.csv", "# pmshock 0 config_hash=y\nt,v,label\n1,0.5,ok\n2,0.25,ok\n");
        let tol = Tolerances { default: 1e-6, ..Default::default() };
        assert!(compare_baseline(a.path(), b.path(), &tol).unwrap().is_empty());

        put(a.path(), "n.csv", "t,v,label\n1,0.501,ok\n2,0.25,ok\n");
        let d = compare_baseline(a.path(), b.path(), &tol).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].row, d[0].column.as_str()), (0, "v"));

        let loose = Tolerances { default: 1e-6, columns: BTreeMap::from([("v".into(), 1e-2)]) };
        assert!(compare_baseline(a.path(), b.path(), &loose).unwrap().is_empty());
    }

    #[test]
    fn schema_errors() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        put(b.path(), "n.csv", "t,v\n1,2\n");
        assert!(matches!(compare_baseline(a.path(), b.path(), &Tolerances::default()), Err(CliError::Schema { .. })));
        put(a.path(), "n.csv", "t\n1\n");
        assert!(matches!(compare_baseline(a.path(), b.path(), &Tolerances::default()), Err(CliError::Schema { .. })));
        put(a.path(), "n.csv", "t,v\n1,2\n3,4\n");
        assert!(matches!(compare_baseline(a.path(), b.path(), &Tolerances::default()), Err(CliError::Schema { .. })));
    }
}
