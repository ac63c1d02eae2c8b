//! Reader for the CSVs this tool emits: a header line followed by purely
//! numeric rows. Every emitted file must round-trip through here.

use anyhow::{bail, Context, Result};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct DataFile {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_csv(path: &Path) -> Result<DataFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read data file {}", path.display()))?;
    parse_csv(&text).with_context(|| format!("ill-formed data file {}", path.display()))
}

pub fn parse_csv(text: &str) -> Result<DataFile> {
    let mut lines = text.lines();
    let header_line = match lines.next() {
        Some(h) if !h.trim().is_empty() => h,
        _ => bail!("missing header line"),
    };
    let header: Vec<String> = header_line.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            bail!(
                "row {} has {} fields, header has {}",
                i + 2,
                fields.len(),
                header.len()
            );
        }
        let row: Vec<f64> = fields
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .with_context(|| format!("non-numeric field {f:?} in row {}", i + 2))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(DataFile { header, rows })
}

impl DataFile {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Distinct values of a column in first-appearance order.
    pub fn distinct(&self, col: usize) -> Vec<f64> {
        let mut seen = Vec::new();
        for row in &self.rows {
            let v = row[col];
            if !seen.iter().any(|&s: &f64| s == v) {
                seen.push(v);
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_emitted_format() {
        let d = parse_csv("r,alpha,P\n0.00000000000e0,1.0,4.0\n1.0,1.0,5.41341132946e-1\n")
            .unwrap();
        assert_eq!(d.header, vec!["r", "alpha", "P"]);
        assert_eq!(d.rows.len(), 2);
        assert_eq!(d.rows[0][2], 4.0);
        assert_eq!(d.column("P"), Some(2));
        assert_eq!(d.distinct(1), vec![1.0]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("a,b\n1.0\n").is_err());
        assert!(parse_csv("a,b\n1.0,xyz\n").is_err());
    }
}
