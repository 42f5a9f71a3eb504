//! Betti reports: rows keyed by truncation level, columns by homological
//! degree, rendered in the table orientation used throughout (degrees as
//! column heads, most negative on the left) and as stable CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::FormatError;
use crate::scalar::Field;

/// The sign conventions document shipped with the crate; its hash is stamped
/// into every report so tables are traceable to the exact conventions.
pub const CONVENTIONS: &str = include_str!("../conventions.md");

pub fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    let out = h.finalize();
    out.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub field: Field,
    pub tool_version: String,
    pub input_hash: String,
    pub conventions_hash: String,
    /// row label (truncation level or weight) -> homological degree -> dim;
    /// zero entries are normalized away.
    pub rows: BTreeMap<u32, BTreeMap<i64, usize>>,
    pub warnings: Vec<String>,
}

impl BettiReport {
    pub fn new(field: Field, input_text: &str) -> Self {
        BettiReport {
            field,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hash: sha256_hex(input_text),
            conventions_hash: sha256_hex(CONVENTIONS),
            rows: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push_row(&mut self, level: u32, row: BTreeMap<i64, usize>) {
        self.rows
            .insert(level, row.into_iter().filter(|(_, d)| *d > 0).collect());
    }

    /// Stable CSV: header `p,degree,dim`, rows sorted by (p, degree), only
    /// nonzero dimensions.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,degree,dim\n");
        for (p, row) in &self.rows {
            for (degree, dim) in row {
                let _ = writeln!(out, "{p},{degree},{dim}");
            }
        }
        out
    }

    /// Inverse of `to_csv`, for round-trip checks and downstream tooling.
    pub fn rows_from_csv(text: &str) -> Result<BTreeMap<u32, BTreeMap<i64, usize>>, FormatError> {
        let mut rows: BTreeMap<u32, BTreeMap<i64, usize>> = BTreeMap::new();
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "p,degree,dim")) => {}
            _ => {
                return Err(FormatError::Syntax { line: 1, msg: "missing CSV header".into() })
            }
        }
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let bad = || FormatError::Syntax {
                line: idx + 1,
                msg: format!("bad CSV row `{line}`"),
            };
            let p: u32 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            let degree: i64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            let dim: usize = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            if parts.next().is_some() {
                return Err(bad());
            }
            rows.entry(p).or_default().insert(degree, dim);
        }
        Ok(rows)
    }

    /// Render in table orientation: one row per level, homological degrees
    /// as columns from most negative to zero (and positive if present).
    pub fn render_table(&self, row_label: &str) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let degrees: Vec<i64> = {
            let mut set: Vec<i64> = self
                .rows
                .values()
                .flat_map(|r| r.keys().copied())
                .collect();
            set.sort();
            set.dedup();
            if set.is_empty() {
                let _ = writeln!(out, "(all rows empty)");
                return out;
            }
            (set[0]..=*set.last().unwrap()).collect()
        };
        let label_width = self
            .rows
            .keys()
            .map(|p| format!("{row_label} = {p}").len())
            .max()
            .unwrap_or(0)
            .max("degrees".len());
        let col_width = degrees.iter().map(|d| d.to_string().len()).max().unwrap_or(2) + 1;
        let _ = write!(out, "{:label_width$} |", "degrees");
        for d in &degrees {
            let _ = write!(out, "{d:>col_width$}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:-<1$}", "", label_width + 2 + degrees.len() * col_width);
        for (p, row) in &self.rows {
            let _ = write!(out, "{:label_width$} |", format!("{row_label} = {p}"));
            for d in &degrees {
                match row.get(d) {
                    Some(v) => {
                        let _ = write!(out, "{v:>col_width$}");
                    }
                    None => {
                        let _ = write!(out, "{:>col_width$}", ".");
                    }
                }
            }
            let _ = writeln!(out);
        }
        out
    }

    pub fn metadata_lines(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# field: {}", self.field);
        let _ = writeln!(s, "# tool version: {}", self.tool_version);
        let _ = writeln!(s, "# input sha256: {}", self.input_hash);
        let _ = writeln!(s, "# conventions sha256: {}", self.conventions_hash);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut r = BettiReport::new(Field::Rationals, "input");
        r.push_row(0, BTreeMap::from([(0, 2)]));
        r.push_row(1, BTreeMap::from([(-2, 3), (-1, 1), (5, 0)]));
        let csv = r.to_csv();
        let back = BettiReport::rows_from_csv(&csv).unwrap();
        assert_eq!(back, r.rows);
        // byte-stable
        assert_eq!(csv, r.to_csv());
        assert_eq!(csv, "p,degree,dim\n0,0,2\n1,-2,3\n1,-1,1\n");
    }

    #[test]
    fn hashes_are_deterministic() {
        let a = BettiReport::new(Field::Prime(2), "same");
        let b = BettiReport::new(Field::Prime(2), "same");
        assert_eq!(a.input_hash, b.input_hash);
        assert_eq!(a.conventions_hash, b.conventions_hash);
        assert_ne!(a.input_hash, BettiReport::new(Field::Prime(2), "other").input_hash);
    }

    #[test]
    fn table_orientation_lists_degrees_ascending() {
        let mut r = BettiReport::new(Field::Rationals, "x");
        r.push_row(1, BTreeMap::from([(-2, 3), (-1, 1)]));
        let table = r.render_table("p");
        let header = table.lines().next().unwrap();
        let neg2 = header.find("-2").unwrap();
        let neg1 = header.rfind("-1").unwrap();
        assert!(neg2 < neg1);
    }
}
