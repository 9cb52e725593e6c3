use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("row has {got} cells, report has {expected} columns")]
    Width { expected: usize, got: usize },
    #[error("malformed report at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Cell::Int(n) => Some(*n),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            Cell::Int(_) => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

/// A census table. Text cells never look like integers, so TSV output
/// reads back to the same cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Corpus id and configuration hash.
    pub provenance: String,
}

impl Report {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Report {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            provenance: String::new(),
        }
    }

    pub fn with_provenance(mut self, corpus: &str, config_hash: &str) -> Self {
        self.provenance = format!("corpus={corpus} config={config_hash}");
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<(), ReportError> {
        if row.len() != self.columns.len() {
            return Err(ReportError::Width {
                expected: self.columns.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Internal rows are built with the right width by construction.
    pub(crate) fn row(&mut self, row: Vec<Cell>) {
        self.push_row(row).expect("row width matches columns");
    }

    /// First row whose leading cells equal `key`, as text.
    pub fn find(&self, key: &[&str]) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| key.iter().zip(r.iter()).all(|(k, c)| c.to_string() == *k))
            .map(Vec::as_slice)
    }

    /// Integer in `column` of the row keyed by `key`.
    pub fn int(&self, key: &[&str], column: &str) -> Option<i64> {
        let col = self.columns.iter().position(|c| c == column)?;
        self.find(key)?.get(col)?.as_int()
    }

    pub fn text(&self, key: &[&str], column: &str) -> Option<&str> {
        let col = self.columns.iter().position(|c| c == column)?;
        self.find(key)?.get(col)?.as_text()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# provenance: {}\n# title: {}\n", self.provenance, self.title);
        out.push_str(&self.columns.iter().map(|c| escape(c)).collect::<Vec<_>>().join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(&c.to_string())).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Report, ReportError> {
        let mut lines = text.lines().enumerate();
        let mut header = |prefix: &str| -> Result<String, ReportError> {
            match lines.next() {
                Some((_, l)) if l.starts_with(prefix) => Ok(unescape(&l[prefix.len()..])),
                Some((i, _)) => Err(malformed(i + 1, &format!("expected `{prefix}`"))),
                None => Err(malformed(0, "truncated header")),
            }
        };
        let provenance = header("# provenance: ")?;
        let title = header("# title: ")?;
        let columns: Vec<String> = match lines.next() {
            Some((_, l)) => l.split('\t').map(unescape).collect(),
            None => return Err(malformed(3, "missing column line")),
        };
        let mut report = Report {
            title,
            columns,
            rows: Vec::new(),
            provenance,
        };
        for (i, line) in lines {
            let row: Vec<Cell> = line
                .split('\t')
                .map(|c| match c.parse::<i64>() {
                    Ok(n) if n.to_string() == c => Cell::Int(n),
                    _ => Cell::Text(unescape(c)),
                })
                .collect();
            report
                .push_row(row)
                .map_err(|e| malformed(i + 1, &e.to_string()))?;
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        let report: Report = serde_json::from_str(text).map_err(|e| malformed(e.line(), &e.to_string()))?;
        if let Some(bad) = report.rows.iter().find(|r| r.len() != report.columns.len()) {
            return Err(ReportError::Width {
                expected: report.columns.len(),
                got: bad.len(),
            });
        }
        Ok(report)
    }
}

fn malformed(line: usize, reason: &str) -> ReportError {
    ReportError::Malformed {
        line,
        reason: reason.to_string(),
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}
