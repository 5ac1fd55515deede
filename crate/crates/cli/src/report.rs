//! Report envelope and the three serializers (aligned text, JSON, CSV).
//!
//! The JSON layout is schema-stable: `{command, status,
//! generated_with_version, payload}`, arrays in fixed orders, no
//! timestamps, so byte-for-byte reproducibility holds across runs.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Ok,
    Diffs,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Diffs => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub generated_with_version: &'static str,
    pub payload: serde_json::Value,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a command hands back to `main` for printing.
pub struct Emitted {
    pub command: String,
    pub status: Status,
    pub payload: serde_json::Value,
    /// Pre-rendered fixed-width text body.
    pub text: String,
    /// CSV rows, header first.
    pub csv: Vec<Vec<String>>,
}

impl Emitted {
    pub fn print(&self, format: Format) -> std::io::Result<()> {
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match format {
            Format::Text => write!(out, "{}", self.text),
            Format::Json => {
                let report = Report {
                    command: self.command.clone(),
                    status: self.status,
                    generated_with_version: VERSION,
                    payload: self.payload.clone(),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &self.csv {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

/// Left-pad every cell to its column width; two spaces between columns.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:>width$}", cell, width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
