use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Provenance block wrapped around every JSON result.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command_line: Vec<String>,
    pub parameters: serde_json::Value,
    pub started_at: String,
    pub finished_at: String,
    pub integer_width: &'static str,
    pub elapsed_ms: u64,
    /// SHA-256 of the canonical result JSON.
    pub result_digest: String,
}

/// Compact JSON with struct field order as the key order.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("result types serialize infallibly")
}

pub fn digest(canonical: &str) -> String {
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// A finished command: its result and, for CSV, the flat table.
pub struct Rendered {
    pub json: String,
    pub csv: Csv,
}

#[derive(Default)]
pub struct Csv {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&'static str]) -> Self {
        Csv { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub struct Invocation {
    pub command_line: Vec<String>,
    pub parameters: serde_json::Value,
    pub started: DateTime<Utc>,
}

impl Invocation {
    pub fn finish(&self, rendered: &Rendered, elapsed: Duration, format: Format) -> String {
        match format {
            Format::Csv => rendered.csv.render(),
            Format::Json => {
                let manifest = RunManifest {
                    tool: "ptl",
                    version: ptl_core::VERSION,
                    command_line: self.command_line.clone(),
                    parameters: self.parameters.clone(),
                    started_at: timestamp(self.started),
                    finished_at: timestamp(Utc::now()),
                    integer_width: "i128",
                    elapsed_ms: elapsed.as_millis() as u64,
                    result_digest: digest(&rendered.json),
                };
                // the result is embedded byte for byte so the digest can be
                // recomputed from the envelope
                format!("{{\"manifest\":{},\"result\":{}}}\n", canonical_json(&manifest), rendered.json)
            }
        }
    }
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
