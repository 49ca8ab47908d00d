use std::io::Write;

use gnpforge_core::Error;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Value,
    pub config: RunConfig,
    pub timestamp: String,
    pub payload: Value,
    pub findings: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub command: Value,
    pub config: Option<RunConfig>,
    pub timestamp: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn error_body(e: &Error) -> ErrorBody {
    let (kind, exit_code) = match e {
        Error::InvalidInput(_) => ("invalid-input", EXIT_INVALID),
        Error::BudgetExceeded { .. } => ("budget-exceeded", EXIT_BUDGET),
        Error::FieldMismatch { .. } => ("field-mismatch", EXIT_INVALID),
        Error::Integrality(_) => ("integrality", EXIT_INVALID),
        Error::Precision(_) => ("precision", EXIT_INVALID),
        Error::Degenerate(_) => ("degenerate", EXIT_INVALID),
        Error::Internal(_) => ("internal", EXIT_INVALID),
    };
    ErrorBody { kind, message: e.to_string(), exit_code }
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

/// Rows of a tabular payload for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn write_csv(out: &mut dyn Write, table: &Table) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()
}
