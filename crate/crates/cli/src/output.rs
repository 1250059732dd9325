use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// Version of every JSON report the CLI prints.
pub const SCHEMA_VERSION: u32 = 1;

/// A command result that renders in all three formats.
pub trait Report: Serialize {
    fn csv(&self) -> CliResult<String>;
    fn text(&self) -> String;
}

pub fn emit(report: &impl Report, format: Format) -> CliResult<()> {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Text => {
            let mut t = report.text();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Csv => report.csv()?,
    };
    print!("{out}");
    Ok(())
}

/// CSV text from a header row followed by data rows.
pub fn rows_to_csv(rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn points_text(points: &[Vec<usize>]) -> String {
    points
        .iter()
        .map(|p| format!("({})", join(p, ",")))
        .collect::<Vec<_>>()
        .join(" ")
}
