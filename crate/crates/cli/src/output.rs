use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command invocation. Every exact quantity is a string in canonical
/// form: fractions `p/q`, surds `(a+b*sqrt(D))/c`, enclosures `["lo", "hi"]`.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Value,
    pub status: Status,
    pub error_detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// Rows for csv output; commands without a natural table fall back to
/// `key,value` pairs of their outputs.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub outputs: Value,
    pub text: String,
    pub table: Option<Table>,
}

fn flatten(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(flatten).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn fallback_table(outputs: &Value) -> Table {
    let mut table = Table::new(vec!["key", "value"]);
    if let Value::Object(map) = outputs {
        for (k, v) in map {
            table.push(vec![k.clone(), flatten(v)]);
        }
    }
    table
}

pub fn emit_ok(
    command: &str,
    inputs: Map<String, Value>,
    report: Report,
    format: Format,
) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Text => {
            write!(out, "{}", report.text)?;
            if !report.text.ends_with('\n') {
                writeln!(out)?;
            }
        }
        Format::Json => {
            let record = OutputRecord {
                command: command.to_string(),
                inputs,
                outputs: report.outputs,
                status: Status::Ok,
                error_detail: String::new(),
            };
            serde_json::to_writer_pretty(&mut out, &record)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let table = match report.table {
                Some(t) => t,
                None => fallback_table(&report.outputs),
            };
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn emit_error(
    command: &str,
    inputs: Map<String, Value>,
    detail: &str,
    format: Format,
) -> io::Result<()> {
    if format == Format::Json {
        let record = OutputRecord {
            command: command.to_string(),
            inputs,
            outputs: Value::Null,
            status: Status::Error,
            error_detail: detail.to_string(),
        };
        let stdout = io::stdout();
        let mut out = stdout.lock();
        serde_json::to_writer_pretty(&mut out, &record)?;
        writeln!(out)?;
    }
    eprintln!("error: {detail}");
    Ok(())
}
