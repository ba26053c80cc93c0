use clap::ValueEnum;
use serde_json::Value;

use pieri_rank::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a command produced.
pub struct Outcome {
    pub value: Value,
    /// False when a verification check failed.
    pub success: bool,
    /// Header and rows for the text and csv renderings.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome { value, success: true, table: None }
    }

    /// A bare value printed as-is in every format.
    pub fn scalar(s: String) -> Self {
        Outcome::ok(Value::String(s)).with_table(Vec::new(), Vec::new())
    }

    pub fn with_table(mut self, header: Vec<String>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json(v: &Value) -> Result<String, Error> {
    // serde_json's default map is ordered by key
    let normalized: Value = serde_json::from_str(&v.to_string())?;
    Ok(serde_json::to_string_pretty(&normalized)?)
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len().max(rows.iter().map(Vec::len).max().unwrap_or(0));
    let mut widths = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let line = |r: &[String]| {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(i, c)| format!("{c}{}", " ".repeat(widths[i] - c.chars().count()))).collect();
        cells.join("  ").trim_end().to_string()
    };
    let mut out = Vec::new();
    if !header.is_empty() {
        out.push(line(header));
    }
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n")
}

fn out(s: &str) -> Result<(), Error> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{s}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

pub fn emit(o: &Outcome, format: Format) -> Result<(), Error> {
    if let (Value::String(s), Some((h, r))) = (&o.value, &o.table) {
        if h.is_empty() && r.is_empty() {
            out(s)?;
            return Ok(());
        }
    }
    match format {
        Format::Json => out(&to_sorted_json(&o.value)?)?,
        Format::Text => match &o.table {
            Some((h, r)) => out(&aligned(h, r))?,
            None => out(&to_sorted_json(&o.value)?)?,
        },
        Format::Csv => match &o.table {
            Some((h, r)) => {
                for row in std::iter::once(h).chain(r.iter()).filter(|row| !row.is_empty()) {
                    out(&row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","))?;
                }
            }
            None => return Err(Error::Parameter("csv output is not available for this command".into())),
        },
    }
    Ok(())
}
