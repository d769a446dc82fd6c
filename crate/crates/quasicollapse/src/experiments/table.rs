//! Tabular output in CSV or JSON with deterministic, byte-stable rendering.
//!
//! Floats go through Rust's shortest round-trip formatting, so the same run
//! always produces the same bytes. CSV is UTF-8 with `\n` line endings and a
//! mandatory header row; empty cells stay empty. JSON renders as an array of
//! objects, written by hand so columns keep their declared order (a generic
//! map would alphabetize them).

use std::fmt::Write as _;
use std::path::Path;

use super::Failure;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(usize),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self, out: &mut String) {
        match self {
            Cell::Float(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::Text(s) => out.push_str(s),
            Cell::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Cell::Empty => {}
        }
    }

    fn json(&self, out: &mut String) {
        match self {
            Cell::Float(v) if v.is_finite() => {
                let _ = write!(out, "{v}");
            }
            Cell::Float(_) => out.push_str("null"),
            Cell::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::Text(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Cell::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Cell::Empty => out.push_str("null"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(name: &str) -> Result<Self, Failure> {
        match name {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Failure::config(format!(
                "`format` must be csv or json, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("[");
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            for (i, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{name}\": ");
                cell.json(&mut out);
            }
            out.push('}');
        }
        if !self.rows.is_empty() {
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

/// Where a command's output goes and how it is rendered. Both come from the
/// `out` and `format` keys (or their flags); each command carries its own
/// default format.
#[derive(Debug)]
pub struct OutputSpec {
    pub path: std::path::PathBuf,
    pub format: Format,
}

impl OutputSpec {
    pub fn take(
        cfg: &mut super::config::ConfigMap,
        default: Format,
    ) -> Result<Self, Failure> {
        let path = cfg
            .take_string("out")
            .map(std::path::PathBuf::from)
            .unwrap_or_else(|| std::path::PathBuf::from("-"));
        let format = match cfg.take_string("format") {
            Some(name) => Format::parse(&name)?,
            None => default,
        };
        Ok(Self { path, format })
    }
}

/// Write rendered text to `path`, or to stdout when the path is `-`.
pub fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(path, text)
        .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["epsilon", "value", "kind", "ok"]);
        t.push(vec![
            Cell::Float(0.1),
            Cell::Float(-1.4142135623730951),
            Cell::Text("analytic".into()),
            Cell::Bool(true),
        ]);
        t.push(vec![Cell::Float(0.25), Cell::Empty, Cell::Text("numeric".into()), Cell::Bool(false)]);
        t
    }

    #[test]
    fn csv_has_header_lf_rows_and_blank_empty_cells() {
        let text = sample().render(Format::Csv);
        assert_eq!(
            text,
            "epsilon,value,kind,ok\n0.1,-1.4142135623730951,analytic,true\n0.25,,numeric,false\n"
        );
    }

    #[test]
    fn json_keeps_column_order_and_nulls_empty_cells() {
        let text = sample().render(Format::Json);
        assert!(text.starts_with("[\n  {\"epsilon\": 0.1, \"value\": -1.4142135623730951"));
        assert!(text.contains("\"value\": null"));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), 2);
    }

    #[test]
    fn floats_round_trip() {
        let v = 0.30000000000000004_f64;
        let mut s = String::new();
        Cell::Float(v).csv(&mut s);
        assert_eq!(s.parse::<f64>().unwrap(), v);
    }

    #[test]
    fn empty_table_is_still_valid_in_both_formats() {
        let t = Table::new(vec!["a", "b"]);
        assert_eq!(t.render(Format::Csv), "a,b\n");
        let parsed: serde_json::Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), 0);
    }
}
