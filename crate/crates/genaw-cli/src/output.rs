//! JSON and CSV emission with 17 significant digits.

use std::io::Write;

use anyhow::Result;
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::config::{fmt_real, OutputFormat};

/// A real serialised as a JSON number with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            fmt_real(self.0)
        } else {
            format!("{}", self.0)
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = if self.0.is_finite() { fmt_real(self.0) } else { "null".to_string() };
        RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

/// A table that can be written as JSON (an array of objects or one object) or CSV.
pub trait Table {
    fn json(&self) -> Result<String>;
    fn header(&self) -> Vec<String>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn render(table: &dyn Table, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = table.json()?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(table.header())?;
            for row in table.rows() {
                w.write_record(row)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
