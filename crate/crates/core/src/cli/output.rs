//! Result artifacts and their CSV/JSON encodings.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use super::{Format, RunError};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

/// Decimal rendering with 15 significant digits; plain notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.14e}").parse().unwrap();
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Table of results plus free-form diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Map<String, Value>,
    pub summary: String,
}

impl Artifact {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Artifact { columns, rows: Vec::new(), diagnostics: Map::new(), summary: String::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn diag(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.into(), value.into());
    }

    /// Reject any NaN or infinity among the numbers about to be written.
    pub fn check_finite(&self) -> Result<(), RunError> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if let Cell::Num(x) = cell {
                    if !x.is_finite() {
                        return Err(RunError::Numerical(format!(
                            "{} is {x} in result row {r}",
                            self.columns[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, config: &Value) -> Value {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(k, v)| ((*k).to_string(), v.to_json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = Map::new();
        out.insert("config".into(), config.clone());
        out.insert("results".into(), Value::Array(results));
        out.insert("diagnostics".into(), Value::Object(self.diagnostics.clone()));
        Value::Object(out)
    }

    /// CSV body preceded by `#` lines carrying the config and diagnostics.
    pub fn to_csv(&self, config: &Value) -> Result<Vec<u8>, RunError> {
        let mut buf = Vec::new();
        let io = |e: std::io::Error| RunError::Validation(e.to_string());
        writeln!(buf, "# config: {config}").map_err(io)?;
        writeln!(buf, "# diagnostics: {}", Value::Object(self.diagnostics.clone())).map_err(io)?;
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            let csv_err = |e: csv::Error| RunError::Validation(e.to_string());
            w.write_record(&self.columns).map_err(csv_err)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::to_csv)).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        Ok(buf)
    }

    pub fn write(&self, path: &Path, format: Format, config: &Value) -> Result<(), RunError> {
        let bytes = match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(config))
                    .map_err(|e| RunError::Numerical(e.to_string()))?;
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => self.to_csv(config)?,
        };
        fs::write(path, bytes).map_err(|e| RunError::Validation(format!("cannot write {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(2.0), "2");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(format_number(-1.5e-9), "-1.5e-9");
        assert_eq!(format_number(0.0), "0");
    }

    #[test]
    fn csv_layout() {
        let mut a = Artifact::new(vec!["p", "value"]);
        a.push(vec![Cell::Num(2.0), Cell::Num(0.5)]);
        a.diag("n", 1);
        let text = String::from_utf8(a.to_csv(&Value::Null).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# config"));
        assert!(lines[1].starts_with("# diagnostics"));
        assert_eq!(lines[2], "p,value");
        assert_eq!(lines[3], "2,0.5");
    }

    #[test]
    fn non_finite_is_rejected() {
        let mut a = Artifact::new(vec!["x"]);
        a.push(vec![Cell::Num(f64::NAN)]);
        assert!(matches!(a.check_finite(), Err(RunError::Numerical(_))));
    }
}
