//! Column tables and the files they are written to.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }

    fn from_json(v: &Value) -> Cell {
        match v {
            Value::Null => Cell::Empty,
            Value::Bool(b) => Cell::Bool(*b),
            Value::Number(n) => n.as_i64().map_or_else(|| Cell::Num(n.as_f64().unwrap_or(f64::NAN)), Cell::Int),
            Value::String(s) => Cell::Text(s.clone()),
            other => Cell::Text(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// `row![a, b, c]` builds a row of cells.
#[macro_export]
macro_rules! row {
    ($($v:expr),* $(,)?) => { vec![$($crate::table::Cell::from($v)),*] };
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }


    /// One column per field of a flat serializable struct.
    pub fn from_records<T: Serialize>(records: &[T]) -> Result<Self> {
        let mut table = Table::default();
        for r in records {
            let Value::Object(map) = serde_json::to_value(r)? else { bail!("record is not a struct") };
            if table.columns.is_empty() {
                table.columns = map.keys().cloned().collect();
            }
            table.rows.push(map.values().map(Cell::from_json).collect());
        }
        Ok(table)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::text))?;
        }
        Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect::<Map<_, _>>()))
            .collect();
        Ok(serde_json::to_string_pretty(&records)? + "\n")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Version string recorded in every sidecar.
pub fn version() -> String {
    format!("superpos {} ({})", env!("CARGO_PKG_VERSION"), env!("SUPERPOS_GIT_DESCRIBE"))
}

/// Where tables go: files in a directory with a JSON sidecar, or stdout.
pub struct Sink {
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    /// Write `table` as `<name>.<ext>` plus `<name>.meta.json`, or print it.
    pub fn emit(&self, name: &str, table: &Table, config: Value) -> Result<()> {
        let body = match self.format {
            Format::Csv => table.to_csv()?,
            Format::Json => table.to_json()?,
        };
        let Some(dir) = &self.out else {
            print!("{body}");
            return Ok(());
        };
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let ext = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let path = dir.join(format!("{name}.{ext}"));
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        let meta = serde_json::json!({
            "version": version(),
            "table": format!("{name}.{ext}"),
            "columns": table.columns,
            "rows": table.rows.len(),
            "config": config,
        });
        let meta_path = dir.join(format!("{name}.meta.json"));
        std::fs::write(&meta_path, serde_json::to_string_pretty(&meta)? + "\n")
            .with_context(|| format!("writing {}", meta_path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["m", "p", "name"]);
        t.push(row![3usize, 0.25, "a,b"]);
        t.push(row![4usize, None::<f64>, "x"]);
        assert_eq!(t.to_csv().unwrap(), "m,p,name\r\n3,0.25,\"a,b\"\r\n4,,x\r\n");
        let v: Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(v[1]["p"], Value::Null);
        assert_eq!(v[0]["name"], "a,b");
    }

    #[test]
    fn records_keep_field_order() {
        #[derive(Serialize)]
        struct R {
            z: u32,
            a: f64,
        }
        let t = Table::from_records(&[R { z: 1, a: 0.5 }]).unwrap();
        assert_eq!(t.columns, vec!["z", "a"]);
        assert_eq!(t.rows[0], vec![Cell::Int(1), Cell::Num(0.5)]);
    }
}
