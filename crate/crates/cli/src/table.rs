//! Row-oriented output: CSV with 17 significant digits, or a JSON array of
//! objects with shortest round-trip floats.

use serde_json::{Map, Value};
use sublevel::fmt17;

pub enum Cell {
    Num(f64),
    /// Blank in CSV, null in JSON.
    Missing,
    Int(u64),
    Text(String),
    /// JSON-only payload; the column is left out of CSV.
    Json(Value),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

pub struct Table {
    columns: Vec<(String, bool)>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(csv_columns: &[&str]) -> Self {
        Table {
            columns: csv_columns.iter().map(|c| (c.to_string(), true)).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a column that only appears in JSON output.
    pub fn json_column(mut self, name: &str) -> Self {
        self.columns.push((name.to_string(), false));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let keep: Vec<usize> = (0..self.columns.len())
            .filter(|&i| self.columns[i].1)
            .collect();
        let mut out = keep
            .iter()
            .map(|&i| self.columns[i].0.as_str())
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = keep
                .iter()
                .map(|&i| match &row[i] {
                    Cell::Num(x) => fmt17(*x),
                    Cell::Missing => String::new(),
                    Cell::Int(n) => n.to_string(),
                    Cell::Text(s) => s.clone(),
                    Cell::Json(v) => v.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for ((name, _), cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(x) => Value::from(*x),
                        Cell::Missing => Value::Null,
                        Cell::Int(n) => Value::from(*n),
                        Cell::Text(s) => Value::from(s.as_str()),
                        Cell::Json(v) => v.clone(),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("plain values");
        s.push('\n');
        s
    }
}
