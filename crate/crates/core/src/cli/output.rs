//! Tables written as CSV with a `#` provenance line, or as JSON.

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Row {
    pub cells: Vec<Cell>,
    /// Determinant diagnostics by name, for JSON output.
    pub diagnostics: Map<String, Value>,
    pub error: Option<String>,
}

impl Row {
    pub fn new(cells: Vec<Cell>) -> Self {
        Row {
            cells,
            ..Default::default()
        }
    }

    pub fn diagnostic(mut self, name: &str, value: impl Serialize) -> Self {
        self.diagnostics.insert(
            name.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
        self
    }

    pub fn error(mut self, e: Option<String>) -> Self {
        self.error = e;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// Summary checks, reported after the rows.
    pub notes: Vec<String>,
}

fn csv_field(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_num(*v),
        Cell::Text(s) => quote(s),
        Cell::Empty => String::new(),
    }
}

/// Shortest round-trip form, in scientific notation outside `[1e-4, 1e6)`.
fn format_num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e6).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\"").replace('\n', " "))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            ..Default::default()
        }
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// CSV with `provenance` as the first line, prefixed by `#`.
    pub fn to_csv(&self, provenance: &str) -> String {
        let mut out = format!("# {provenance}\n{},error\n", self.columns.join(","));
        for r in &self.rows {
            let mut fields: Vec<String> = r.cells.iter().map(csv_field).collect();
            fields.push(r.error.as_deref().map(quote).unwrap_or_default());
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, provenance: &str) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let values: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(&r.cells)
                    .map(|(c, v)| {
                        (
                            c.to_string(),
                            serde_json::to_value(v).unwrap_or(Value::Null),
                        )
                    })
                    .collect();
                json!({ "values": values, "diagnostics": r.diagnostics, "error": r.error })
            })
            .collect();
        let doc = json!({ "provenance": provenance, "columns": self.columns, "rows": rows, "notes": self.notes });
        let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(vec!["s", "F2"]);
        t.rows
            .push(Row::new(vec![Cell::Num(-1.5), Cell::Num(0.25)]));
        t.rows
            .push(Row::new(vec![Cell::Num(2.0), Cell::Empty]).error(Some("bad, \"very\"".into())));
        t
    }

    #[test]
    fn csv_layout() {
        let s = table().to_csv("gapdet test");
        assert_eq!(
            s,
            "# gapdet test\ns,F2,error\n-1.5,0.25,\n2,,\"bad, \"\"very\"\"\"\n"
        );
        assert_eq!(table().failures(), 1);
        assert_eq!(format_num(1.5e-19), "1.5e-19");
        assert_eq!(format_num(-0.25), "-0.25");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&table().to_json("p")).unwrap();
        assert_eq!(v["rows"][0]["values"]["F2"], json!(0.25));
        assert_eq!(v["rows"][1]["values"]["F2"], Value::Null);
        assert_eq!(v["rows"][1]["error"], json!("bad, \"very\""));
    }
}
