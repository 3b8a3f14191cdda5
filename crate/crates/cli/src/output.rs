use serde_json::{Map, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// Header plus rows, rendered as CSV or as the JSON report layout.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra CSV rows appended after the data, outside the JSON results.
    pub footer: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `value` in scientific notation with `digits` significant digits.
pub fn format_float(value: f64, digits: usize) -> String {
    if value.is_finite() {
        format!("{:.*e}", digits - 1, value)
    } else {
        value.to_string()
    }
}

fn csv_cell(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => format_float(*x, digits),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

/// JSON number carrying exactly the digits the CSV would show.
pub fn json_float(value: f64, digits: usize) -> Value {
    let rounded: f64 = format_float(value, digits).parse().unwrap_or(value);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn json_cell(cell: &Cell, digits: usize) -> Value {
    match cell {
        Cell::Int(i) => Value::from(*i),
        Cell::Float(x) => json_float(*x, digits),
        Cell::Text(s) => Value::from(s.as_str()),
    }
}

pub fn render_csv(table: &Table, digits: usize) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in table.rows.iter().chain(&table.footer) {
        let line: Vec<String> = row.iter().map(|c| csv_cell(c, digits)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(
    params: Map<String, Value>,
    table: &Table,
    diagnostics: Map<String, Value>,
    digits: usize,
) -> String {
    let results: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let record: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| (name.to_string(), json_cell(cell, digits)))
                .collect();
            Value::Object(record)
        })
        .collect();
    let mut top = Map::new();
    top.insert("params".into(), Value::Object(params));
    top.insert("results".into(), Value::Array(results));
    top.insert("diagnostics".into(), Value::Object(diagnostics));
    let mut text =
        serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialise");
    text.push('\n');
    text
}
