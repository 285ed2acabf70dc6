//! CSV and JSON rendering.
//!
//! Numbers are written with the shortest decimal form that round-trips to
//! the same binary value, independent of locale.

use serde::Serialize;
use serde_json::{json, Value};

use squeezed_qfi::{DensityGrid, OptimalTimeResult, QfiSample, SweepTable};

use crate::OutputFormat;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell<'a> {
    Text(&'a str),
    Num(f64),
}

impl Cell<'_> {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.to_string(),
            Cell::Num(v) => format_number(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::from(*s),
            Cell::Num(v) => Value::from(*v),
        }
    }
}

/// Shortest round-trip decimal, e.g. `0.1`, `2.0`, `1e-7`.
pub fn format_number(v: f64) -> String {
    format!("{v:?}")
}

/// A rendered table: column names plus rows of cells.
pub struct Table<'a> {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell<'a>>>,
}

impl Table<'_> {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json<S: Serialize, M: Serialize>(&self, spec: &S, metadata: &M) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let mut meta = serde_json::to_value(metadata).expect("metadata serializes");
        if let Value::Object(map) = &mut meta {
            map.insert("columns".into(), json!(self.columns));
        }
        let doc = json!({
            "spec": spec,
            "metadata": meta,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn render<S: Serialize, M: Serialize>(&self, format: OutputFormat, spec: &S, metadata: &M) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(spec, metadata),
        }
    }
}

pub const POINT_COLUMNS: &[&str] = &[
    "estimand",
    "T",
    "t",
    "r",
    "theta",
    "s",
    "omega_c",
    "alpha",
    "gamma",
    "dgamma",
    "qfi",
    "cfi_term",
    "quantum_term",
];
pub const SWEEP_COLUMNS: &[&str] = &["axis", "value", "gamma", "dgamma", "qfi"];
pub const GRID_COLUMNS: &[&str] = &["T", "t", "gamma", "dgamma", "qfi"];
pub const OPT_TIME_COLUMNS: &[&str] = &["T", "t_star", "qfi_star"];

pub fn point_table(sample: &QfiSample) -> Table<'static> {
    let i = &sample.inputs;
    Table {
        columns: POINT_COLUMNS,
        rows: vec![vec![
            Cell::Text(i.estimand.label()),
            Cell::Num(i.point.temperature()),
            Cell::Num(i.point.time()),
            Cell::Num(i.squeeze.r()),
            Cell::Num(i.squeeze.theta()),
            Cell::Num(i.spectral.s()),
            Cell::Num(i.spectral.omega_c()),
            Cell::Num(i.probe.alpha()),
            Cell::Num(sample.gamma),
            Cell::Num(sample.dgamma),
            Cell::Num(sample.qfi),
            Cell::Num(sample.cfi_term),
            Cell::Num(sample.quantum_term),
        ]],
    }
}

pub fn sweep_table(table: &SweepTable) -> Table<'static> {
    let axis = table.spec.axis.label();
    Table {
        columns: SWEEP_COLUMNS,
        rows: table
            .rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Text(axis),
                    Cell::Num(r.value),
                    Cell::Num(r.gamma),
                    Cell::Num(r.dgamma),
                    Cell::Num(r.qfi),
                ]
            })
            .collect(),
    }
}

pub fn grid_table(grid: &DensityGrid) -> Table<'static> {
    Table {
        columns: GRID_COLUMNS,
        rows: grid
            .samples
            .iter()
            .map(|s| {
                vec![
                    Cell::Num(s.inputs.point.temperature()),
                    Cell::Num(s.inputs.point.time()),
                    Cell::Num(s.gamma),
                    Cell::Num(s.dgamma),
                    Cell::Num(s.qfi),
                ]
            })
            .collect(),
    }
}

pub fn opt_time_table(results: &[OptimalTimeResult]) -> Table<'static> {
    Table {
        columns: OPT_TIME_COLUMNS,
        rows: results
            .iter()
            .map(|r| vec![Cell::Num(r.temperature), Cell::Num(r.t_star), Cell::Num(r.qfi_star)])
            .collect(),
    }
}
