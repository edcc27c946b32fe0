//! Tabular output: fixed header rows, CSV or JSON, optional run manifest.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever a column set changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Text(String),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Cell::Int(v.into())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    pub fn opt_int(v: Option<impl Into<BigInt>>) -> Self {
        v.map_or(Cell::Empty, Cell::int)
    }

    /// Exact rational as `p/q` (integers keep the `/1`).
    pub fn exact(r: &BigRational) -> Self {
        Cell::Text(format!("{}/{}", r.numer(), r.denom()))
    }

    fn csv(&self, digits: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => escape(s),
            Cell::Float(x) => format!("{x:.digits$}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Int(v) => v
                .to_i64()
                .map(Value::from)
                .or_else(|| v.to_u64().map(Value::from))
                .unwrap_or_else(|| Value::String(v.to_string())),
            Cell::Text(s) => Value::String(s.clone()),
            // rendered through the same rounding as CSV so both formats agree
            Cell::Float(x) => format!("{x:.digits$}")
                .parse::<serde_json::Number>()
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

fn escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Decimal rendering of an exact rational, rounded half-to-even.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let (mut whole, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => whole += 1,
        std::cmp::Ordering::Equal if whole.is_odd() => whole += 1,
        _ => {}
    }
    let (int_part, frac_part) = whole.div_rem(&scale);
    let sign = if r.is_negative() && !whole.is_zero() { "-" } else { "" };
    let mut out = format!("{sign}{int_part}");
    if digits > 0 {
        let _ = write!(out, ".{:0>digits$}", frac_part.to_string());
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub format_version: u32,
    pub command: String,
    pub seed: Option<u64>,
    pub precision: Precision,
    pub timestamp: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Precision {
    pub digits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits: Option<u32>,
}

impl Manifest {
    pub fn new(argv: &[String], seed: Option<u64>, precision: Precision) -> Self {
        Manifest {
            tool: "threegap",
            version: env!("CARGO_PKG_VERSION"),
            format_version: FORMAT_VERSION,
            command: argv.join(" "),
            seed,
            precision,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra JSON-only fields (summaries).
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, digits: usize, manifest: Option<&Manifest>) -> String {
        match format {
            Format::Csv => self.render_csv(digits, manifest),
            Format::Json => self.render_json(digits, manifest),
        }
    }

    fn render_csv(&self, digits: usize, manifest: Option<&Manifest>) -> String {
        let mut out = String::new();
        if let Some(m) = manifest {
            let json = serde_json::to_value(m).expect("manifest serializes");
            for (k, v) in json.as_object().expect("object") {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "# {k}: {v}");
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<_> = row.iter().map(|c| c.csv(digits)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self, digits: usize, manifest: Option<&Manifest>) -> String {
        let mut doc = Map::new();
        if let Some(m) = manifest {
            doc.insert("manifest".into(), serde_json::to_value(m).expect("manifest serializes"));
        }
        doc.insert("columns".into(), self.columns.iter().map(|c| Value::from(*c)).collect());
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<_, _> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.json(digits)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        if !self.summary.is_empty() {
            doc.insert("summary".into(), Value::Object(self.summary.clone()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
        s.push('\n');
        s
    }
}
