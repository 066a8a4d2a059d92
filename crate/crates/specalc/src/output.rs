//! The output record shared by every command and its three renderings.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;
use specalc_core::numkit::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// One table cell. Integers and rationals stay exact in every format.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(BigInt),
    Rat(Rational),
    /// A floating-point estimate, written in shortest round-trip form.
    Float(f64),
    Bool(bool),
    Text(String),
    Json(Value),
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Cell::Int(v.into())
    }

    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rat(q) if q.denom().is_one() => q.numer().to_string(),
            Cell::Rat(q) => format!("{}/{}", q.numer(), q.denom()),
            Cell::Float(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Json(v) => v.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_str(&v.to_string()),
            Cell::Rat(q) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("num", &q.numer().to_string())?;
                m.serialize_entry("den", &q.denom().to_string())?;
                m.end()
            }
            Cell::Float(x) => s.serialize_str(&x.to_string()),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Json(v) => v.serialize(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row(pub Vec<(&'static str, Cell)>);

impl Row {
    fn get(&self, column: &str) -> Option<&Cell> {
        self.0.iter().find(|(c, _)| *c == column).map(|(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlainStyle {
    /// Cells separated by single spaces, one row per line.
    Columns,
    /// `<partition>: <fix> (monomial coeff <c>)`.
    CycleIndex,
}

/// Everything a command reports.
#[derive(Clone, Debug)]
pub struct OutputRecord {
    pub command: String,
    pub argv: Vec<String>,
    pub expression: Option<String>,
    pub order: u64,
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub status: &'static str,
    pub plain_style: PlainStyle,
}

impl OutputRecord {
    pub fn new(command: &str, expression: Option<String>, order: u64, columns: Vec<&'static str>) -> Self {
        Self {
            command: command.to_string(),
            argv: std::env::args().skip(1).collect(),
            expression,
            order,
            params: Vec::new(),
            columns,
            rows: Vec::new(),
            status: "ok",
            plain_style: PlainStyle::Columns,
        }
    }

    pub fn push(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(Row(self.columns.iter().copied().zip(cells).collect()));
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.0.iter().map(|(_, c)| c.plain()))?;
                }
                w.flush()
            }
            Format::Plain => {
                for row in &self.rows {
                    match self.plain_style {
                        PlainStyle::Columns => {
                            let cells: Vec<String> = row.0.iter().map(|(_, c)| c.plain()).collect();
                            writeln!(out, "{}", cells.join(" "))?;
                        }
                        PlainStyle::CycleIndex => {
                            let cell = |c| row.get(c).map(Cell::plain).unwrap_or_default();
                            writeln!(
                                out,
                                "{}: {} (monomial coeff {})",
                                cell("partition"),
                                cell("fix"),
                                cell("monomial_coeff")
                            )?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Fields<'a>(&'a [(&'static str, Cell)]);
        impl Serialize for Fields<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let rows: Vec<Fields> = self.rows.iter().map(|r| Fields(&r.0)).collect();
        let mut m = s.serialize_map(Some(9))?;
        m.serialize_entry("schema", "specalc-output/1")?;
        m.serialize_entry("command", &self.command)?;
        m.serialize_entry("argv", &self.argv)?;
        m.serialize_entry("expression", &self.expression)?;
        m.serialize_entry("order", &self.order.to_string())?;
        m.serialize_entry("params", &Fields(&self.params))?;
        m.serialize_entry("columns", &self.columns)?;
        m.serialize_entry("rows", &rows)?;
        m.serialize_entry("status", self.status)?;
        m.end()
    }
}
