//! Rendering of tables to markdown and CSV; JSON goes through serde.

use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

/// A `BigInt` that serializes as a JSON number when it fits in `i64`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Int(#[serde(with = "moduli_lab::serde_int")] pub BigInt);

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Text(String),
    Int(BigInt),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn plain(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the columns"
        );
        self.rows.push(row);
    }

    pub fn markdown(&self) -> String {
        let escape = |s: String| s.replace('|', "\\|");
        let mut out = format!("| {} |\n", self.columns.join(" | "));
        out.push('|');
        for _ in &self.columns {
            out.push_str("---|");
        }
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c.plain())).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::plain))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

/// `S_11` becomes `S₁₁`; anything in braces is left alone.
pub fn subscript(label: &str) -> String {
    let Some((head, tail)) = label.split_once('_') else {
        return label.to_string();
    };
    if tail.starts_with('{') {
        return label.to_string();
    }
    let digits: String = tail
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) => char::from_u32(0x2080 + d).expect("subscript digit"),
            None => c,
        })
        .collect();
    format!("{head}{digits}")
}
