//! CSV files with a one-line JSON header comment.
//!
//! ```text
//! # {"kind":"signal","n":2,"N":3,"ordering":"node-lex-kj"}
//! index,value
//! 0,1
//! 1,0.5
//! 2,-0.25
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const NODE_ORDER: &str = "node-lex-kj";
pub const BASIS_ORDER: &str = "basis-degree-major";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing '# {{json}}' header line")]
    MissingHeader,
    #[error("bad header: {0}")]
    Header(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
    #[error("expected {expected} rows for n = {n}, found {found}")]
    RowCount { n: usize, expected: usize, found: usize },
    #[error("index {0} listed more than once")]
    DuplicateIndex(usize),
    #[error("expected kind '{expected}', found '{found}'")]
    Kind { expected: String, found: String },
    #[error("expected ordering '{expected}', found '{found}'")]
    Ordering { expected: String, found: String },
}

/// Decimal rendering that parses back to the identical `f64`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Non-empty lines after the header, with 1-based line numbers.
pub type Body<'a> = Vec<(usize, &'a str)>;

/// Splits the JSON header comment from the CSV body.
pub fn split_header(text: &str) -> Result<(serde_json::Value, Body<'_>), FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().ok_or(FormatError::MissingHeader)?;
    let json = first.strip_prefix('#').ok_or(FormatError::MissingHeader)?;
    let header = serde_json::from_str(json.trim())?;
    let body = lines.filter(|(_, l)| !l.trim().is_empty()).collect();
    Ok((header, body))
}

fn header_line(header: &impl Serialize) -> String {
    format!("# {}", serde_json::to_string(header).expect("header serializes"))
}

/// Header of a node, signal or spectrum file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorHeader {
    pub kind: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub size: usize,
    pub ordering: String,
}

/// A signal (values on nodes) or a spectrum (coefficients on the basis).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile {
    pub header: VectorHeader,
    pub values: Vec<f64>,
}

impl VectorFile {
    pub fn signal(n: usize, values: Vec<f64>) -> Self {
        Self::new("signal", NODE_ORDER, n, values)
    }

    pub fn spectrum(n: usize, values: Vec<f64>) -> Self {
        Self::new("spectrum", BASIS_ORDER, n, values)
    }

    fn new(kind: &str, ordering: &str, n: usize, values: Vec<f64>) -> Self {
        Self {
            header: VectorHeader {
                kind: kind.to_string(),
                n,
                size: values.len(),
                ordering: ordering.to_string(),
            },
            values,
        }
    }

    pub fn render(&self) -> String {
        let mut out = header_line(&self.header);
        out.push_str("\nindex,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{}\n", fmt_num(*v)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (header, body) = split_header(text)?;
        let header: VectorHeader = serde_json::from_value(header)?;
        let n = header.n;
        let expected = n * (n + 1) / 2;
        let mut rows = body.into_iter();
        if let Some((line, cols)) = rows.next() {
            if cols.trim() != "index,value" {
                return Err(FormatError::Row {
                    line,
                    msg: format!("expected column header 'index,value', found '{cols}'"),
                });
            }
        }
        let mut values: Vec<Option<f64>> = vec![None; expected];
        let mut found = 0;
        for (line, row) in rows {
            found += 1;
            let bad = |msg: String| FormatError::Row { line, msg };
            let (i, v) = row
                .split_once(',')
                .ok_or_else(|| bad(format!("expected 'index,value', found '{row}'")))?;
            let i: usize = i.trim().parse().map_err(|e| bad(format!("index: {e}")))?;
            let v: f64 = v.trim().parse().map_err(|e| bad(format!("value: {e}")))?;
            if i >= expected {
                if found > expected {
                    continue;
                }
                return Err(bad(format!("index {i} out of range 0..{expected}")));
            }
            if values[i].replace(v).is_some() {
                return Err(FormatError::DuplicateIndex(i));
            }
        }
        if found != expected || header.size != expected {
            return Err(FormatError::RowCount { n, expected, found });
        }
        Ok(Self {
            header,
            values: values.into_iter().map(|v| v.expect("all indices present")).collect(),
        })
    }

    pub fn expect_kind(&self, kind: &str, ordering: &str) -> Result<(), FormatError> {
        if self.header.kind != kind {
            return Err(FormatError::Kind {
                expected: kind.to_string(),
                found: self.header.kind.clone(),
            });
        }
        if self.header.ordering != ordering {
            return Err(FormatError::Ordering {
                expected: ordering.to_string(),
                found: self.header.ordering.clone(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixHeader {
    pub kind: String,
    pub which: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub size: usize,
    pub rows: String,
    pub cols: String,
}

/// Dense row-major matrix dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(flatten)]
    pub header: MatrixHeader,
    pub data: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn render_csv(&self) -> String {
        let mut out = header_line(&self.header);
        out.push('\n');
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("matrix serializes");
        s.push('\n');
        s
    }

    pub fn parse_csv(text: &str) -> Result<Self, FormatError> {
        let (header, body) = split_header(text)?;
        let header: MatrixHeader = serde_json::from_value(header)?;
        let mut data = Vec::with_capacity(body.len());
        for (line, row) in body {
            let parsed: Result<Vec<f64>, _> = row.split(',').map(|c| c.trim().parse()).collect();
            let parsed = parsed.map_err(|e| FormatError::Row {
                line,
                msg: format!("{e}"),
            })?;
            if parsed.len() != header.size {
                return Err(FormatError::Row {
                    line,
                    msg: format!("expected {} columns, found {}", header.size, parsed.len()),
                });
            }
            data.push(parsed);
        }
        if data.len() != header.size {
            return Err(FormatError::RowCount {
                n: header.n,
                expected: header.size,
                found: data.len(),
            });
        }
        Ok(Self { header, data })
    }

    pub fn parse_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRow {
    pub index: usize,
    pub k: usize,
    pub j: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub x1: f64,
    pub x2: f64,
}

pub const NODE_COLUMNS: &str = "index,k,j,theta1,theta2,x1,x2";

pub fn render_nodes(n: usize, rows: &[NodeRow]) -> String {
    let header = VectorHeader {
        kind: "nodes".to_string(),
        n,
        size: rows.len(),
        ordering: NODE_ORDER.to_string(),
    };
    let mut out = header_line(&header);
    out.push('\n');
    out.push_str(NODE_COLUMNS);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.index,
            r.k,
            r.j,
            fmt_num(r.theta1),
            fmt_num(r.theta2),
            fmt_num(r.x1),
            fmt_num(r.x2)
        ));
    }
    out
}

pub fn parse_nodes(text: &str) -> Result<Vec<NodeRow>, FormatError> {
    let (_, body) = split_header(text)?;
    let csv_text: String = body.iter().map(|(_, l)| format!("{l}\n")).collect();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| FormatError::Row {
                line: i + 3,
                msg: e.to_string(),
            })
        })
        .collect()
}
