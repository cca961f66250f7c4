//! Matrix export formats.
//!
//! Binary layout (all integers and floats little-endian):
//!
//! ```text
//! "PFE1" | rows: u32 | cols: u32 (= 55) | rows * cols f32, row-major
//! ```
//!
//! CSV layout: a `rows,cols` line with the two counts, then one line per
//! row with each value written as the shortest decimal that round-trips
//! the 32-bit float.
//!
//! The utterance index sidecar has one `utterance_index<TAB>start_row<TAB>n_rows`
//! line per utterance.

use std::io::{BufRead, Read, Write};

use crate::encoder::EncodedUtterance;
use crate::error::{Error, Result};
use crate::schema::TOKEN_DIM;

pub const MAGIC: &[u8; 4] = b"PFE1";

/// Row-major matrix of 32-bit values with `TOKEN_DIM` columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Matrix {
    pub values: Vec<f32>,
}

impl Matrix {
    pub fn n_rows(&self) -> usize {
        self.values.len() / TOKEN_DIM
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.values[i * TOKEN_DIM..(i + 1) * TOKEN_DIM]
    }

    pub fn push_utterance(&mut self, utterance: &EncodedUtterance) {
        self.values.extend(utterance.to_f32());
    }

    pub fn from_utterances<'a>(utterances: impl IntoIterator<Item = &'a EncodedUtterance>) -> Self {
        let mut m = Matrix::default();
        for u in utterances {
            m.push_utterance(u);
        }
        m
    }

    /// Bit patterns of all values, for exact comparisons.
    pub fn bits(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.to_bits()).collect()
    }
}

pub fn write_bin(matrix: &Matrix, mut out: impl Write) -> Result<()> {
    let rows = u32::try_from(matrix.n_rows()).map_err(|_| Error::Format("too many rows".into()))?;
    let mut buf = Vec::with_capacity(12 + matrix.values.len() * 4);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&rows.to_le_bytes());
    buf.extend_from_slice(&(TOKEN_DIM as u32).to_le_bytes());
    for v in &matrix.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&buf).map_err(|e| Error::io("<output>", e))
}

pub fn read_bin(mut input: impl Read) -> Result<Matrix> {
    let mut buf = Vec::new();
    input
        .read_to_end(&mut buf)
        .map_err(|e| Error::io("<input>", e))?;
    if buf.len() < 12 || &buf[..4] != MAGIC {
        return Err(Error::Format("missing PFE1 header".into()));
    }
    let word = |i: usize| u32::from_le_bytes(buf[i..i + 4].try_into().unwrap()) as usize;
    let (rows, cols) = (word(4), word(8));
    if cols != TOKEN_DIM {
        return Err(Error::Format(format!(
            "expected {TOKEN_DIM} columns, found {cols}"
        )));
    }
    let body = &buf[12..];
    if body.len() != rows * cols * 4 {
        return Err(Error::Format(format!(
            "header declares {rows}x{cols} values but body holds {} bytes",
            body.len()
        )));
    }
    let values = body
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Matrix { values })
}

pub fn write_csv(matrix: &Matrix, mut out: impl Write) -> Result<()> {
    let mut text = format!("{},{}\n", matrix.n_rows(), TOKEN_DIM);
    for i in 0..matrix.n_rows() {
        let row: Vec<String> = matrix.row(i).iter().map(|v| v.to_string()).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<output>", e))
}

pub fn read_csv(input: impl BufRead) -> Result<Matrix> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty csv".into()))?
        .map_err(|e| Error::io("<input>", e))?;
    let (rows, cols) = header
        .split_once(',')
        .and_then(|(r, c)| {
            Some((
                r.trim().parse::<usize>().ok()?,
                c.trim().parse::<usize>().ok()?,
            ))
        })
        .ok_or_else(|| Error::Format(format!("bad csv header {header:?}")))?;
    if cols != TOKEN_DIM {
        return Err(Error::Format(format!(
            "expected {TOKEN_DIM} columns, found {cols}"
        )));
    }
    let mut values = Vec::with_capacity(rows * cols);
    for (n, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let before = values.len();
        for field in line.split(',') {
            let v: f32 = field
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("row {}: bad value {field:?}", n + 1)))?;
            values.push(v);
        }
        if values.len() - before != cols {
            return Err(Error::Format(format!(
                "row {} has {} values",
                n + 1,
                values.len() - before
            )));
        }
    }
    if values.len() != rows * cols {
        return Err(Error::Format(format!(
            "header declares {rows} rows, found {}",
            values.len() / cols
        )));
    }
    Ok(Matrix { values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRecord {
    pub utterance: usize,
    pub start_row: usize,
    pub n_rows: usize,
}

/// Index records for consecutive utterances with the given row counts.
pub fn index_records(lengths: impl IntoIterator<Item = usize>) -> Vec<IndexRecord> {
    let mut start = 0;
    lengths
        .into_iter()
        .enumerate()
        .map(|(utterance, n_rows)| {
            let r = IndexRecord {
                utterance,
                start_row: start,
                n_rows,
            };
            start += n_rows;
            r
        })
        .collect()
}

pub fn write_index(records: &[IndexRecord], mut out: impl Write) -> Result<()> {
    let mut text = String::new();
    for r in records {
        text.push_str(&format!("{}\t{}\t{}\n", r.utterance, r.start_row, r.n_rows));
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<output>", e))
}

pub fn read_index(input: impl BufRead) -> Result<Vec<IndexRecord>> {
    input
        .lines()
        .enumerate()
        .map(|(n, line)| {
            let line = line.map_err(|e| Error::io("<input>", e))?;
            let f: Vec<usize> = line
                .split('\t')
                .map(|x| {
                    x.parse()
                        .map_err(|_| Error::Format(format!("index line {}: {line:?}", n + 1)))
                })
                .collect::<Result<_>>()?;
            match f[..] {
                [utterance, start_row, n_rows] => Ok(IndexRecord {
                    utterance,
                    start_row,
                    n_rows,
                }),
                _ => Err(Error::Format(format!(
                    "index line {} needs 3 fields",
                    n + 1
                ))),
            }
        })
        .collect()
}
