use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Location, Result};
use crate::matrix::Matrix;
use crate::scalar::Weight;

/// Sparse `(row, col, weight)` listing of a matrix; unlisted cells are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTriplets<T = f64> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, T)>,
}

impl<T: Weight> SparseTriplets<T> {
    pub fn to_dense(&self) -> Result<Matrix<T>> {
        let mut data = vec![T::zero(); self.rows * self.cols];
        for &(r, c, w) in &self.entries {
            data[r * self.cols + c] = w;
        }
        Matrix::new(self.rows, self.cols, data)
    }
}

pub fn read_sparse_triplets<T: Weight>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    parse_sparse_triplets(&fs::read_to_string(path)?)?.to_dense()
}

/// Parses the header line `rows cols` and then `row col weight` lines.
/// Blank lines and `#` comments are skipped.
pub fn parse_sparse_triplets<T: Weight>(text: &str) -> Result<SparseTriplets<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) =
        lines.next().ok_or_else(|| Error::parse(Location::Line(1), "missing 'rows cols' header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims[..] else {
        return Err(Error::parse(Location::Line(header_line), "header must be 'rows cols'"));
    };
    let dim = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|v| *v > 0)
            .ok_or_else(|| Error::parse(Location::Line(header_line), format!("bad dimension '{s}'")))
    };
    let (rows, cols) = (dim(rows)?, dim(cols)?);
    let cells =
        rows.checked_mul(cols).ok_or_else(|| Error::parse(Location::Line(header_line), "dimensions overflow"))?;

    let mut first_seen = vec![0usize; cells];
    let mut entries = Vec::new();
    for (line, text) in lines {
        let at = Location::Line(line);
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [r, c, w] = fields[..] else {
            return Err(Error::parse(at, format!("expected 'row col weight', found {} fields", fields.len())));
        };
        let index =
            |s: &str, name: &str| s.parse::<usize>().map_err(|_| Error::parse(at, format!("bad {name} index '{s}'")));
        let (r, c) = (index(r, "row")?, index(c, "column")?);
        if r >= rows || c >= cols {
            return Err(Error::parse(at, format!("cell ({r}, {c}) outside a {rows}x{cols} matrix")));
        }
        let w: T = w.parse().map_err(|_| Error::parse(at, format!("bad weight '{w}'")))?;
        if !w.is_admissible() {
            return Err(Error::parse(at, "weight is not finite"));
        }
        let seen = &mut first_seen[r * cols + c];
        if *seen != 0 {
            return Err(Error::parse(at, format!("cell ({r}, {c}) already listed on line {seen}")));
        }
        *seen = line;
        entries.push((r, c, w));
    }
    Ok(SparseTriplets { rows, cols, entries })
}

/// Writes the nonzero entries of `m` in row-major order.
pub fn write_sparse_triplets<T: Weight>(m: &Matrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{} {}", m.rows(), m.cols())?;
    for r in 0..m.rows() {
        for (c, v) in m.row(r).iter().enumerate() {
            if !v.is_zero() {
                writeln!(out, "{r} {c} {v}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
