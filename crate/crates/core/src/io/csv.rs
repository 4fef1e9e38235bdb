use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, Trim, WriterBuilder};

use crate::error::{Error, Location, Result};
use crate::matrix::Matrix;
use crate::scalar::Weight;

pub fn read_matrix_csv<T: Weight>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    parse_matrix_csv(File::open(path)?)
}

pub fn parse_matrix_csv<T: Weight, R: Read>(input: R) -> Result<Matrix<T>> {
    let mut reader = ReaderBuilder::new().has_headers(false).flexible(true).trim(Trim::All).from_reader(input);
    let mut cols = None;
    let mut rows = 0;
    let mut data = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(rows + 1, |p| p.line() as usize);
            Error::parse(Location::Line(line), e.to_string())
        })?;
        let line = record.position().map_or(rows + 1, |p| p.line() as usize);
        let width = *cols.get_or_insert(record.len());
        if record.len() != width {
            return Err(Error::parse(Location::Line(line), format!("expected {width} fields, found {}", record.len())));
        }
        for (c, cell) in record.iter().enumerate() {
            let value: T = cell.parse().map_err(|_| {
                Error::parse(Location::Line(line), format!("field {} is not a number: '{cell}'", c + 1))
            })?;
            if !value.is_admissible() {
                return Err(Error::parse(Location::Line(line), format!("field {} is not finite", c + 1)));
            }
            data.push(value);
        }
        rows += 1;
    }
    let Some(cols) = cols else {
        return Err(Error::parse(Location::Line(1), "empty input"));
    };
    Matrix::new(rows, cols, data)
}

/// Writes the shortest decimal form that reads back to the same value.
pub fn write_matrix_csv<T: Weight>(m: &Matrix<T>, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_csv_to(m, File::create(path)?)
}

pub fn write_matrix_csv_to<T: Weight, W: Write>(m: &Matrix<T>, out: W) -> Result<()> {
    let mut writer = WriterBuilder::new().has_headers(false).from_writer(out);
    let mut fields = Vec::with_capacity(m.cols());
    for r in 0..m.rows() {
        fields.clear();
        fields.extend(m.row(r).iter().map(|v| v.to_string()));
        writer.write_record(&fields).map_err(|e| Error::Io(e.into()))?;
    }
    writer.flush()?;
    Ok(())
}
