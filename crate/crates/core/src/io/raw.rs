use std::fs;
use std::path::Path;

use crate::error::{Error, Location, Result};
use crate::matrix::Matrix;

const MAGIC: &[u8; 8] = b"SUBWMAT1";
const HEADER: usize = 24;

pub fn encode_matrix_raw(m: &Matrix<f64>) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER + 8 * m.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for v in m.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_matrix_raw(bytes: &[u8]) -> Result<Matrix<f64>> {
    if bytes.len() < HEADER {
        return Err(Error::parse(Location::Byte(bytes.len()), "truncated header"));
    }
    if &bytes[..8] != MAGIC {
        return Err(Error::parse(Location::Byte(0), "bad magic number"));
    }
    let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap()) as usize;
    let (rows, cols) = (word(8), word(16));
    let need = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(8))
        .ok_or_else(|| Error::parse(Location::Byte(8), "dimensions overflow"))?;
    let body = &bytes[HEADER..];
    if body.len() != need {
        return Err(Error::parse(
            Location::Byte(bytes.len().min(HEADER + need)),
            format!("expected {need} data bytes, found {}", body.len()),
        ));
    }
    let data = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Matrix::new(rows, cols, data).map_err(|e| match e {
        Error::NonFinite { row, col } => {
            Error::parse(Location::Byte(HEADER + 8 * (row * cols + col)), "non-finite entry")
        }
        other => other,
    })
}

pub fn read_matrix_raw(path: impl AsRef<Path>) -> Result<Matrix<f64>> {
    decode_matrix_raw(&fs::read(path)?)
}

pub fn write_matrix_raw(m: &Matrix<f64>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_matrix_raw(m))?;
    Ok(())
}
