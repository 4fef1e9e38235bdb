//! Matrix ingestion and persistence.
//!
//! * CSV: one matrix row per line, comma-separated numbers.
//! * Netpbm: binary and ASCII PGM (`P5`/`P2`) and PPM (`P6`/`P3`), 8 or 16
//!   bit samples, read as one intensity channel.
//! * Sparse triplets: a `rows cols` header, then `row col weight` lines,
//!   whitespace-separated; unlisted cells are zero.
//! * Raw: `SUBWMAT1` magic, little-endian `u64` rows and cols, then
//!   row-major little-endian `f64` entries.
//!
//! Every parse error carries a line number or byte offset.

mod csv;
mod netpbm;
mod raw;
mod triplets;

pub use self::csv::{parse_matrix_csv, read_matrix_csv, write_matrix_csv, write_matrix_csv_to};
pub use self::netpbm::{decode_netpbm, read_pgm_channel, read_ppm_channel, Channel, NetpbmImage};
pub use self::raw::{decode_matrix_raw, encode_matrix_raw, read_matrix_raw, write_matrix_raw};
pub use self::triplets::{parse_sparse_triplets, read_sparse_triplets, write_sparse_triplets, SparseTriplets};
