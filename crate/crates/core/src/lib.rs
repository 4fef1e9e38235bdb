//! Solvers for the max-weight rectangle problem: given a matrix of positive
//! and negative weights, find the axis-aligned submatrix with the largest sum.
//!
//! * [`exact`]: exhaustive enumeration and Bentley's `O(cols^2 rows)` algorithm.
//! * [`aess`]: the alternating search over full prefix sums.
//! * [`swss`]: the same alternating search over prefix sums of a strided
//!   subset of rows and columns, reading `O(n^2 / f(n))` entries.
//! * [`metrics`]: spatial coherence and IoU accuracy.
//! * [`datagen`] and [`io`]: synthetic inputs, transforms and file formats.
//!
//! Everything is generic over the [`Weight`] scalar (`f32`, `f64`, `i32`,
//! `i64`). The `*64`, `*32` and `*I64` aliases below name the common
//! instantiations.
//!
//! ```
//! use subwindow::{bentley_max_rect, swss_search, Matrix, StrideSpec, SwssConfig};
//!
//! let m = Matrix::from_rows(&[[1.0, -2.0], [-3.0, 4.0]]).unwrap();
//! assert_eq!(bentley_max_rect(&m).sum, 4.0);
//!
//! let cfg = SwssConfig::new(StrideSpec::Unit, 20).unwrap();
//! let found = swss_search(&m, &cfg).unwrap();
//! assert_eq!(found.rect.row_span.lo, 1);
//! ```

pub mod aess;
pub mod datagen;
mod error;
pub mod exact;
mod geom;
pub mod io;
pub mod kadane;
mod matrix;
pub mod metrics;
mod prefix;
pub mod probe;
mod scalar;
pub mod search;
pub mod swss;

pub use aess::{aess_search, DEFAULT_SAFETY_CAP};
pub use error::{Error, Location, Result};
pub use exact::{bentley_max_rect, brute_force_max_rect, ExactResult};
pub use geom::{iou, Interval, Rect};
pub use kadane::{max_subarray, SubarrayResult};
pub use matrix::Matrix;
pub use metrics::{accuracy, coherence_score, AccuracyReport, CoherenceParams};
pub use prefix::FullPrefixSums;
pub use scalar::{FloatWeight, Weight};
pub use search::{IterationTrace, SearchResult, Termination};
pub use swss::{resolve_stride, swss_search, PartialPrefixSums, StrideSpec, SwssConfig, DEFAULT_ITERATION_CAP};

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type MatrixI64 = Matrix<i64>;

pub type FullPrefixSums64 = FullPrefixSums<f64>;
pub type PartialPrefixSums64 = PartialPrefixSums<f64>;

pub type SearchResult64 = SearchResult<f64>;
pub type SearchResultI64 = SearchResult<i64>;

pub type ExactResult64 = ExactResult<f64>;
pub type ExactResultI64 = ExactResult<i64>;
