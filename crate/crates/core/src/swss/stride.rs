use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Stride function `f(n)`: the gap between consecutive sampled lines.
///
/// Logarithms are natural. The value is rounded to the nearest integer and
/// clamped to `[1, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrideSpec {
    LogLog,
    Log,
    Sqrt,
    LogSquared,
    Constant(usize),
    /// Stride 1: every line sampled.
    Unit,
}

impl StrideSpec {
    /// All functions of `n`, in increasing order of growth.
    pub const FUNCTIONS: [StrideSpec; 4] =
        [StrideSpec::LogLog, StrideSpec::Log, StrideSpec::Sqrt, StrideSpec::LogSquared];

    pub fn resolve(&self, n: usize) -> usize {
        resolve_stride(n, *self)
    }
}

pub fn resolve_stride(n: usize, spec: StrideSpec) -> usize {
    let n = n.max(1);
    let x = n as f64;
    let raw = match spec {
        StrideSpec::LogLog => x.ln().ln(),
        StrideSpec::Log => x.ln(),
        StrideSpec::Sqrt => x.sqrt(),
        StrideSpec::LogSquared => x.ln().powi(2),
        StrideSpec::Constant(k) => return k.clamp(1, n),
        StrideSpec::Unit => return 1,
    };
    // ln ln 1 is NaN and ln ln 2 negative; both clamp to 1
    if raw.is_nan() || raw < 1.0 {
        return 1;
    }
    (raw.round() as usize).clamp(1, n)
}

impl fmt::Display for StrideSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrideSpec::LogLog => f.write_str("loglog"),
            StrideSpec::Log => f.write_str("log"),
            StrideSpec::Sqrt => f.write_str("sqrt"),
            StrideSpec::LogSquared => f.write_str("logsq"),
            StrideSpec::Constant(k) => write!(f, "const:{k}"),
            StrideSpec::Unit => f.write_str("unit"),
        }
    }
}

impl FromStr for StrideSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "loglog" => StrideSpec::LogLog,
            "log" => StrideSpec::Log,
            "sqrt" => StrideSpec::Sqrt,
            "logsq" => StrideSpec::LogSquared,
            "unit" => StrideSpec::Unit,
            other => {
                let k =
                    other.strip_prefix("const:").and_then(|k| k.parse::<usize>().ok()).filter(|k| *k >= 1).ok_or_else(
                        || {
                            Error::invalid(format!(
                            "unknown stride '{other}' (expected loglog, log, sqrt, logsq, const:K with K >= 1, or unit)"
                        ))
                        },
                    )?;
                StrideSpec::Constant(k)
            }
        })
    }
}
