//! Input sources and their one-line text form.
//!
//! A source string fully determines a matrix, so records can be re-checked
//! later:
//!
//! * `file:<path>` optionally followed by `|channel=r|g|b`, `|zero_mean` and
//!   `|dup=K` modifiers, applied in that order;
//! * `gen:<generator spec>`, e.g. `gen:coherent_blobs rows=64 cols=64 seed=1`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use subwindow::datagen::{duplicate_scale, generate, normalize_zero_mean, GenSpec};
use subwindow::io::{self, Channel};
use subwindow::Matrix;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Pgm,
    Ppm,
    Triplets,
    Raw,
}

impl InputFormat {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Ok(InputFormat::Csv),
            "pgm" => Ok(InputFormat::Pgm),
            "ppm" => Ok(InputFormat::Ppm),
            "triplets" | "trip" => Ok(InputFormat::Triplets),
            "bin" | "raw" => Ok(InputFormat::Raw),
            _ => Err(CliError::usage(format!(
                "cannot tell the format of '{}' (use .csv, .pgm, .ppm, .triplets or .bin)",
                path.display()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File { path: PathBuf, channel: Option<Channel>, zero_mean: bool, dup: usize },
    Gen(GenSpec),
}

impl Source {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        Source::File { path: path.into(), channel: None, zero_mean: false, dup: 1 }
    }

    /// Checks flag combinations without touching the file system.
    pub fn validate(&self) -> CliResult<()> {
        if let Source::File { path, channel, dup, .. } = self {
            let format = InputFormat::from_path(path)?;
            if channel.is_some() && format != InputFormat::Ppm {
                return Err(CliError::usage("--channel only applies to .ppm inputs"));
            }
            if *dup == 0 {
                return Err(CliError::usage("--dup must be at least 1"));
            }
        }
        Ok(())
    }

    pub fn load(&self) -> CliResult<Matrix<f64>> {
        self.validate()?;
        match self {
            Source::Gen(spec) => generate(spec).map_err(|e| CliError::usage(format!("generator: {e}"))),
            Source::File { path, channel, zero_mean, dup } => {
                let read_err = |e: subwindow::Error| CliError::input(format!("{}: {e}", path.display()));
                let mut m = match InputFormat::from_path(path)? {
                    InputFormat::Csv => io::read_matrix_csv(path).map_err(read_err)?,
                    InputFormat::Pgm => io::read_pgm_channel(path).map_err(read_err)?,
                    InputFormat::Ppm => io::read_ppm_channel(path, channel.unwrap_or(Channel::R)).map_err(read_err)?,
                    InputFormat::Triplets => io::read_sparse_triplets(path).map_err(read_err)?,
                    InputFormat::Raw => io::read_matrix_raw(path).map_err(read_err)?,
                };
                if *zero_mean {
                    m = normalize_zero_mean(&m).map_err(read_err)?;
                }
                if *dup > 1 {
                    m = duplicate_scale(&m, *dup).map_err(read_err)?;
                }
                Ok(m)
            }
        }
    }
}

fn channel_name(c: Channel) -> &'static str {
    match c {
        Channel::R => "r",
        Channel::G => "g",
        Channel::B => "b",
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Gen(spec) => write!(f, "gen:{spec}"),
            Source::File { path, channel, zero_mean, dup } => {
                write!(f, "file:{}", path.display())?;
                if let Some(c) = channel {
                    write!(f, "|channel={}", channel_name(*c))?;
                }
                if *zero_mean {
                    f.write_str("|zero_mean")?;
                }
                if *dup > 1 {
                    write!(f, "|dup={dup}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Source {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if let Some(spec) = s.strip_prefix("gen:") {
            return spec.parse().map(Source::Gen).map_err(|e| CliError::usage(format!("bad source '{s}': {e}")));
        }
        let rest = s
            .strip_prefix("file:")
            .ok_or_else(|| CliError::usage(format!("source '{s}' must start with file: or gen:")))?;
        let mut parts = rest.split('|');
        let mut source = Source::file(parts.next().unwrap_or_default());
        if let Source::File { channel, zero_mean, dup, .. } = &mut source {
            for part in parts {
                match part.split_once('=') {
                    Some(("channel", c)) => {
                        *channel = Some(c.parse().map_err(|e| CliError::usage(format!("{e}")))?);
                    }
                    Some(("dup", k)) => {
                        *dup = k.parse().map_err(|_| CliError::usage(format!("bad dup factor '{k}'")))?;
                    }
                    None if part == "zero_mean" => *zero_mean = true,
                    _ => return Err(CliError::usage(format!("unknown source modifier '{part}'"))),
                }
            }
        }
        Ok(source)
    }
}
