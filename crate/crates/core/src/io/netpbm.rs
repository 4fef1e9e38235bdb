use std::fs;
use std::path::Path;

use crate::error::{Error, Location, Result};
use crate::matrix::Matrix;
use crate::scalar::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    R,
    G,
    B,
}

impl Channel {
    fn index(self) -> usize {
        match self {
            Channel::R => 0,
            Channel::G => 1,
            Channel::B => 2,
        }
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "red" => Ok(Channel::R),
            "g" | "green" => Ok(Channel::G),
            "b" | "blue" => Ok(Channel::B),
            _ => Err(Error::invalid(format!("unknown channel '{s}' (expected r, g or b)"))),
        }
    }
}

/// A decoded PGM or PPM image with interleaved samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetpbmImage {
    pub width: usize,
    pub height: usize,
    /// 1 for PGM, 3 for PPM.
    pub channels: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl NetpbmImage {
    /// One channel as a `height x width` matrix of raw intensities.
    pub fn channel<T: Weight>(&self, index: usize) -> Result<Matrix<T>> {
        if index >= self.channels {
            return Err(Error::invalid(format!("channel {index} of a {}-channel image", self.channels)));
        }
        let data = self
            .samples
            .iter()
            .skip(index)
            .step_by(self.channels)
            .map(|&s| T::from_u16(s).ok_or_else(|| Error::invalid(format!("sample {s} does not fit the weight type"))))
            .collect::<Result<Vec<T>>>()?;
        Matrix::new(self.height, self.width, data)
    }
}

pub fn read_pgm_channel<T: Weight>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    let image = decode_netpbm(&fs::read(path)?)?;
    if image.channels != 1 {
        return Err(Error::parse(Location::Byte(0), "expected a PGM (P2/P5) image"));
    }
    image.channel(0)
}

pub fn read_ppm_channel<T: Weight>(path: impl AsRef<Path>, channel: Channel) -> Result<Matrix<T>> {
    let image = decode_netpbm(&fs::read(path)?)?;
    if image.channels != 3 {
        return Err(Error::parse(Location::Byte(0), "expected a PPM (P3/P6) image"));
    }
    image.channel(channel.index())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n' && b != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next unsigned decimal token.
    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let msg = match self.bytes.get(start) {
                None => format!("unexpected end of data reading {what}"),
                Some(b) => format!("expected {what}, found byte 0x{b:02x}"),
            };
            return Err(Error::parse(Location::Byte(start), msg));
        }
        if self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
            return Err(Error::parse(Location::Byte(self.pos), format!("malformed {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(Location::Byte(start), format!("{what} out of range")))
    }
}

pub fn decode_netpbm(bytes: &[u8]) -> Result<NetpbmImage> {
    let (channels, binary) = match bytes.get(..2) {
        Some(b"P2") => (1, false),
        Some(b"P5") => (1, true),
        Some(b"P3") => (3, false),
        Some(b"P6") => (3, true),
        _ => return Err(Error::parse(Location::Byte(0), "bad magic number (expected P2, P3, P5 or P6)")),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if cur.bytes.get(2).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
        return Err(Error::parse(Location::Byte(2), "bad magic number"));
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::parse(Location::Byte(maxval_at), "image has zero width or height"));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(Error::parse(Location::Byte(maxval_at), format!("maxval {maxval} outside 1..=65535")));
    }
    let count = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(channels))
        .ok_or_else(|| Error::parse(Location::Byte(maxval_at), "image dimensions overflow"))?;

    let mut samples = Vec::with_capacity(count.min(1 << 26));
    if binary {
        // exactly one whitespace byte separates the header from the raster
        cur.pos += 1;
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        let raster = bytes.get(cur.pos..).unwrap_or(&[]);
        if raster.len() < need {
            return Err(Error::parse(
                Location::Byte(bytes.len()),
                format!("truncated pixel data: need {need} bytes, have {}", raster.len()),
            ));
        }
        if wide {
            samples.extend(raster[..need].chunks_exact(2).map(|p| u16::from_be_bytes([p[0], p[1]])));
        } else {
            samples.extend(raster[..need].iter().map(|&b| b as u16));
        }
        if let Some(i) = samples.iter().position(|&s| s as u64 > maxval) {
            let at = cur.pos + i * if wide { 2 } else { 1 };
            return Err(Error::parse(Location::Byte(at), format!("sample exceeds maxval {maxval}")));
        }
    } else {
        for _ in 0..count {
            let at = cur.pos;
            let v = cur.number("sample").map_err(|e| match e {
                Error::Parse { at, message } if message.starts_with("unexpected end") => {
                    Error::Parse { at, message: "truncated pixel data".into() }
                }
                other => other,
            })?;
            if v > maxval {
                return Err(Error::parse(Location::Byte(at), format!("sample {v} exceeds maxval {maxval}")));
            }
            samples.push(v as u16);
        }
    }
    Ok(NetpbmImage { width, height, channels, maxval: maxval as u16, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_pixel_pgm() {
        let img = decode_netpbm(b"P2\n1 1\n255\n7\n").unwrap();
        assert_eq!(img.channel::<f64>(0).unwrap().as_slice(), &[7.0]);
        let img = decode_netpbm(b"P5 1 1 255\n\x07").unwrap();
        assert_eq!(img.channel::<i64>(0).unwrap().as_slice(), &[7]);
    }

    #[test]
    fn ppm_red_channel() {
        // width 1, height 2: a red pixel above a blue one
        let img = decode_netpbm(b"P3\n# two pixels\n1 2\n255\n255 0 0\n0 0 255\n").unwrap();
        let red = img.channel::<f64>(Channel::R.index()).unwrap();
        assert_eq!((red.rows(), red.cols()), (2, 1));
        assert_eq!(red.as_slice(), &[255.0, 0.0]);
        let blue = img.channel::<f64>(Channel::B.index()).unwrap();
        assert_eq!(blue.as_slice(), &[0.0, 255.0]);
    }

    #[test]
    fn sixteen_bit_binary() {
        let mut bytes = b"P5\n2 1\n65535\n".to_vec();
        bytes.extend_from_slice(&[0x12, 0x34, 0xff, 0xff]);
        let img = decode_netpbm(&bytes).unwrap();
        assert_eq!(img.samples, vec![0x1234, 0xffff]);
    }

    #[test]
    fn comments_between_header_tokens() {
        let img = decode_netpbm(b"P2 # c1\n# c2\n2 # c3\n1\n9 # c4\n3 9\n").unwrap();
        assert_eq!(img.samples, vec![3, 9]);
    }

    #[test]
    fn errors_carry_locations() {
        let err = decode_netpbm(b"P7\n1 1\n255\n0").unwrap_err();
        assert!(matches!(err, Error::Parse { at: Location::Byte(0), .. }));
        let err = decode_netpbm(b"P5\n2 2\n255\n\x01\x02\x03").unwrap_err();
        assert!(matches!(err, Error::Parse { at: Location::Byte(14), .. }), "{err}");
        let err = decode_netpbm(b"P2\n2 1\n255\n4").unwrap_err();
        assert!(err.to_string().contains("truncated"), "{err}");
        let err = decode_netpbm(b"P2\n1 1\n10\n11\n").unwrap_err();
        assert!(err.to_string().contains("exceeds"));
        assert!(decode_netpbm(b"P2\n1 1\n70000\n1\n").is_err());
        assert!(decode_netpbm(b"P2\n0 1\n255\n").is_err());
    }

    #[test]
    fn channel_parsing() {
        assert_eq!("G".parse::<Channel>().unwrap(), Channel::G);
        assert!("alpha".parse::<Channel>().is_err());
    }
}
