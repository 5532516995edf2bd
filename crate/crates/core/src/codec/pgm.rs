//! Binary PGM (`P5`) with maxval 255.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::GrayImage;

fn header_error(field: &'static str, detail: impl Into<String>) -> Error {
    Error::PgmFormat {
        field,
        detail: detail.into(),
    }
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while self.data.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, field: &'static str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(header_error(field, "expected a decimal number"));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|e| header_error(field, format!("{e}")))
    }
}

pub fn decode_pgm(data: &[u8]) -> Result<GrayImage> {
    let magic = data
        .get(..2)
        .ok_or_else(|| header_error("magic", "file too short"))?;
    match magic {
        b"P5" => {}
        [b'P', b'1'..=b'7'] => {
            return Err(Error::UnsupportedFormat(
                String::from_utf8_lossy(magic).into_owned(),
            ))
        }
        _ => {
            return Err(header_error(
                "magic",
                format!("expected P5, found {magic:?}"),
            ))
        }
    }

    let mut header = Header { data, pos: 2 };
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval != 255 {
        return Err(header_error(
            "maxval",
            format!("{maxval} (only 255 is supported)"),
        ));
    }
    match data.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        _ => {
            return Err(header_error(
                "maxval",
                "missing whitespace before pixel data",
            ))
        }
    }

    let expected = width
        .checked_mul(height)
        .ok_or_else(|| header_error("width", "image too large"))?;
    let payload = &data[header.pos..];
    if payload.len() < expected {
        return Err(header_error(
            "payload",
            format!(
                "truncated: expected {expected} bytes, found {}",
                payload.len()
            ),
        ));
    }
    GrayImage::new(width, height, payload[..expected].to_vec())
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pgm(&data)
}

pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    super::write_atomic(path.as_ref(), &encode_pgm(img))
}
