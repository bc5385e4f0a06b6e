//! Netpbm greymap (P2/P5) and pixmap (P3/P6) reading, greymap writing.
//!
//! Samples with a maxval other than 255 are rescaled to 8 bits with rounding.
//! Pixmaps are reduced to grey by the rounded channel average.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::segmentation::GreyImage;
use crate::shape_features::BinaryImage;

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' && self.data[self.pos] != b'\r' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Format(format!("expected {what} at byte {start}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Format(format!("{what} out of range")))
    }
}

fn rescale(v: u32, maxval: u32) -> Result<u8> {
    if v > maxval {
        return Err(Error::Format(format!("sample {v} exceeds maxval {maxval}")));
    }
    if maxval == 255 {
        Ok(v as u8)
    } else {
        Ok(((v as u64 * 255 + maxval as u64 / 2) / maxval as u64) as u8)
    }
}

/// Decodes a P2, P3, P5 or P6 image into 8-bit grey.
pub fn decode(data: &[u8]) -> Result<GreyImage> {
    if data.len() < 2 || data[0] != b'P' {
        return Err(Error::Format("missing netpbm magic number".into()));
    }
    let (channels, binary) = match data[1] {
        b'2' => (1, false),
        b'5' => (1, true),
        b'3' => (3, false),
        b'6' => (3, true),
        other => return Err(Error::Format(format!("unsupported netpbm type P{}", other as char))),
    };
    let mut cur = Cursor { data, pos: 2 };
    let cols = cur.number("width")? as usize;
    let rows = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Format(format!("maxval {maxval} outside 1..=65535")));
    }
    let count = rows * cols * channels;

    let mut samples = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        if cur.pos >= data.len() || !data[cur.pos].is_ascii_whitespace() {
            return Err(Error::Format("missing whitespace after maxval".into()));
        }
        let raster = &data[cur.pos + 1..];
        let width = if maxval < 256 { 1 } else { 2 };
        if raster.len() < count * width {
            return Err(Error::Format(format!(
                "raster truncated: need {} bytes, have {}",
                count * width,
                raster.len()
            )));
        }
        for i in 0..count {
            let v = if width == 1 {
                raster[i] as u32
            } else {
                u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]]) as u32
            };
            samples.push(rescale(v, maxval)?);
        }
    } else {
        for _ in 0..count {
            samples.push(rescale(cur.number("sample")?, maxval)?);
        }
    }

    if channels == 3 {
        GreyImage::from_rgb(rows, cols, &samples)
    } else {
        GreyImage::new(rows, cols, samples)
    }
}

pub fn read_grey(path: &Path) -> Result<GreyImage> {
    decode(&fs::read(path)?)
}

/// Binary (P5) greymap with maxval 255.
pub fn encode_pgm(rows: usize, cols: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

pub fn write_pgm(path: &Path, rows: usize, cols: usize, pixels: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&encode_pgm(rows, cols, pixels))?;
    Ok(())
}

/// Mask as a greymap with object pixels at 255 and background at 0.
pub fn write_mask(path: &Path, mask: &BinaryImage) -> Result<()> {
    let pixels: Vec<u8> = mask.pixels().iter().map(|&p| p * 255).collect();
    write_pgm(path, mask.rows(), mask.cols(), &pixels)
}
