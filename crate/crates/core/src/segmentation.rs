//! Histogram thresholding and single-object extraction.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::shape_features::BinaryImage;

/// 8-bit greyscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreyImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl GreyImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || pixels.len() != rows * cols {
            return Err(Error::ImageShape {
                rows,
                cols,
                len: pixels.len(),
            });
        }
        Ok(Self { rows, cols, pixels })
    }

    /// Grey conversion of interleaved RGB by the rounded channel average.
    pub fn from_rgb(rows: usize, cols: usize, rgb: &[u8]) -> Result<Self> {
        if rgb.len() != rows * cols * 3 {
            return Err(Error::ImageShape {
                rows,
                cols,
                len: rgb.len() / 3,
            });
        }
        let pixels = rgb
            .chunks_exact(3)
            .map(|px| ((px[0] as u16 + px[1] as u16 + px[2] as u16 + 1) / 3) as u8)
            .collect();
        Self::new(rows, cols, pixels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn histogram(&self) -> [u64; 256] {
        let mut hist = [0u64; 256];
        for &p in &self.pixels {
            hist[p as usize] += 1;
        }
        hist
    }
}

/// Otsu's threshold: the level `t` maximising the between-class variance of
/// the split `[0, t]` / `[t + 1, 255]`. Ties resolve to the lowest `t`.
pub fn histogram_threshold(img: &GreyImage) -> Result<u8> {
    otsu_from_histogram(&img.histogram())
}

pub fn otsu_from_histogram(hist: &[u64; 256]) -> Result<u8> {
    let occupied: Vec<usize> = (0..256).filter(|&i| hist[i] > 0).collect();
    match occupied.as_slice() {
        [] => return Err(Error::NoItems),
        [only] => return Err(Error::DegenerateHistogram(*only as u8)),
        _ => {}
    }

    let total: i128 = hist.iter().map(|&h| h as i128).sum();
    let weighted: i128 = hist.iter().enumerate().map(|(i, &h)| i as i128 * h as i128).sum();

    let mut below: i128 = 0;
    let mut below_weighted: i128 = 0;
    let mut best = (0u8, f64::NEG_INFINITY);
    for (t, &h) in hist.iter().enumerate().take(255) {
        below += h as i128;
        below_weighted += t as i128 * h as i128;
        let above = total - below;
        if below == 0 || above == 0 {
            continue;
        }
        // w0 w1 (mu0 - mu1)^2 up to the constant factor 1 / N^2.
        let spread = (below_weighted * total - below * weighted) as f64;
        let score = spread * spread / (below as f64 * above as f64);
        if score > best.1 {
            best = (t as u8, score);
        }
    }
    Ok(best.0)
}

/// Which side of the threshold is the object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarity {
    /// Object pixels are `<= t`.
    Dark,
    /// Object pixels are `> t`.
    Bright,
    /// Dark first; flipped if the object would cover more than half the frame.
    #[default]
    Auto,
}

pub fn binarize(img: &GreyImage, threshold: u8, polarity: Polarity) -> BinaryImage {
    let dark = |p: u8| p <= threshold;
    let object_is_dark = match polarity {
        Polarity::Dark => true,
        Polarity::Bright => false,
        Polarity::Auto => {
            let count = img.pixels.iter().filter(|&&p| dark(p)).count();
            2 * count <= img.pixels.len()
        }
    };
    let pixels = img
        .pixels
        .iter()
        .map(|&p| u8::from(dark(p) == object_is_dark))
        .collect();
    BinaryImage::new(img.rows, img.cols, pixels).expect("shape inherited from a valid grey image")
}

/// Keeps only the largest 8-connected object component. Equal sizes resolve
/// to the component whose first pixel comes earliest in row-major order.
pub fn largest_component(img: &BinaryImage) -> Result<BinaryImage> {
    let (rows, cols) = (img.rows(), img.cols());
    let mut label = vec![0u32; rows * cols];
    let mut best: Option<(u32, usize)> = None;
    let mut next = 0u32;
    let mut queue = VecDeque::new();

    for start in 0..rows * cols {
        if img.pixels()[start] == 0 || label[start] != 0 {
            continue;
        }
        next += 1;
        label[start] = next;
        queue.push_back(start);
        let mut size = 0usize;
        while let Some(i) = queue.pop_front() {
            size += 1;
            let (r, c) = (i / cols, i % cols);
            for dr in -1isize..=1 {
                for dc in -1isize..=1 {
                    let (nr, nc) = (r as isize + dr, c as isize + dc);
                    if (dr, dc) == (0, 0) || nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                        continue;
                    }
                    let j = nr as usize * cols + nc as usize;
                    if img.pixels()[j] == 1 && label[j] == 0 {
                        label[j] = next;
                        queue.push_back(j);
                    }
                }
            }
        }
        if best.is_none_or(|(_, s)| size > s) {
            best = Some((next, size));
        }
    }

    let (keep, _) = best.ok_or(Error::EmptyObject)?;
    let pixels = label.iter().map(|&l| u8::from(l == keep)).collect();
    BinaryImage::new(rows, cols, pixels)
}

/// Threshold, binarise and isolate the dominant object.
pub fn segment(img: &GreyImage, polarity: Polarity) -> Result<BinaryImage> {
    let t = histogram_threshold(img)?;
    largest_component(&binarize(img, t, polarity))
}
