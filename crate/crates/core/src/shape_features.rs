//! Moments of binary silhouettes and the seven Hu rotation invariants.
//!
//! Pixels use zero-based `(row, col)` coordinates with rows increasing
//! downward. Raw moments are accumulated exactly in integers; central moments
//! are accumulated about the centre of mass in bounding-box-relative
//! coordinates with compensated summation, which makes every derived quantity
//! bit-identical under translation of the object.

use crate::error::{Error, Result};

/// Highest moment order `p + q` the extractor computes.
pub const MAX_ORDER: u32 = 3;

/// Rectangular raster of `{0, 1}` pixels, stored row-major. `1` is object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl BinaryImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || pixels.len() != rows * cols {
            return Err(Error::ImageShape {
                rows,
                cols,
                len: pixels.len(),
            });
        }
        if let Some(&bad) = pixels.iter().find(|&&p| p > 1) {
            return Err(Error::NonBinaryPixel(bad));
        }
        Ok(Self { rows, cols, pixels })
    }

    /// All-background image.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    /// Builds an image by evaluating `object(row, col)` at every pixel.
    pub fn from_fn(rows: usize, cols: usize, mut object: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(u8::from(object(r, c)));
            }
        }
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

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.pixels[row * self.cols + col] == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, object: bool) {
        self.pixels[row * self.cols + col] = u8::from(object);
    }

    /// Number of object pixels (the area, `m00`).
    pub fn area(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == 1).count()
    }

    /// Iterator over `(row, col)` of object pixels in row-major order.
    pub fn object_pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.cols;
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == 1)
            .map(move |(i, _)| (i / cols, i % cols))
    }

    /// Rotation by 90 degrees clockwise.
    pub fn rotated_90(&self) -> Self {
        let (rows, cols) = (self.cols, self.rows);
        let mut out = vec![0; rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                // (r, c) -> (c, rows_in - 1 - r)
                out[c * cols + (self.rows - 1 - r)] = self.pixels[r * self.cols + c];
            }
        }
        Self {
            rows,
            cols,
            pixels: out,
        }
    }

    /// Rotation by 180 degrees.
    pub fn rotated_180(&self) -> Self {
        let mut pixels = self.pixels.clone();
        pixels.reverse();
        Self {
            rows: self.rows,
            cols: self.cols,
            pixels,
        }
    }

    /// Mirror image about the vertical axis (columns reversed).
    pub fn flipped_horizontal(&self) -> Self {
        let mut pixels = self.pixels.clone();
        for row in pixels.chunks_mut(self.cols) {
            row.reverse();
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            pixels,
        }
    }

    /// Pixel-replicating enlargement by an integer factor.
    pub fn upscaled(&self, factor: usize) -> Self {
        assert!(factor > 0, "upscale factor must be positive");
        let (rows, cols) = (self.rows * factor, self.cols * factor);
        let pixels = (0..rows * cols)
            .map(|i| self.pixels[(i / cols / factor) * self.cols + (i % cols) / factor])
            .collect();
        Self { rows, cols, pixels }
    }

    /// Copy placed inside a larger canvas with its top-left corner at
    /// `(row_offset, col_offset)`.
    pub fn embedded(&self, rows: usize, cols: usize, row_offset: usize, col_offset: usize) -> Result<Self> {
        if row_offset + self.rows > rows || col_offset + self.cols > cols {
            return Err(Error::ImageShape {
                rows,
                cols,
                len: self.pixels.len(),
            });
        }
        let mut out = Self::zeros(rows, cols)?;
        for (r, c) in self.object_pixels() {
            out.set(r + row_offset, c + col_offset, true);
        }
        Ok(out)
    }

    fn bounding_origin(&self) -> Option<(usize, usize)> {
        let mut origin: Option<(usize, usize)> = None;
        for (r, c) in self.object_pixels() {
            origin = Some(match origin {
                None => (r, c),
                Some((r0, c0)) => (r0.min(r), c0.min(c)),
            });
        }
        origin
    }
}

/// Index of `(p, q)` inside the 10-slot moment arrays.
#[inline]
fn slot(p: u32, q: u32) -> usize {
    match (p, q) {
        (0, 0) => 0,
        (1, 0) => 1,
        (0, 1) => 2,
        (2, 0) => 3,
        (1, 1) => 4,
        (0, 2) => 5,
        (3, 0) => 6,
        (2, 1) => 7,
        (1, 2) => 8,
        (0, 3) => 9,
        _ => unreachable!("moment order checked by caller"),
    }
}

const ORDERS: [(u32, u32); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

fn check_order(p: u32, q: u32) -> Result<()> {
    if p + q > MAX_ORDER {
        Err(Error::MomentOrder(p + q))
    } else {
        Ok(())
    }
}

/// Raw, central and (once normalised) scale-normalised moments of one object.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    raw: [f64; 10],
    centroid: (f64, f64),
    central: [f64; 10],
    normalized: Option<[f64; 10]>,
}

impl MomentSet {
    /// `m_pq` about the image origin.
    pub fn raw(&self, p: u32, q: u32) -> Result<f64> {
        check_order(p, q)?;
        Ok(self.raw[slot(p, q)])
    }

    /// Centre of mass `(row, col)`.
    pub fn centroid(&self) -> (f64, f64) {
        self.centroid
    }

    /// `m'_pq` about the centre of mass.
    pub fn central(&self, p: u32, q: u32) -> Result<f64> {
        check_order(p, q)?;
        Ok(self.central[slot(p, q)])
    }

    /// `n_pq`; `None` for `p + q < 2` or before normalisation.
    pub fn normalized(&self, p: u32, q: u32) -> Option<f64> {
        if p + q < 2 || p + q > MAX_ORDER {
            return None;
        }
        self.normalized.map(|n| n[slot(p, q)])
    }

    pub fn area(&self) -> f64 {
        self.raw[0]
    }

    fn normalized_array(&self) -> [f64; 10] {
        match self.normalized {
            Some(n) => n,
            None => normalize(&self.central),
        }
    }
}

/// `m_pq = Σ r^p c^q f(r, c)`. Returns 0 for an all-background image.
pub fn raw_moment(img: &BinaryImage, p: u32, q: u32) -> Result<f64> {
    check_order(p, q)?;
    let mut acc: u128 = 0;
    for (r, c) in img.object_pixels() {
        acc += (r as u128).pow(p) * (c as u128).pow(q);
    }
    Ok(acc as f64)
}

fn exact_raw(img: &BinaryImage, origin: (usize, usize)) -> [u128; 10] {
    let mut acc = [0u128; 10];
    for (r, c) in img.object_pixels() {
        let (r, c) = ((r - origin.0) as u128, (c - origin.1) as u128);
        for (i, &(p, q)) in ORDERS.iter().enumerate() {
            acc[i] += r.pow(p) * c.pow(q);
        }
    }
    acc
}

/// Centre of mass `(m10 / m00, m01 / m00)`.
pub fn centroid(img: &BinaryImage) -> Result<(f64, f64)> {
    let raw = exact_raw(img, (0, 0));
    if raw[0] == 0 {
        return Err(Error::EmptyObject);
    }
    let m00 = raw[0] as f64;
    Ok((raw[slot(1, 0)] as f64 / m00, raw[slot(0, 1)] as f64 / m00))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.correction
    }
}

/// Computes raw moments, the centroid, and central moments up to order 3.
/// The returned set is not yet scale-normalised.
pub fn central_moments(img: &BinaryImage) -> Result<MomentSet> {
    let origin = img.bounding_origin().ok_or(Error::EmptyObject)?;
    let raw_abs = exact_raw(img, (0, 0));
    let raw_rel = exact_raw(img, origin);
    let m00 = raw_rel[0] as f64;
    let rel_r = raw_rel[slot(1, 0)] as f64 / m00;
    let rel_c = raw_rel[slot(0, 1)] as f64 / m00;

    let mut sums = [CompensatedSum::default(); 10];
    for (r, c) in img.object_pixels() {
        let dr = (r - origin.0) as f64 - rel_r;
        let dc = (c - origin.1) as f64 - rel_c;
        let (dr2, dc2) = (dr * dr, dc * dc);
        sums[slot(2, 0)].add(dr2);
        sums[slot(1, 1)].add(dr * dc);
        sums[slot(0, 2)].add(dc2);
        sums[slot(3, 0)].add(dr2 * dr);
        sums[slot(2, 1)].add(dr2 * dc);
        sums[slot(1, 2)].add(dr * dc2);
        sums[slot(0, 3)].add(dc2 * dc);
    }

    let mut central = [0.0; 10];
    central[0] = m00;
    for i in 3..10 {
        central[i] = sums[i].value();
    }

    let mut raw = [0.0; 10];
    for (dst, src) in raw.iter_mut().zip(raw_abs) {
        *dst = src as f64;
    }
    Ok(MomentSet {
        raw,
        centroid: (raw[slot(1, 0)] / m00, raw[slot(0, 1)] / m00),
        central,
        normalized: None,
    })
}

fn normalize(central: &[f64; 10]) -> [f64; 10] {
    let m00 = central[0];
    let second = m00 * m00;
    let third = m00 * m00 * m00.sqrt();
    let mut n = [0.0; 10];
    for (i, &(p, q)) in ORDERS.iter().enumerate() {
        n[i] = match p + q {
            2 => central[i] / second,
            3 => central[i] / third,
            _ => 0.0,
        };
    }
    n
}

/// Scale normalisation `n_pq = m'_pq / m00^(1 + (p+q)/2)` for `p + q` in {2, 3}.
pub fn normalized_central_moments(m: &MomentSet) -> Result<MomentSet> {
    if m.central[0] <= 0.0 {
        return Err(Error::EmptyObject);
    }
    let mut out = m.clone();
    out.normalized = Some(normalize(&m.central));
    Ok(out)
}

/// Hu's seven rotation invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuVector(pub [f64; 7]);

impl HuVector {
    /// `h_i` with one-based `i` in `1..=7`.
    pub fn h(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Seven Hu invariants from normalised central moments. Moments that have not
/// been normalised yet are normalised on the fly.
pub fn hu_moments(m: &MomentSet) -> HuVector {
    let n = m.normalized_array();
    let n20 = n[slot(2, 0)];
    let n11 = n[slot(1, 1)];
    let n02 = n[slot(0, 2)];
    let n30 = n[slot(3, 0)];
    let n21 = n[slot(2, 1)];
    let n12 = n[slot(1, 2)];
    let n03 = n[slot(0, 3)];

    let diff = n20 - n02;
    let a = n30 - 3.0 * n12;
    let b = 3.0 * n21 - n03;
    let s = n30 + n12;
    let t = n21 + n03;
    let (s2, t2) = (s * s, t * t);

    HuVector([
        n20 + n02,
        diff * diff + 4.0 * n11 * n11,
        a * a + b * b,
        s2 + t2,
        a * s * (s2 - 3.0 * t2) + b * t * (3.0 * s2 - t2),
        diff * (s2 - t2) + 4.0 * n11 * s * t,
        b * s * (s2 - 3.0 * t2) - a * t * (3.0 * s2 - t2),
    ])
}

/// Full chain for one silhouette: central moments, normalisation, Hu invariants.
pub fn hu_invariants(img: &BinaryImage) -> Result<HuVector> {
    let m = normalized_central_moments(&central_moments(img)?)?;
    Ok(hu_moments(&m))
}

/// Compressive transform applied to Hu invariants before clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogTransform {
    /// `sign(x) * ln(|x| + epsilon)`, with `sign(0) = 0`.
    SignedLn {
        epsilon: f64,
    },
    /// `sign(x) * log10(|x| + epsilon)`, with `sign(0) = 0`.
    SignedLog10 {
        epsilon: f64,
    },
    Identity,
}

impl Default for LogTransform {
    fn default() -> Self {
        LogTransform::SignedLn { epsilon: 1e-30 }
    }
}

impl LogTransform {
    pub fn apply(self, x: f64) -> f64 {
        let sign = |x: f64| {
            if x > 0.0 {
                1.0
            } else if x < 0.0 {
                -1.0
            } else {
                0.0
            }
        };
        match self {
            LogTransform::SignedLn { epsilon } => sign(x) * (x.abs() + epsilon).ln(),
            LogTransform::SignedLog10 { epsilon } => sign(x) * (x.abs() + epsilon).log10(),
            LogTransform::Identity => x,
        }
    }
}

pub fn log_normalize(h: &HuVector, transform: LogTransform) -> HuVector {
    HuVector(h.0.map(|x| transform.apply(x)))
}

/// Ordered list of real features describing one item.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(pub Vec<f64>);

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl From<HuVector> for FeatureVector {
    fn from(h: HuVector) -> Self {
        FeatureVector(h.0.to_vec())
    }
}

impl From<Vec<f64>> for FeatureVector {
    fn from(v: Vec<f64>) -> Self {
        FeatureVector(v)
    }
}

/// Per-feature min-max scaling onto `[0, 1]` over the whole set. A constant
/// feature maps to 0 everywhere.
pub fn minmax_normalize(features: &[FeatureVector]) -> Result<Vec<FeatureVector>> {
    if features.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: features.len(),
        });
    }
    let dim = features[0].len();
    if let Some(bad) = features.iter().find(|f| f.len() != dim) {
        return Err(Error::DimensionMismatch(dim, bad.len()));
    }

    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for f in features {
        for (i, &v) in f.0.iter().enumerate() {
            lo[i] = lo[i].min(v);
            hi[i] = hi[i].max(v);
        }
    }

    Ok(features
        .iter()
        .map(|f| {
            FeatureVector(
                f.0.iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let range = hi[i] - lo[i];
                        if range > 0.0 {
                            ((v - lo[i]) / range).clamp(0.0, 1.0)
                        } else {
                            0.0
                        }
                    })
                    .collect(),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disk(radius: f64) -> BinaryImage {
        let size = (2.0 * radius).ceil() as usize + 3;
        let centre = (size as f64 - 1.0) / 2.0;
        BinaryImage::from_fn(size, size, |r, c| {
            let (dr, dc) = (r as f64 - centre, c as f64 - centre);
            dr * dr + dc * dc <= radius * radius
        })
        .unwrap()
    }

    fn ones(rows: usize, cols: usize) -> BinaryImage {
        BinaryImage::new(rows, cols, vec![1; rows * cols]).unwrap()
    }

    /// Asymmetric "L with a tail" used for reflection checks.
    fn asymmetric() -> BinaryImage {
        BinaryImage::from_fn(40, 30, |r, c| {
            (r < 30 && c < 6) || ((24..30).contains(&r) && c < 22) || ((5..9).contains(&r) && (6..11).contains(&c))
        })
        .unwrap()
    }

    #[test]
    fn image_rejects_bad_shapes_and_values() {
        assert!(matches!(
            BinaryImage::new(2, 2, vec![0; 3]),
            Err(Error::ImageShape { .. })
        ));
        assert!(matches!(
            BinaryImage::new(1, 2, vec![0, 2]),
            Err(Error::NonBinaryPixel(2))
        ));
        assert!(BinaryImage::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn raw_moment_examples() {
        let single = ones(1, 1);
        assert_eq!(raw_moment(&single, 0, 0).unwrap(), 1.0);
        let block = ones(3, 3);
        assert_eq!(raw_moment(&block, 0, 0).unwrap(), 9.0);
        // rows 0,1,2 each contribute 3 * row
        assert_eq!(raw_moment(&block, 1, 0).unwrap(), 9.0);
        assert_eq!(raw_moment(&BinaryImage::zeros(4, 4).unwrap(), 2, 1).unwrap(), 0.0);
        assert!(matches!(raw_moment(&block, 2, 2), Err(Error::MomentOrder(4))));
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(centroid(&ones(3, 3)).unwrap(), (1.0, 1.0));
        let mut point = BinaryImage::zeros(10, 10).unwrap();
        point.set(4, 7, true);
        assert_eq!(centroid(&point).unwrap(), (4.0, 7.0));
        let mut pair = BinaryImage::zeros(3, 1).unwrap();
        pair.set(0, 0, true);
        pair.set(2, 0, true);
        assert_eq!(centroid(&pair).unwrap(), (1.0, 0.0));
        assert!(matches!(
            centroid(&BinaryImage::zeros(2, 2).unwrap()),
            Err(Error::EmptyObject)
        ));
    }

    #[test]
    fn central_moment_examples() {
        let bar = ones(1, 3);
        let m = central_moments(&bar).unwrap();
        assert_eq!(m.central(1, 0).unwrap(), 0.0);
        assert_eq!(m.central(0, 1).unwrap(), 0.0);
        assert_eq!(m.central(0, 2).unwrap(), 2.0);
        assert_eq!(m.central(2, 0).unwrap(), 0.0);

        let vbar = ones(3, 1);
        let m = central_moments(&vbar).unwrap();
        assert_eq!(m.central(2, 0).unwrap(), 2.0);
        assert_eq!(m.central(0, 2).unwrap(), 0.0);

        assert!(matches!(
            central_moments(&BinaryImage::zeros(3, 3).unwrap()),
            Err(Error::EmptyObject)
        ));
    }

    #[test]
    fn normalized_only_for_second_and_third_order() {
        let m = normalized_central_moments(&central_moments(&asymmetric()).unwrap()).unwrap();
        assert!(m.normalized(1, 0).is_none());
        assert!(m.normalized(0, 0).is_none());
        assert!(m.normalized(2, 0).is_some());
        assert!(m.normalized(1, 2).is_some());
        let un = central_moments(&asymmetric()).unwrap();
        assert!(un.normalized(2, 0).is_none());
    }

    #[test]
    fn normalized_translation_bit_identical() {
        let shape = asymmetric();
        let a = shape.embedded(60, 60, 0, 0).unwrap();
        let b = shape.embedded(60, 60, 3, 5).unwrap();
        let na = normalized_central_moments(&central_moments(&a).unwrap()).unwrap();
        let nb = normalized_central_moments(&central_moments(&b).unwrap()).unwrap();
        for &(p, q) in &ORDERS[3..] {
            assert_eq!(
                na.normalized(p, q).unwrap().to_bits(),
                nb.normalized(p, q).unwrap().to_bits()
            );
        }
    }

    /// Midpoint-rule quadrature of the continuous unit disk, independent of the
    /// raster moment code: n20 = ∫∫ x² / area².
    fn disk_n20_quadrature(steps: usize) -> f64 {
        let h = 2.0 / steps as f64;
        let (mut area, mut second) = (0.0, 0.0);
        for i in 0..steps {
            let x = -1.0 + (i as f64 + 0.5) * h;
            for j in 0..steps {
                let y = -1.0 + (j as f64 + 0.5) * h;
                if x * x + y * y <= 1.0 {
                    area += h * h;
                    second += x * x * h * h;
                }
            }
        }
        second / (area * area)
    }

    #[test]
    fn disk_n20_matches_quadrature_oracle() {
        let oracle = disk_n20_quadrature(2000);
        assert!((oracle - 1.0 / (4.0 * PI)).abs() / (1.0 / (4.0 * PI)) < 1e-3);
        let m = normalized_central_moments(&central_moments(&disk(100.0)).unwrap()).unwrap();
        let n20 = m.normalized(2, 0).unwrap();
        assert!((n20 - oracle).abs() / oracle < 0.01, "n20 = {n20}, oracle = {oracle}");
    }

    #[test]
    fn scale_doubling_keeps_n20() {
        let shape = asymmetric();
        let a = normalized_central_moments(&central_moments(&shape).unwrap()).unwrap();
        let b = normalized_central_moments(&central_moments(&shape.upscaled(2)).unwrap()).unwrap();
        let (x, y) = (a.normalized(2, 0).unwrap(), b.normalized(2, 0).unwrap());
        assert!((x - y).abs() / x < 0.01);
    }

    #[test]
    fn disk_hu_limit() {
        let h = hu_invariants(&disk(100.0)).unwrap();
        let target = 1.0 / (2.0 * PI);
        assert!((h.h(1) - target).abs() / target < 0.01);
        for i in 2..=7 {
            assert!(h.h(i).abs() <= 1e-4, "h{i} = {}", h.h(i));
        }
    }

    #[test]
    fn disk_convergence_is_monotone() {
        let target = 1.0 / (2.0 * PI);
        let errors: Vec<f64> = [25.0, 50.0, 100.0]
            .iter()
            .map(|&r| (hu_invariants(&disk(r)).unwrap().h(1) - target).abs())
            .collect();
        assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
    }

    #[test]
    fn rotation_90_invariance() {
        let shape = asymmetric();
        let a = hu_invariants(&shape).unwrap();
        let b = hu_invariants(&shape.rotated_90()).unwrap();
        for i in 0..7 {
            let scale = a.0[i].abs().max(b.0[i].abs());
            assert!(
                (a.0[i] - b.0[i]).abs() <= 1e-9 * scale,
                "h{}: {} vs {}",
                i + 1,
                a.0[i],
                b.0[i]
            );
        }
    }

    #[test]
    fn mirror_flips_h7_only() {
        let shape = asymmetric();
        let a = hu_invariants(&shape).unwrap();
        let b = hu_invariants(&shape.flipped_horizontal()).unwrap();
        for i in 0..6 {
            let scale = a.0[i].abs().max(b.0[i].abs());
            assert!((a.0[i] - b.0[i]).abs() <= 1e-9 * scale);
        }
        assert!(a.h(7).abs() > 1e-12);
        assert!((a.h(7) + b.h(7)).abs() <= 1e-9 * a.h(7).abs());
    }

    #[test]
    fn h1_h2_nonnegative() {
        for shape in [asymmetric(), ones(1, 5), disk(7.0)] {
            let h = hu_invariants(&shape).unwrap();
            assert!(h.h(1) >= 0.0);
            assert!(h.h(2) >= 0.0);
        }
    }

    #[test]
    fn log_transform_examples() {
        let t = LogTransform::default();
        assert_eq!(t.apply(0.0), 0.0);
        assert!((t.apply((-8.0f64).exp()) + 8.0).abs() < 1e-12);
        assert!((t.apply(-(-8.0f64).exp()) - 8.0).abs() < 1e-12);
        let h = log_normalize(
            &HuVector([1.0, 0.0, -1.0, 0.5, 2.0, 1e-3, -1e-3]),
            LogTransform::Identity,
        );
        assert_eq!(h.0, [1.0, 0.0, -1.0, 0.5, 2.0, 1e-3, -1e-3]);
    }

    #[test]
    fn minmax_examples() {
        let out = minmax_normalize(&[vec![0.0].into(), vec![10.0].into()]).unwrap();
        assert_eq!(out, vec![FeatureVector(vec![0.0]), FeatureVector(vec![1.0])]);
        let out = minmax_normalize(&[vec![5.0].into(), vec![5.0].into(), vec![5.0].into()]).unwrap();
        assert!(out.iter().all(|f| f.0 == [0.0]));
        assert!(matches!(
            minmax_normalize(&[vec![1.0].into()]),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
        assert!(matches!(
            minmax_normalize(&[vec![1.0].into(), vec![1.0, 2.0].into()]),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }
}
