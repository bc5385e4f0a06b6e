use approx::assert_relative_eq;
use stigmergia::netpbm;
use stigmergia::segmentation::{segment, GreyImage, Polarity};
use stigmergia::shape_features::{hu_invariants, log_normalize, BinaryImage, LogTransform};

/// Dark tilted ellipse plus a small dark speck on a bright, slightly noisy
/// background.
fn microscope_like(rows: usize, cols: usize, angle: f64) -> (GreyImage, BinaryImage) {
    let (cr, cc) = (rows as f64 / 2.0, cols as f64 / 2.0);
    let inside = |r: usize, c: usize| {
        let (y, x) = (r as f64 - cr, c as f64 - cc);
        let u = x * angle.cos() + y * angle.sin();
        let v = -x * angle.sin() + y * angle.cos();
        (u / 28.0).powi(2) + (v / 11.0).powi(2) <= 1.0
    };
    let mask = BinaryImage::from_fn(rows, cols, inside).unwrap();
    let px = (0..rows * cols)
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            let noise = ((r * 31 + c * 17) % 9) as u8;
            if inside(r, c) {
                40 + noise
            } else if r < 3 && c < 3 {
                30
            } else {
                200 + noise
            }
        })
        .collect();
    (GreyImage::new(rows, cols, px).unwrap(), mask)
}

#[test]
fn segmentation_recovers_the_drawn_object() {
    let (img, mask) = microscope_like(90, 100, 0.4);
    let seg = segment(&img, Polarity::Auto).unwrap();
    assert_eq!(seg, mask);
    assert_eq!(hu_invariants(&seg).unwrap(), hu_invariants(&mask).unwrap());
}

#[test]
fn pgm_round_trip_keeps_features() {
    let dir = tempfile::tempdir().unwrap();
    let (img, _) = microscope_like(90, 100, 1.1);
    let path = dir.path().join("larva.pgm");
    netpbm::write_pgm(&path, img.rows(), img.cols(), img.pixels()).unwrap();
    let back = netpbm::read_grey(&path).unwrap();
    assert_eq!(back, img);
    let a = hu_invariants(&segment(&img, Polarity::Dark).unwrap()).unwrap();
    let b = hu_invariants(&segment(&back, Polarity::Dark).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn quarter_turn_of_the_photograph_keeps_invariants() {
    let (img, _) = microscope_like(90, 100, 0.3);
    let seg = segment(&img, Polarity::Auto).unwrap();
    let h = hu_invariants(&seg).unwrap();
    let hr = hu_invariants(&seg.rotated_90()).unwrap();
    for i in 0..7 {
        assert_relative_eq!(h.0[i], hr.0[i], max_relative = 1e-9, epsilon = 1e-300);
    }
    let logged = log_normalize(&h, LogTransform::default());
    assert!(logged.0[0] < 0.0 && logged.0[0] > -3.0);
}
