//! Deterministic natural-looking test images.
//!
//! Smooth illumination, a handful of soft-edged shapes, band-limited texture
//! and a little sensor noise. Neighbouring pixels end up strongly
//! correlated, as in photographs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::GrayImage;

struct Blob {
    cy: f64,
    cx: f64,
    ry: f64,
    rx: f64,
    level: f64,
}

/// Bilinear interpolation of a random lattice with `cell`-pixel spacing.
fn value_noise(rng: &mut ChaCha8Rng, width: usize, height: usize, cell: usize) -> Vec<f64> {
    let gw = width / cell + 2;
    let gh = height / cell + 2;
    let lattice: Vec<f64> = (0..gw * gh).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut out = Vec::with_capacity(width * height);
    for r in 0..height {
        let fy = r as f64 / cell as f64;
        let (y0, ty) = (fy.floor() as usize, fy.fract());
        for c in 0..width {
            let fx = c as f64 / cell as f64;
            let (x0, tx) = (fx.floor() as usize, fx.fract());
            let at = |y: usize, x: usize| lattice[y * gw + x];
            let top = at(y0, x0) * (1.0 - tx) + at(y0, x0 + 1) * tx;
            let bottom = at(y0 + 1, x0) * (1.0 - tx) + at(y0 + 1, x0 + 1) * tx;
            out.push(top * (1.0 - ty) + bottom * ty);
        }
    }
    out
}

pub fn natural_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width as f64, height as f64);

    let tilt_x = rng.random_range(-50.0..50.0);
    let tilt_y = rng.random_range(-50.0..50.0);
    let base = rng.random_range(90.0..150.0);
    let blobs: Vec<Blob> = (0..rng.random_range(5..10))
        .map(|_| Blob {
            cy: rng.random_range(0.0..h),
            cx: rng.random_range(0.0..w),
            ry: rng.random_range(0.08..0.3) * h,
            rx: rng.random_range(0.08..0.3) * w,
            level: rng.random_range(-90.0..90.0),
        })
        .collect();
    let coarse = value_noise(&mut rng, width, height, 32);
    let fine = value_noise(&mut rng, width, height, 6);

    let mut i = 0;
    GrayImage::from_fn(width, height, |r, c| {
        let (y, x) = (r as f64, c as f64);
        let mut v = base + tilt_x * (x / w - 0.5) + tilt_y * (y / h - 0.5);
        for b in &blobs {
            let d = ((y - b.cy) / b.ry).powi(2) + ((x - b.cx) / b.rx).powi(2);
            // soft edge around d = 1
            v += b.level / (1.0 + (8.0 * (d - 1.0)).exp());
        }
        v += 25.0 * coarse[i] + 10.0 * fine[i];
        v += rng.random_range(-3.0..3.0);
        i += 1;
        v.round().clamp(0.0, 255.0) as u8
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{adjacent_correlation, entropy, Adjacency};

    #[test]
    fn looks_like_a_photograph() {
        for seed in 0..4 {
            let img = natural_image(256, 256, seed);
            for dir in Adjacency::ALL {
                assert!(adjacent_correlation(&img, dir).unwrap() > 0.9);
            }
            assert!(entropy(&img) > 6.0);
        }
        assert_eq!(natural_image(64, 64, 9), natural_image(64, 64, 9));
    }
}
