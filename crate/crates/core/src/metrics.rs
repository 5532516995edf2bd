//! Statistical evaluation of a plain/cipher image pair.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::GrayImage;

/// Neighbour relation for adjacent-pixel correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjacency {
    /// `(i, j)` with `(i, j + 1)`
    Horizontal,
    /// `(i, j)` with `(i + 1, j)`
    Vertical,
    /// `(i, j)` with `(i + 1, j + 1)`
    Diagonal,
}

impl Adjacency {
    pub const ALL: [Adjacency; 3] = [
        Adjacency::Horizontal,
        Adjacency::Vertical,
        Adjacency::Diagonal,
    ];

    fn offset(self) -> (usize, usize) {
        match self {
            Adjacency::Horizontal => (0, 1),
            Adjacency::Vertical => (1, 0),
            Adjacency::Diagonal => (1, 1),
        }
    }
}

/// Pearson correlation of paired samples.
pub fn pearson(pairs: impl Iterator<Item = (f64, f64)> + Clone) -> Result<f64> {
    let (mut n, mut sx, mut sy) = (0usize, 0.0, 0.0);
    for (x, y) in pairs.clone() {
        n += 1;
        sx += x;
        sy += y;
    }
    if n < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two samples"));
    }
    let (mx, my) = (sx / n as f64, sy / n as f64);
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for (x, y) in pairs {
        let (dx, dy) = (x - mx, y - my);
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::UndefinedCorrelation("a marginal has zero variance"));
    }
    Ok((cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

/// Correlation over every adjacent pixel pair in the given direction.
pub fn adjacent_correlation(img: &GrayImage, dir: Adjacency) -> Result<f64> {
    let (dr, dc) = dir.offset();
    let (w, h) = (img.width(), img.height());
    let rows = h.saturating_sub(dr);
    let cols = w.saturating_sub(dc);
    let pairs = (0..rows).flat_map(move |r| {
        (0..cols).map(move |c| (f64::from(img.get(r, c)), f64::from(img.get(r + dr, c + dc))))
    });
    pearson(pairs)
}

/// Correlation of two same-size images, pixel by pixel.
pub fn cross_correlation(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_size(b)?;
    pearson(
        a.pixels()
            .iter()
            .zip(b.pixels())
            .map(|(&x, &y)| (f64::from(x), f64::from(y))),
    )
}

/// Percentage of positions where the two images differ.
pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    c1.same_size(c2)?;
    let n = c1.pixels().len();
    if n == 0 {
        return Ok(0.0);
    }
    let changed = c1
        .pixels()
        .iter()
        .zip(c2.pixels())
        .filter(|(a, b)| a != b)
        .count();
    Ok(100.0 * changed as f64 / n as f64)
}

/// Mean absolute difference as a percentage of 255.
pub fn uaci(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    c1.same_size(c2)?;
    let n = c1.pixels().len();
    if n == 0 {
        return Ok(0.0);
    }
    let total: u64 = c1
        .pixels()
        .iter()
        .zip(c2.pixels())
        .map(|(&a, &b)| u64::from(a.abs_diff(b)))
        .sum();
    Ok(100.0 * total as f64 / (255.0 * n as f64))
}

/// `10 log10(peak^2 / MSE)` with `peak` the brightest pixel of `plain`.
/// Identical images give `f64::INFINITY`.
pub fn psnr(plain: &GrayImage, cipher: &GrayImage) -> Result<f64> {
    plain.same_size(cipher)?;
    let n = plain.pixels().len();
    let sse: u64 = plain
        .pixels()
        .iter()
        .zip(cipher.pixels())
        .map(|(&a, &b)| u64::from(a.abs_diff(b)).pow(2))
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let peak = f64::from(plain.pixels().iter().copied().max().unwrap_or(0));
    let mse = sse as f64 / n as f64;
    Ok(10.0 * (peak * peak / mse).log10())
}

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

/// Shannon entropy of the gray-level distribution, in bits.
pub fn entropy(img: &GrayImage) -> f64 {
    let total = img.pixels().len() as f64;
    if total == 0.0 {
        return 0.0;
    }
    -histogram(img)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Everything reported for one plain/cipher pair. Correlations that are
/// undefined (a constant image) are `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub plain_corr_h: f64,
    pub plain_corr_v: f64,
    pub plain_corr_d: f64,
    pub corr_h: f64,
    pub corr_v: f64,
    pub corr_d: f64,
    pub cross_corr: f64,
    pub plain_entropy_bits: f64,
    pub entropy_bits: f64,
    pub npcr_pct: f64,
    pub uaci_pct: f64,
    pub psnr_db: f64,
    pub histogram: [u64; 256],
}

impl MetricsReport {
    pub fn compute(plain: &GrayImage, cipher: &GrayImage) -> Result<Self> {
        plain.same_size(cipher)?;
        let corr = |img, dir| adjacent_correlation(img, dir).unwrap_or(f64::NAN);
        Ok(MetricsReport {
            plain_corr_h: corr(plain, Adjacency::Horizontal),
            plain_corr_v: corr(plain, Adjacency::Vertical),
            plain_corr_d: corr(plain, Adjacency::Diagonal),
            corr_h: corr(cipher, Adjacency::Horizontal),
            corr_v: corr(cipher, Adjacency::Vertical),
            corr_d: corr(cipher, Adjacency::Diagonal),
            cross_corr: cross_correlation(plain, cipher).unwrap_or(f64::NAN),
            plain_entropy_bits: entropy(plain),
            entropy_bits: entropy(cipher),
            npcr_pct: npcr(plain, cipher)?,
            uaci_pct: uaci(plain, cipher)?,
            psnr_db: psnr(plain, cipher)?,
            histogram: histogram(cipher),
        })
    }

    /// `(name, value)` pairs of the scalar metrics, in report order.
    pub fn scalars(&self) -> [(&'static str, f64); 12] {
        [
            ("plain_corr_h", self.plain_corr_h),
            ("plain_corr_v", self.plain_corr_v),
            ("plain_corr_d", self.plain_corr_d),
            ("corr_h", self.corr_h),
            ("corr_v", self.corr_v),
            ("corr_d", self.corr_d),
            ("cross_corr", self.cross_corr),
            ("plain_entropy_bits", self.plain_entropy_bits),
            ("entropy_bits", self.entropy_bits),
            ("npcr_pct", self.npcr_pct),
            ("uaci_pct", self.uaci_pct),
            ("psnr_db", self.psnr_db),
        ]
    }

    /// `name = value` lines with the names padded to a common width.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.scalars() {
            let _ = writeln!(out, "{name:<18} = {}", format_value(value));
        }
        out
    }

    /// Unpadded `name = value` lines, including the cipher histogram as a
    /// comma-separated list of 256 counts.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.scalars() {
            let _ = writeln!(out, "{name} = {}", format_value(value));
        }
        let counts: Vec<String> = self.histogram.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "histogram = {}", counts.join(","));
        out
    }
}

fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.6}")
    }
}
