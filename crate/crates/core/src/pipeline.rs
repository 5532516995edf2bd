//! Whole-image encryption: optional diffusion, then scan, CSDP and unscan.

use std::fmt;
use std::str::FromStr;

use crate::csdp::{csdp_decrypt_with, csdp_encrypt_with};
use crate::diffusion::{diffuse_decrypt_with, diffuse_encrypt_with, DIAGONAL_BLOCK};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::keystream::ChaosKey;
use crate::lattice::{scan, unscan_signal, GrayImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CipherMode {
    /// Bit circulation only.
    Csdp,
    /// Block diffusion followed by bit circulation.
    DiffusionCsdp,
}

impl CipherMode {
    pub fn name(self) -> &'static str {
        match self {
            CipherMode::Csdp => "csdp",
            CipherMode::DiffusionCsdp => "diffusion+csdp",
        }
    }

    /// Side lengths must be multiples of this.
    pub fn granularity(self) -> usize {
        match self {
            CipherMode::Csdp => 8,
            CipherMode::DiffusionCsdp => DIAGONAL_BLOCK,
        }
    }
}

impl fmt::Display for CipherMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CipherMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csdp" => Ok(CipherMode::Csdp),
            "diffusion+csdp" | "diffusion-csdp" => Ok(CipherMode::DiffusionCsdp),
            other => Err(format!(
                "unknown mode `{other}` (expected csdp or diffusion+csdp)"
            )),
        }
    }
}

/// Square images only; no padding is ever added.
pub fn check_dimensions(img: &GrayImage, mode: CipherMode) -> Result<()> {
    let (w, h) = (img.width(), img.height());
    let g = mode.granularity();
    if w != h || w == 0 || !w.is_multiple_of(g) {
        return Err(Error::Dimension(format!(
            "{w}x{h} image rejected: {mode} mode needs a square image whose side is a positive multiple of {g}"
        )));
    }
    Ok(())
}

pub fn encrypt_image(img: &GrayImage, key: &ChaosKey, mode: CipherMode) -> Result<GrayImage> {
    encrypt_image_with(img, key, mode, Execution::default())
}

pub fn decrypt_image(img: &GrayImage, key: &ChaosKey, mode: CipherMode) -> Result<GrayImage> {
    decrypt_image_with(img, key, mode, Execution::default())
}

pub fn encrypt_image_with(
    img: &GrayImage,
    key: &ChaosKey,
    mode: CipherMode,
    exec: Execution,
) -> Result<GrayImage> {
    check_dimensions(img, mode)?;
    let diffused;
    let input = match mode {
        CipherMode::Csdp => img,
        CipherMode::DiffusionCsdp => {
            diffused = diffuse_encrypt_with(img, key, exec)?;
            &diffused
        }
    };
    let sig = csdp_encrypt_with(&scan(input, key.scan), key, exec)?;
    unscan_signal(&sig)
}

pub fn decrypt_image_with(
    img: &GrayImage,
    key: &ChaosKey,
    mode: CipherMode,
    exec: Execution,
) -> Result<GrayImage> {
    check_dimensions(img, mode)?;
    let sig = csdp_decrypt_with(&scan(img, key.scan), key, exec)?;
    let plain = unscan_signal(&sig)?;
    match mode {
        CipherMode::Csdp => Ok(plain),
        CipherMode::DiffusionCsdp => diffuse_decrypt_with(&plain, key, exec),
    }
}
