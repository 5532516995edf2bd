//! Symmetric grayscale image cipher driven by chaotic maps.
//!
//! Key material comes from a bank of four one-dimensional chaotic maps
//! (logistic, tent, quadratic, Bernoulli). A generator hops between maps
//! and between offset-seeded orbits of each map, emitting control bits and
//! 20-bit subkeys. Two ciphers consume that stream:
//!
//! * [`diffusion`]: a pure pixel permutation that rotates rows and columns
//!   of the 8×8 block grid, then rotates every diagonal of each 64×64
//!   sub-block by one position.
//! * [`csdp`]: circular shifting of diagonal pixels. Each group of eight
//!   scanned bytes becomes an 8×8 bit matrix whose diagonals, rows and
//!   columns are rotated under the control of one subkey.
//!
//! [`metrics`] holds the statistical evaluation suite (correlation,
//! histogram, entropy, NPCR, UACI, PSNR) and [`codec`] the PGM and key-file
//! formats used by the `chaoscrypt` command-line tool.
//!
//! With the default `parallel` feature, per-block and per-group work is
//! spread across a rayon pool. Results are bit-identical to the sequential
//! path, which is always available through [`Execution::Sequential`].

pub mod chaos;
pub mod cli;
pub mod codec;
pub mod csdp;
pub mod diffusion;
pub mod error;
pub mod exec;
pub mod keystream;
pub mod lattice;
pub mod metrics;
pub mod pipeline;
pub mod synthetic;

pub use chaos::{MapKind, MapParams};
pub use csdp::{BitMatrix8, CsdpRoundParams};
pub use error::{Error, Result};
pub use exec::Execution;
pub use keystream::{ChaosKey, HopConfig, KeystreamGenerator, Seeds};
pub use lattice::{GrayImage, ScanPattern, ScanSignal};
pub use metrics::MetricsReport;
pub use pipeline::{decrypt_image, encrypt_image, CipherMode};
