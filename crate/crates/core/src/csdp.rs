//! Circular shifting of diagonal pixels (CSDP).
//!
//! Eight consecutive bytes of a scanned signal form an 8×8 bit matrix, row
//! `i` holding byte `i` with its most significant bit in column 0. One
//! round, driven by one 20-bit subkey, applies three stages:
//!
//! 1. every main-orientation diagonal (15 of them) is rotated by `u` cells,
//!    up when `t` is set, down otherwise;
//! 2. every row is rotated by `(r + alpha) mod 8` bits, left when `p` is set;
//! 3. every column is rotated by `(s + beta) mod 8` bits, up when `q` is set.
//!
//! The inverse runs the stages backwards with opposite directions. A round
//! only moves bits, so each group keeps its population count.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::keystream::{derive_round_params, ChaosKey, KeystreamGenerator};
use crate::lattice::{diagonal_cells, Orientation, ScanSignal};

pub const GROUP_LEN: usize = 8;

/// An 8×8 binary matrix; row `i` is byte `i`, column 0 is its MSB.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitMatrix8(pub [u8; 8]);

impl BitMatrix8 {
    pub fn from_bytes(group: &[u8]) -> Result<Self> {
        let rows: [u8; 8] = group.try_into().map_err(|_| {
            Error::Dimension(format!("bit matrix needs 8 bytes, got {}", group.len()))
        })?;
        Ok(BitMatrix8(rows))
    }

    pub fn to_bytes(self) -> [u8; 8] {
        self.0
    }

    pub fn bit(&self, row: usize, col: usize) -> bool {
        (self.0[row] >> (7 - col)) & 1 == 1
    }

    pub fn set_bit(&mut self, row: usize, col: usize, on: bool) {
        let mask = 1u8 << (7 - col);
        if on {
            self.0[row] |= mask;
        } else {
            self.0[row] &= !mask;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|b| b.count_ones()).sum()
    }

    /// Rotates all 15 main-orientation diagonals by `amount` cells; `down`
    /// moves bits toward larger row index.
    pub fn rotate_diagonals(self, amount: u8, down: bool) -> Self {
        let source = &diagonal_tables()[down as usize][(amount % 8) as usize];
        let mut out = BitMatrix8::default();
        for (cell, &src) in source.iter().enumerate() {
            if self.bit(src as usize / 8, src as usize % 8) {
                out.set_bit(cell / 8, cell % 8, true);
            }
        }
        out
    }

    /// Rotates every row by `amount` bits toward column 0 (`left`) or away.
    pub fn rotate_rows(mut self, amount: u8, left: bool) -> Self {
        let k = u32::from(amount % 8);
        for row in &mut self.0 {
            *row = if left {
                row.rotate_left(k)
            } else {
                row.rotate_right(k)
            };
        }
        self
    }

    /// Rotates every column by `amount` cells, up (toward row 0) or down.
    pub fn rotate_cols(mut self, amount: u8, up: bool) -> Self {
        let k = usize::from(amount % 8);
        if up {
            self.0.rotate_left(k);
        } else {
            self.0.rotate_right(k);
        }
        self
    }
}

pub fn bytes_to_bitmatrix(group: &[u8]) -> Result<BitMatrix8> {
    BitMatrix8::from_bytes(group)
}

pub fn bitmatrix_to_bytes(m: BitMatrix8) -> [u8; 8] {
    m.to_bytes()
}

// tables[down][amount][dest_cell] = source cell. A diagonal of length `len`
// shifts by `amount mod len`.
fn diagonal_tables() -> &'static [[[u8; 64]; 8]; 2] {
    static TABLES: OnceLock<[[[u8; 64]; 8]; 2]> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut tables = [[[0u8; 64]; 8]; 2];
        for (down, by_amount) in tables.iter_mut().enumerate() {
            for (amount, table) in by_amount.iter_mut().enumerate() {
                for k in 0..15 {
                    let cells = diagonal_cells(8, k, Orientation::Main);
                    let len = cells.len();
                    let shift = amount % len;
                    for (pos, &cell) in cells.iter().enumerate() {
                        let from = if down == 1 {
                            (pos + len - shift) % len
                        } else {
                            (pos + shift) % len
                        };
                        table[cell] = cells[from] as u8;
                    }
                }
            }
        }
        tables
    })
}

/// Parameters of one CSDP round, sliced from a subkey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CsdpRoundParams {
    /// Row direction: left when set.
    pub p: bool,
    /// Column direction: up when set.
    pub q: bool,
    /// Diagonal direction: up when set.
    pub t: bool,
    /// Row shift before `alpha` is added.
    pub r: u8,
    /// Column shift before `beta` is added.
    pub s: u8,
    /// Diagonal shift.
    pub u: u8,
    /// Feeds the generator's hop rule; unused by the round itself.
    pub hop_salt: u8,
}

pub fn csdp_round(
    m: BitMatrix8,
    rp: &CsdpRoundParams,
    alpha: u8,
    beta: u8,
    inverse: bool,
) -> BitMatrix8 {
    let row_shift = (rp.r + alpha) % 8;
    let col_shift = (rp.s + beta) % 8;
    if inverse {
        m.rotate_cols(col_shift, !rp.q)
            .rotate_rows(row_shift, !rp.p)
            .rotate_diagonals(rp.u, rp.t)
    } else {
        m.rotate_diagonals(rp.u, !rp.t)
            .rotate_rows(row_shift, rp.p)
            .rotate_cols(col_shift, rp.q)
    }
}

fn check_group_len(sig: &ScanSignal) -> Result<()> {
    if !sig.len().is_multiple_of(GROUP_LEN) {
        return Err(Error::Dimension(format!(
            "signal length {} is not a multiple of {GROUP_LEN}",
            sig.len()
        )));
    }
    Ok(())
}

fn apply(sig: &ScanSignal, key: &ChaosKey, inverse: bool, exec: Execution) -> Result<ScanSignal> {
    check_group_len(sig)?;
    let mut gen = KeystreamGenerator::new(key)?;
    let subkeys = gen.subkeys(sig.len() / GROUP_LEN);

    let mut out = sig.clone();
    let (alpha, beta) = (key.alpha, key.beta);
    exec.for_each_chunk_mut(&mut out.bytes, GROUP_LEN, |g, group| {
        let rp = derive_round_params(subkeys[g]);
        let m = BitMatrix8(group.try_into().expect("chunk of 8"));
        group.copy_from_slice(&csdp_round(m, &rp, alpha, beta, inverse).0);
    });
    Ok(out)
}

pub fn csdp_encrypt(sig: &ScanSignal, key: &ChaosKey) -> Result<ScanSignal> {
    csdp_encrypt_with(sig, key, Execution::default())
}

pub fn csdp_decrypt(sig: &ScanSignal, key: &ChaosKey) -> Result<ScanSignal> {
    csdp_decrypt_with(sig, key, Execution::default())
}

/// One round per 8-byte group, the `g`-th group using the `g`-th subkey.
pub fn csdp_encrypt_with(sig: &ScanSignal, key: &ChaosKey, exec: Execution) -> Result<ScanSignal> {
    apply(sig, key, false, exec)
}

pub fn csdp_decrypt_with(sig: &ScanSignal, key: &ChaosKey, exec: Execution) -> Result<ScanSignal> {
    apply(sig, key, true, exec)
}
