//! Multi-map orbit-hopping key generation.
//!
//! A [`ChaosKey`] selects `m` maps from the bank and fixes their order. Each
//! chosen map runs `s` orbits; orbit `j` is seeded at `x0 + j * offset`. The
//! generator draws `n` consecutive points from one orbit, then moves to the
//! next orbit of the same map. Once all `s` orbits have been used it hops:
//! the next map position is `(H ^ salt(H)) mod m`, where `H` starts as a
//! 20-bit digest of the key's real parameters, is XORed with every subkey
//! drawn, and `salt(H)` is its bits 12..=19. A change to any seed therefore
//! moves the hop schedule from the first hop on, even when the map it
//! belongs to is visited late or absorbs the change in rounding.
//!
//! Every draw consumes exactly one orbit point, whether the caller asks for a
//! bit or a subkey, so the stream position is unambiguous.

use std::collections::HashSet;

use crate::chaos::{self, MapKind, MapParams, Orbit};
use crate::csdp::CsdpRoundParams;
use crate::error::{Error, Result};
use crate::lattice::ScanPattern;

pub const SUBKEY_BITS: u32 = 20;
pub const SUBKEY_MODULUS: u32 = 1 << SUBKEY_BITS;

/// Initial condition of each map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seeds {
    pub logistic: f64,
    pub tent: f64,
    pub quadratic: f64,
    pub bernoulli: f64,
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds {
            logistic: 0.75,
            tent: 0.35,
            quadratic: 0.5,
            bernoulli: 0.5,
        }
    }
}

impl Seeds {
    pub fn get(&self, kind: MapKind) -> f64 {
        match kind {
            MapKind::Logistic => self.logistic,
            MapKind::Tent => self.tent,
            MapKind::Quadratic => self.quadratic,
            MapKind::Bernoulli => self.bernoulli,
        }
    }

    pub fn get_mut(&mut self, kind: MapKind) -> &mut f64 {
        match kind {
            MapKind::Logistic => &mut self.logistic,
            MapKind::Tent => &mut self.tent,
            MapKind::Quadratic => &mut self.quadratic,
            MapKind::Bernoulli => &mut self.bernoulli,
        }
    }
}

/// Shape of the hopping schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct HopConfig {
    /// The chosen maps, in hopping order (`m` = its length).
    pub map_order: Vec<MapKind>,
    /// Orbits per map (`s`).
    pub orbits_per_map: usize,
    /// Points drawn from an orbit before moving on (`n`).
    pub points_per_orbit: usize,
    /// Seed increment between successive orbits of one map.
    pub seed_offset: f64,
    /// Transient iterations discarded from every orbit.
    pub burn_in: usize,
}

impl Default for HopConfig {
    fn default() -> Self {
        HopConfig {
            map_order: vec![
                MapKind::Logistic,
                MapKind::Bernoulli,
                MapKind::Tent,
                MapKind::Quadratic,
            ],
            orbits_per_map: 4,
            points_per_orbit: 64,
            seed_offset: 1e-6,
            burn_in: 200,
        }
    }
}

/// The full secret key.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosKey {
    pub params: MapParams,
    pub seeds: Seeds,
    pub hop: HopConfig,
    /// Added to every CSDP row shift.
    pub alpha: u8,
    /// Added to every CSDP column shift.
    pub beta: u8,
    pub scan: ScanPattern,
}

impl Default for ChaosKey {
    fn default() -> Self {
        ChaosKey {
            params: MapParams::default(),
            seeds: Seeds::default(),
            hop: HopConfig::default(),
            alpha: 2,
            beta: 2,
            scan: ScanPattern::Zigzag,
        }
    }
}

impl ChaosKey {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        for kind in MapKind::ALL {
            chaos::check_point(kind, seed_name(kind), self.seeds.get(kind), &self.params)?;
        }

        let hop = &self.hop;
        let m = hop.map_order.len();
        if !(1..=4).contains(&m) {
            return Err(Error::InvalidKey(format!("expected 1 to 4 maps, got {m}")));
        }
        let distinct: HashSet<_> = hop.map_order.iter().collect();
        if distinct.len() != m {
            return Err(Error::InvalidKey("map order lists a map twice".into()));
        }
        if hop.orbits_per_map == 0 || hop.points_per_orbit == 0 {
            return Err(Error::InvalidKey(
                "orbits and points per orbit must be at least 1".into(),
            ));
        }
        let min_seed = hop
            .map_order
            .iter()
            .map(|&k| self.seeds.get(k).abs())
            .fold(f64::INFINITY, f64::min);
        if !(hop.seed_offset > 0.0 && hop.seed_offset < min_seed) {
            return Err(Error::InvalidKey(format!(
                "seed offset {} must be positive and below the smallest seed magnitude {min_seed}",
                hop.seed_offset
            )));
        }
        if self.alpha > 7 || self.beta > 7 {
            return Err(Error::InvalidKey(format!(
                "alpha and beta must lie in 0..=7 (got {}, {})",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// Seeds of the `s` orbits of `kind`, each checked against the map domain.
    pub fn orbit_seeds(&self, kind: MapKind) -> Result<Vec<f64>> {
        let base = self.seeds.get(kind);
        (0..self.hop.orbits_per_map)
            .map(|j| {
                let seed = base + j as f64 * self.hop.seed_offset;
                if chaos::in_domain(kind, seed, &self.params) {
                    Ok(seed)
                } else {
                    Err(Error::InvalidKey(format!(
                        "orbit {j} of the {kind} map starts at {seed}, outside the map domain"
                    )))
                }
            })
            .collect()
    }
}

/// 20-bit digest of the bit patterns of every real in the key.
pub(crate) fn key_digest(key: &ChaosKey) -> u32 {
    let reals = [
        key.seeds.logistic,
        key.seeds.tent,
        key.seeds.quadratic,
        key.seeds.bernoulli,
        key.params.mu,
        key.params.mu_tent,
        key.params.c,
        key.hop.seed_offset,
    ];
    let mut h = 0u64;
    for x in reals {
        // splitmix64 finalizer
        let mut z = (h ^ x.to_bits()).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    (h % u64::from(SUBKEY_MODULUS)) as u32
}

pub(crate) fn seed_name(kind: MapKind) -> &'static str {
    match kind {
        MapKind::Logistic => "seed_logistic",
        MapKind::Tent => "seed_tent",
        MapKind::Quadratic => "seed_quadratic",
        MapKind::Bernoulli => "seed_bernoulli",
    }
}

/// `floor(norm(x) * 2^20) mod 2^20`.
pub fn quantize(kind: MapKind, x: f64, params: &MapParams) -> u32 {
    let scaled = (chaos::normalize(kind, x, params) * SUBKEY_MODULUS as f64).floor();
    (scaled as u64 % SUBKEY_MODULUS as u64) as u32
}

/// Slices a subkey into CSDP round parameters (bit 0 is the LSB):
/// `r = K[0..=2]`, `s = K[3..=5]`, `u = K[6..=8]`, `p = K[9]`, `q = K[10]`,
/// `t = K[11]`, `hop_salt = K[12..=19]`.
pub fn derive_round_params(subkey: u32) -> CsdpRoundParams {
    let k = subkey % SUBKEY_MODULUS;
    CsdpRoundParams {
        r: (k & 0b111) as u8,
        s: ((k >> 3) & 0b111) as u8,
        u: ((k >> 6) & 0b111) as u8,
        p: (k >> 9) & 1 == 1,
        q: (k >> 10) & 1 == 1,
        t: (k >> 11) & 1 == 1,
        hop_salt: ((k >> 12) & 0xFF) as u8,
    }
}

/// One point drawn from the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub map: MapKind,
    pub x: f64,
    pub subkey: u32,
}

impl Draw {
    pub fn bit(&self) -> bool {
        chaos::orbit_bit(self.map, self.x)
    }
}

/// Stateful source of control bits and subkeys.
///
/// The state after any number of draws depends only on the key and the draw
/// count, so the decrypting side replays the stream by building a fresh
/// generator from the same key.
#[derive(Debug, Clone)]
pub struct KeystreamGenerator {
    params: MapParams,
    order: Vec<MapKind>,
    bank: Vec<Vec<Orbit>>,
    orbits_per_map: usize,
    points_per_orbit: usize,
    map_pos: usize,
    orbit_idx: usize,
    points_in_orbit: usize,
    hop_word: u32,
    drawn: u64,
}

impl KeystreamGenerator {
    pub fn new(key: &ChaosKey) -> Result<Self> {
        key.validate()?;
        let hop = &key.hop;
        let bank = hop
            .map_order
            .iter()
            .map(|&kind| {
                key.orbit_seeds(kind)?
                    .into_iter()
                    .map(|seed| {
                        let mut orbit = Orbit::new(kind, seed, key.params)?;
                        for _ in 0..hop.burn_in {
                            orbit.try_step()?;
                        }
                        Ok(orbit)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(KeystreamGenerator {
            params: key.params,
            order: hop.map_order.clone(),
            bank,
            orbits_per_map: hop.orbits_per_map,
            points_per_orbit: hop.points_per_orbit,
            map_pos: 0,
            orbit_idx: 0,
            points_in_orbit: 0,
            hop_word: key_digest(key),
            drawn: 0,
        })
    }

    /// Map the next draw will come from.
    pub fn current_map(&self) -> MapKind {
        self.order[self.map_pos]
    }

    pub fn current_orbit(&self) -> usize {
        self.orbit_idx
    }

    /// Number of points drawn so far.
    pub fn draws(&self) -> u64 {
        self.drawn
    }

    pub fn draw(&mut self) -> Draw {
        let map = self.order[self.map_pos];
        let x = self.bank[self.map_pos][self.orbit_idx].step();
        let subkey = quantize(map, x, &self.params);

        self.drawn += 1;
        self.hop_word ^= subkey;
        self.points_in_orbit += 1;
        if self.points_in_orbit == self.points_per_orbit {
            self.points_in_orbit = 0;
            self.orbit_idx += 1;
            if self.orbit_idx == self.orbits_per_map {
                self.orbit_idx = 0;
                let salt = derive_round_params(self.hop_word).hop_salt as u32;
                self.map_pos = ((self.hop_word ^ salt) as usize) % self.order.len();
            }
        }
        Draw { map, x, subkey }
    }

    pub fn next_subkey(&mut self) -> u32 {
        self.draw().subkey
    }

    pub fn next_bit(&mut self) -> bool {
        self.draw().bit()
    }

    pub fn subkeys(&mut self, count: usize) -> Vec<u32> {
        (0..count).map(|_| self.next_subkey()).collect()
    }

    pub fn bits(&mut self, count: usize) -> Vec<bool> {
        (0..count).map(|_| self.next_bit()).collect()
    }
}
