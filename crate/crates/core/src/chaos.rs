//! The four one-dimensional chaotic maps and their orbits.
//!
//! ```text
//! logistic   x' = mu * x * (1 - x)                   0 <= mu <= 4
//! tent       x' = mu_t * x        (x < 1/2)           0 < mu_t <= 2
//!            x' = mu_t * (1 - x)  (1/2 <= x)
//! quadratic  x' = x^2 + c                            -2 <= c <= 1/4
//! bernoulli  x' = 2x mod 1
//! ```
//!
//! All arithmetic is IEEE-754 binary64 with round-to-nearest, so an orbit is
//! reproducible bit for bit on any platform. The one exception is the
//! Bernoulli map inside an [`Orbit`]: doubling a binary float only shifts its
//! mantissa, so every binary64 Bernoulli orbit reaches 0 within ~1075 steps.
//! Orbits therefore run the Bernoulli map exactly on the rational lattice
//! `p / Q` with `Q = 2^64 + 11131`, a safe prime with `Q ≡ 3 (mod 8)`. Two is
//! a primitive root mod `Q`, so doubling mod `Q` has period `Q - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the four maps in the chaotic bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Logistic,
    Tent,
    Quadratic,
    Bernoulli,
}

impl MapKind {
    pub const ALL: [MapKind; 4] = [
        MapKind::Logistic,
        MapKind::Tent,
        MapKind::Quadratic,
        MapKind::Bernoulli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Logistic => "logistic",
            MapKind::Tent => "tent",
            MapKind::Quadratic => "quadratic",
            MapKind::Bernoulli => "bernoulli",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown map `{s}`"))
    }
}

/// Control parameters of the map bank. The Bernoulli map has none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    /// Logistic control parameter.
    pub mu: f64,
    /// Tent slope.
    pub mu_tent: f64,
    /// Quadratic additive constant.
    pub c: f64,
}

impl Default for MapParams {
    fn default() -> Self {
        MapParams {
            mu: 3.9,
            mu_tent: 1.75,
            c: -1.9,
        }
    }
}

impl MapParams {
    pub fn validate(&self) -> Result<()> {
        MapKind::ALL
            .into_iter()
            .try_for_each(|kind| self.validate_for(kind))
    }

    /// Checks only the parameter that `kind` actually uses.
    pub fn validate_for(&self, kind: MapKind) -> Result<()> {
        match kind {
            MapKind::Logistic => check(
                "mu",
                self.mu,
                (0.0..=4.0).contains(&self.mu),
                "0 <= mu <= 4",
            ),
            MapKind::Tent => check(
                "mu_tent",
                self.mu_tent,
                self.mu_tent > 0.0 && self.mu_tent <= 2.0,
                "0 < mu_tent <= 2",
            ),
            MapKind::Quadratic => check(
                "c",
                self.c,
                (-2.0..=0.25).contains(&self.c),
                "-2 <= c <= 0.25",
            ),
            MapKind::Bernoulli => Ok(()),
        }
    }

    /// Repelling fixed point of the quadratic map, `(1 + sqrt(1 - 4c)) / 2`.
    /// Orbits with `|x| <= x2` stay bounded.
    pub fn quadratic_escape_radius(&self) -> f64 {
        (1.0 + (1.0 - 4.0 * self.c).sqrt()) / 2.0
    }
}

fn check(name: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParamDomain {
            name,
            value,
            expected,
        })
    }
}

/// Whether `x` lies in the domain on which `kind` is iterated.
pub fn in_domain(kind: MapKind, x: f64, params: &MapParams) -> bool {
    match kind {
        MapKind::Logistic | MapKind::Tent | MapKind::Bernoulli => (0.0..=1.0).contains(&x),
        MapKind::Quadratic => x.abs() <= params.quadratic_escape_radius(),
    }
}

fn domain_text(kind: MapKind) -> &'static str {
    match kind {
        MapKind::Logistic | MapKind::Tent | MapKind::Bernoulli => "0 <= x <= 1",
        MapKind::Quadratic => "|x| <= (1 + sqrt(1 - 4c)) / 2",
    }
}

pub(crate) fn check_point(
    kind: MapKind,
    name: &'static str,
    x: f64,
    params: &MapParams,
) -> Result<()> {
    check(name, x, in_domain(kind, x, params), domain_text(kind))
}

#[inline]
fn step_unchecked(kind: MapKind, x: f64, params: &MapParams) -> f64 {
    match kind {
        MapKind::Logistic => params.mu * x * (1.0 - x),
        MapKind::Tent => {
            if x < 0.5 {
                params.mu_tent * x
            } else {
                params.mu_tent * (1.0 - x)
            }
        }
        MapKind::Quadratic => x * x + params.c,
        MapKind::Bernoulli => {
            if x < 0.5 {
                2.0 * x
            } else {
                2.0 * x - 1.0
            }
        }
    }
}

/// One application of the map to `x`.
pub fn map_step(kind: MapKind, x: f64, params: &MapParams) -> Result<f64> {
    params.validate_for(kind)?;
    check_point(kind, "x", x, params)?;
    Ok(step_unchecked(kind, x, params))
}

/// Bit extracted from an orbit point: `x >= 0.5` for the maps living on
/// `[0, 1]`, `x >= 0` for the quadratic map.
pub fn orbit_bit(kind: MapKind, x: f64) -> bool {
    match kind {
        MapKind::Quadratic => x >= 0.0,
        _ => x >= 0.5,
    }
}

/// Maps an orbit point onto `[0, 1]`.
pub fn normalize(kind: MapKind, x: f64, params: &MapParams) -> f64 {
    match kind {
        MapKind::Quadratic => {
            let r = params.quadratic_escape_radius();
            (x + r) / (2.0 * r)
        }
        _ => x,
    }
}

const BERNOULLI_MODULUS: u128 = (1u128 << 64) + 11131;
const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Real(f64),
    /// Numerator `p` of the Bernoulli point `p / Q`.
    Lattice(u128),
}

/// A running orbit of one map.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    kind: MapKind,
    params: MapParams,
    state: State,
    step_index: usize,
}

impl Orbit {
    pub fn new(kind: MapKind, seed: f64, params: MapParams) -> Result<Self> {
        params.validate_for(kind)?;
        check_point(kind, "seed", seed, &params)?;
        let state = match kind {
            // Exact: scaling by a power of two, then truncation.
            MapKind::Bernoulli => State::Lattice((seed * TWO_POW_64) as u128),
            _ => State::Real(seed),
        };
        Ok(Orbit {
            kind,
            params,
            state,
            step_index: 0,
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }

    /// Current orbit point.
    pub fn x(&self) -> f64 {
        match self.state {
            State::Real(x) => x,
            State::Lattice(p) => p as f64 / BERNOULLI_MODULUS as f64,
        }
    }

    /// Advances one step and returns the new point.
    pub fn step(&mut self) -> f64 {
        self.state = match self.state {
            State::Real(x) => State::Real(step_unchecked(self.kind, x, &self.params)),
            State::Lattice(p) => State::Lattice((p << 1) % BERNOULLI_MODULUS),
        };
        self.step_index += 1;
        self.x()
    }

    /// Advances one step, failing if the point leaves the map's domain.
    pub fn try_step(&mut self) -> Result<f64> {
        let x = self.step();
        if x.is_finite() && in_domain(self.kind, x, &self.params) {
            Ok(x)
        } else {
            Err(Error::OrbitDivergence {
                step: self.step_index,
                x,
            })
        }
    }
}

/// Points `x_{burn_in+1} ..= x_{burn_in+count}` of the orbit seeded at `seed`.
pub fn iterate_orbit(
    kind: MapKind,
    seed: f64,
    params: &MapParams,
    count: usize,
    burn_in: usize,
) -> Result<Vec<f64>> {
    let mut orbit = Orbit::new(kind, seed, *params)?;
    for _ in 0..burn_in {
        orbit.try_step()?;
    }
    (0..count).map(|_| orbit.try_step()).collect()
}
