//! Text key files.
//!
//! ```text
//! # comment
//! mu = 3.8999999999999999e0
//! seed_logistic = 7.5000000000000000e-1
//! maps = logistic,bernoulli,tent,quadratic
//! ...
//! ```
//!
//! Every field must appear exactly once; unknown names are rejected. Reals
//! are written with 17 significant digits so they parse back to the same
//! binary64 value.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::chaos::MapKind;
use crate::error::{Error, Result};
use crate::keystream::{ChaosKey, HopConfig, Seeds};
use crate::pipeline::CipherMode;
use crate::MapParams;

pub const FIELDS: [&str; 16] = [
    "mu",
    "mu_tent",
    "c",
    "seed_logistic",
    "seed_tent",
    "seed_quadratic",
    "seed_bernoulli",
    "maps",
    "orbits",
    "points",
    "offset",
    "burn_in",
    "alpha",
    "beta",
    "scan",
    "mode",
];

/// A key plus the cipher mode it is meant to drive.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyFile {
    pub key: ChaosKey,
    pub mode: CipherMode,
}

impl Default for KeyFile {
    fn default() -> Self {
        KeyFile {
            key: ChaosKey::default(),
            mode: CipherMode::DiffusionCsdp,
        }
    }
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

impl KeyFile {
    pub fn to_text(&self) -> String {
        let k = &self.key;
        let maps: Vec<&str> = k.hop.map_order.iter().map(|m| m.name()).collect();
        let entries = [
            ("mu", real(k.params.mu)),
            ("mu_tent", real(k.params.mu_tent)),
            ("c", real(k.params.c)),
            ("seed_logistic", real(k.seeds.logistic)),
            ("seed_tent", real(k.seeds.tent)),
            ("seed_quadratic", real(k.seeds.quadratic)),
            ("seed_bernoulli", real(k.seeds.bernoulli)),
            ("maps", maps.join(",")),
            ("orbits", k.hop.orbits_per_map.to_string()),
            ("points", k.hop.points_per_orbit.to_string()),
            ("offset", real(k.hop.seed_offset)),
            ("burn_in", k.hop.burn_in.to_string()),
            ("alpha", k.alpha.to_string()),
            ("beta", k.beta.to_string()),
            ("scan", k.scan.to_string()),
            ("mode", self.mode.to_string()),
        ];
        let mut out = String::from("# chaoscrypt key file\n");
        for (name, value) in entries {
            out.push_str(&format!("{name} = {value}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values: HashMap<&'static str, (usize, &str)> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, value) = line.split_once('=').ok_or_else(|| Error::KeyFile {
                line: line_no,
                detail: "expected `name = value`".into(),
            })?;
            let name = name.trim();
            let field = FIELDS
                .iter()
                .find(|&&f| f == name)
                .ok_or_else(|| Error::KeyFile {
                    line: line_no,
                    detail: format!("unknown field `{name}`"),
                })?;
            if values.insert(field, (line_no, value.trim())).is_some() {
                return Err(Error::KeyFile {
                    line: line_no,
                    detail: format!("duplicate field `{name}`"),
                });
            }
        }

        let lookup = Lookup(&values);
        let key = ChaosKey {
            params: MapParams {
                mu: lookup.parse("mu")?,
                mu_tent: lookup.parse("mu_tent")?,
                c: lookup.parse("c")?,
            },
            seeds: Seeds {
                logistic: lookup.parse("seed_logistic")?,
                tent: lookup.parse("seed_tent")?,
                quadratic: lookup.parse("seed_quadratic")?,
                bernoulli: lookup.parse("seed_bernoulli")?,
            },
            hop: HopConfig {
                map_order: lookup.with("maps", |v| {
                    v.split(',').map(str::parse::<MapKind>).collect()
                })?,
                orbits_per_map: lookup.parse("orbits")?,
                points_per_orbit: lookup.parse("points")?,
                seed_offset: lookup.parse("offset")?,
                burn_in: lookup.parse("burn_in")?,
            },
            alpha: lookup.parse("alpha")?,
            beta: lookup.parse("beta")?,
            scan: lookup.parse("scan")?,
        };
        let mode = lookup.parse("mode")?;
        key.validate()?;
        Ok(KeyFile { key, mode })
    }
}

struct Lookup<'a>(&'a HashMap<&'static str, (usize, &'a str)>);

impl Lookup<'_> {
    fn with<T, E: std::fmt::Display>(
        &self,
        name: &'static str,
        f: impl FnOnce(&str) -> std::result::Result<T, E>,
    ) -> Result<T> {
        let &(line, value) = self.0.get(name).ok_or(Error::MissingField(name))?;
        f(value).map_err(|e| Error::KeyFile {
            line,
            detail: format!("bad value for `{name}`: {e}"),
        })
    }

    fn parse<T>(&self, name: &'static str) -> Result<T>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        self.with(name, str::parse::<T>)
    }
}

pub fn read_keyfile(path: impl AsRef<Path>) -> Result<KeyFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    KeyFile::parse(&text)
}

pub fn write_keyfile(key: &KeyFile, path: impl AsRef<Path>) -> Result<()> {
    key.key.validate()?;
    super::write_atomic(path.as_ref(), key.to_text().as_bytes())
}
