//! Game specification files and built-in presets.
//!
//! A game file is TOML:
//!
//! ```toml
//! scheme = "mw"                 # classical | eisert | mw
//! preset = "game28"             # or an explicit bimatrix, not both
//! # bimatrix = [a1, a2, b1, b2, g1, g2, s1, s2]
//!
//! [initial_state]
//! b2 = 0.5                      # mw
//! pairing = "aligned"           # mw: aligned | crossed
//! # gamma = 1.5707963267948966  # eisert
//! ```
//!
//! The bimatrix lists `(row, column)` payoffs for CC, CD, DC, DD in order.

use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use qess_core::{Pairing, PayoffBimatrix};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Classical,
    Eisert,
    Mw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Prisoner's Dilemma (3,3) (0,5) / (5,0) (1,1)
    Pd,
    /// Battle of the Sexes with (alpha, beta, gamma) = (3, 2, 1)
    Bos,
    /// (1,1) (1,2) / (2,1) (3,2)
    Game28,
    /// (2,1) (1,0) / (1,0) (1,0)
    Game29,
}

impl Preset {
    pub fn matrix(self) -> PayoffBimatrix {
        match self {
            Preset::Pd => PayoffBimatrix::prisoners_dilemma(),
            Preset::Bos => PayoffBimatrix::battle_of_sexes(3.0, 2.0, 1.0)
                .expect("3 > 2 > 1 is a valid ordering"),
            Preset::Game28 => PayoffBimatrix::ess_lost_under_entanglement(),
            Preset::Game29 => PayoffBimatrix::ess_gained_under_entanglement(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PairingSpec {
    Aligned,
    Crossed,
}

impl From<PairingSpec> for Pairing {
    fn from(p: PairingSpec) -> Self {
        match p {
            PairingSpec::Aligned => Pairing::Aligned,
            PairingSpec::Crossed => Pairing::Crossed,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialStateSpec {
    pub b2: Option<f64>,
    pub pairing: Option<PairingSpec>,
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpecFile {
    pub scheme: Option<Scheme>,
    pub preset: Option<Preset>,
    pub bimatrix: Option<[f64; 8]>,
    pub initial_state: Option<InitialStateSpec>,
}

impl GameSpecFile {
    /// A file carrying the preset's entries as an explicit bimatrix.
    pub fn from_preset(preset: Preset) -> Self {
        let c = preset.matrix();
        let [(a1, a2), (b1, b2), (g1, g2), (s1, s2)] = *c.cells();
        Self {
            bimatrix: Some([a1, a2, b1, b2, g1, g2, s1, s2]),
            ..Self::default()
        }
    }

    pub fn parse(text: &str, origin: &Path) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::GameFile {
            path: origin.to_path_buf(),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn matrix(&self) -> CliResult<PayoffBimatrix> {
        match (self.preset, self.bimatrix) {
            (Some(p), None) => Ok(p.matrix()),
            (None, Some(e)) => Ok(PayoffBimatrix::new([
                (e[0], e[1]),
                (e[2], e[3]),
                (e[4], e[5]),
                (e[6], e[7]),
            ])?),
            (Some(_), Some(_)) => Err(CliError::usage(
                "game file sets both `preset` and `bimatrix`; choose one",
            )),
            (None, None) => Err(CliError::usage(
                "game file needs a `preset` or a `bimatrix`",
            )),
        }
    }

    pub fn initial_state(&self) -> InitialStateSpec {
        self.initial_state.clone().unwrap_or_default()
    }
}
