//! Versioned JSON state files.
//!
//! ```json
//! {"schema_version":"spin-state/1","twice_j":2,
//!  "amplitudes":[[0.5,0.0],[0.0,0.7071067811865476],[-0.5,0.0]],
//!  "metadata":{"gamma":"0+1i"}}
//! ```
//!
//! Spin states list amplitudes by ascending `m = −j … +j`; two-mode states
//! (`"two-mode-state/1"`, keyed by `n_total`) by ascending `n_a = 0 … N`.
//! Numbers are written in shortest round-trip form, so a save/load cycle
//! reproduces every finite amplitude bit for bit.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schwinger::TwoModeState;
use crate::state::SpinState;
use crate::su2::HalfInteger;

pub const SPIN_SCHEMA: &str = "spin-state/1";
pub const TWO_MODE_SCHEMA: &str = "two-mode-state/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFileV1 {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_j: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_total: Option<u32>,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// A state file decoded into the matching state type.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Spin(SpinState),
    TwoMode(TwoModeState),
}

fn pairs(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|a| [a.re, a.im]).collect()
}

impl StateFileV1 {
    pub fn from_spin(state: &SpinState, metadata: BTreeMap<String, String>) -> Self {
        StateFileV1 {
            schema_version: SPIN_SCHEMA.to_owned(),
            twice_j: Some(state.j().twice()),
            n_total: None,
            amplitudes: pairs(state.amplitudes()),
            metadata,
        }
    }

    pub fn from_two_mode(state: &TwoModeState, metadata: BTreeMap<String, String>) -> Self {
        StateFileV1 {
            schema_version: TWO_MODE_SCHEMA.to_owned(),
            twice_j: None,
            n_total: Some(state.n_total()),
            amplitudes: pairs(state.amplitudes()),
            metadata,
        }
    }

    /// Validates the header and norm, then builds the state.
    pub fn decode(&self) -> Result<LoadedState> {
        if self.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::StateFile("non-finite amplitude".into()));
        }
        let amps: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let bad = |e: Error| Error::StateFile(e.to_string());
        match (self.schema_version.as_str(), self.twice_j, self.n_total) {
            (SPIN_SCHEMA, Some(twice), None) => SpinState::new(HalfInteger::from_twice(twice), amps)
                .map(LoadedState::Spin)
                .map_err(bad),
            (TWO_MODE_SCHEMA, None, Some(n)) => TwoModeState::new(n, amps)
                .map(LoadedState::TwoMode)
                .map_err(bad),
            (SPIN_SCHEMA, ..) => Err(Error::StateFile(
                "spin-state/1 requires twice_j and no n_total".into(),
            )),
            (TWO_MODE_SCHEMA, ..) => Err(Error::StateFile(
                "two-mode-state/1 requires n_total and no twice_j".into(),
            )),
            (other, ..) => Err(Error::StateFile(format!("unknown schema_version {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

pub fn save_spin(path: &Path, state: &SpinState, metadata: BTreeMap<String, String>) -> Result<()> {
    StateFileV1::from_spin(state, metadata).save(path)
}

pub fn save_two_mode(
    path: &Path,
    state: &TwoModeState,
    metadata: BTreeMap<String, String>,
) -> Result<()> {
    StateFileV1::from_two_mode(state, metadata).save(path)
}

pub fn load_state(path: &Path) -> Result<LoadedState> {
    StateFileV1::load(path)?.decode()
}
