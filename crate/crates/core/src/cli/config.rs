//! Run configuration: defaults, JSON file loading and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use crate::channel::{PipelineOptions, Theta1Policy};
use crate::gaussian::OccupationConvention;
use crate::spacetime::{BodyModel, DeltaMode, OrbitDirection};

/// Largest squeezing accepted on the command line.
pub const MAX_SQUEEZING: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DeltaModeName {
    Exact,
    #[default]
    Perturbative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NbarName {
    #[default]
    Physical,
    Verbatim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Theta1Name {
    #[default]
    Unit,
    #[serde(alias = "same_as_theta2_at_h0")]
    Matched,
}

/// Everything a run needs. Every field has a default, so `{}` is a valid
/// config file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mass_geom: f64,
    pub kerr_a: f64,
    pub omega_geom: f64,
    pub surface_radius: f64,
    /// `+1` co-rotating, `-1` counter-rotating.
    pub epsilon: i64,
    pub omega2: f64,
    pub sigma: f64,
    pub s: f64,
    pub h_m: f64,
    pub delta_mode: DeltaModeName,
    pub nbar_convention: NbarName,
    pub theta1_policy: Theta1Name,
    pub out: Option<PathBuf>,
    pub digits: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let earth = BodyModel::earth();
        Self {
            mass_geom: earth.mass_geom,
            kerr_a: earth.kerr_a,
            omega_geom: earth.omega_geom,
            surface_radius: earth.surface_radius,
            epsilon: 1,
            omega2: 1.0,
            sigma: 1.0,
            s: 1.0,
            h_m: 0.0,
            delta_mode: DeltaModeName::default(),
            nbar_convention: NbarName::default(),
            theta1_policy: Theta1Name::default(),
            out: None,
            digits: 12,
        }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, source } => {
                write!(f, "cannot read {}: {source}", path.display())
            }
            // serde_json reports "... at line L column C"
            ConfigError::Parse { path, source } => write!(f, "{}: {source}", path.display()),
            ConfigError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ConfigError {}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_config(&text).map_err(|source| ConfigError::Parse {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_config(text: &str) -> Result<RunConfig, serde_json::Error> {
    serde_json::from_str(text)
}

impl RunConfig {
    pub fn body(&self) -> BodyModel {
        BodyModel {
            mass_geom: self.mass_geom,
            kerr_a: self.kerr_a,
            omega_geom: self.omega_geom,
            surface_radius: self.surface_radius,
            direction: OrbitDirection::from_sign(self.epsilon).unwrap_or_default(),
        }
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            delta_mode: match self.delta_mode {
                DeltaModeName::Exact => DeltaMode::Exact,
                DeltaModeName::Perturbative => DeltaMode::Perturbative,
            },
            nbar_convention: match self.nbar_convention {
                NbarName::Physical => OccupationConvention::Physical,
                NbarName::Verbatim => OccupationConvention::Verbatim,
            },
            theta1_policy: match self.theta1_policy {
                Theta1Name::Unit => Theta1Policy::Unit,
                Theta1Name::Matched => Theta1Policy::MatchedAtSurface,
            },
        }
    }

    /// Checks everything that can be rejected before any physics runs.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if OrbitDirection::from_sign(self.epsilon).is_none() {
            return bad(format!("epsilon must be +1 or -1, got {}", self.epsilon));
        }
        if !(self.s.is_finite() && (0.0..=MAX_SQUEEZING).contains(&self.s)) {
            return bad(format!(
                "squeezing s must lie in [0, {MAX_SQUEEZING}], got {}",
                self.s
            ));
        }
        if !(self.h_m.is_finite() && self.h_m >= 0.0) {
            return bad(format!("height must be non-negative, got {} m", self.h_m));
        }
        for (name, v) in [("omega2", self.omega2), ("sigma", self.sigma)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(1..=17).contains(&self.digits) {
            return bad(format!("digits must lie in 1..=17, got {}", self.digits));
        }
        self.body()
            .validate()
            .or_else(|e| bad(format!("invalid body constants: {e}")))
    }
}
