//! TOML experiment configuration. Every field is optional; command-line
//! flags override whatever the file sets. Index sets are 1-based.
//!
//! ```toml
//! out_dir = "results"
//!
//! [main]
//! kind = "bec"
//! eps = 0.1
//!
//! [wiretap]
//! kind = "bec"
//! eps = 0.4
//!
//! [simulate]
//! n = 256
//! blocks = 4
//! rho_r = 0.25
//! rho_w = 0.125
//! trials = 1000
//! seed = 1
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::channels::{line_of_offset, ChannelProfile};
use crate::error::{Error, Result};
use crate::polarize::Method;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub out_dir: Option<PathBuf>,
    pub main: Option<ChannelProfile>,
    pub wiretap: Option<ChannelProfile>,
    #[serde(default)]
    pub polarize: PolarizeSection,
    #[serde(default)]
    pub capacity: CapacitySection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub oracle: OracleSection,
    /// Raw text, for line numbers in later validation errors.
    #[serde(skip)]
    pub source: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarizeSection {
    /// Erasure probability of each leaf.
    pub eps: Option<Vec<f64>>,
    /// Block length for a homogeneous `[main]` profile or a random profile.
    pub n: Option<usize>,
    /// Draw `n` uniform erasure probabilities from this seed.
    pub random_bec_seed: Option<u64>,
    pub method: Option<Method>,
    pub mu: Option<usize>,
    pub mc_trials: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacitySection {
    pub rho_r: Option<f64>,
    pub rho_w: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    pub n: Option<usize>,
    pub blocks: Option<usize>,
    pub rho_r: Option<f64>,
    pub rho_w: Option<f64>,
    pub beta: Option<f64>,
    pub method: Option<Method>,
    pub mu: Option<usize>,
    pub mc_trials: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub preshared_seed: Option<u64>,
    pub adversary_seed: Option<u64>,
    /// Explicit per-block read sets (1-based); overrides the random draw.
    pub read_sets: Option<Vec<Vec<usize>>>,
    pub write_sets: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub leaves: Option<Vec<ChannelProfile>>,
}

impl ExperimentConfig {
    pub fn parse(src: &str) -> Result<Self> {
        let mut cfg: Self = toml::from_str(src).map_err(|e| Error::Config {
            line: e.span().map(|s| line_of_offset(src, s.start)),
            msg: e.message().to_string(),
        })?;
        cfg.source = Some(src.to_string());
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn src(&self) -> Option<&str> {
        self.source.as_deref()
    }
}
