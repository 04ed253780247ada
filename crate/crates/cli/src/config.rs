use std::path::Path;

use serde::Deserialize;

use crate::Format;

/// Defaults read from a TOML file; command-line flags take precedence.
///
/// ```toml
/// format = "text"
/// seed = 7
/// concavity_points = 2000
///
/// [grid]
/// min = 0.0
/// max = 20.0
/// n = 500
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub concavity_points: Option<usize>,
    #[serde(default)]
    pub grid: GridDefaults,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDefaults {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub n: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}
