use std::path::Path;

use serde::Deserialize;

/// Defaults read from `--config FILE`; any flag given on the command line wins.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub bound: Option<u64>,
    pub hecke_primes: Option<Vec<i64>>,
    pub threads: Option<usize>,
    pub format: Option<String>,
    pub conditions: Option<Vec<String>>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
