use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

use crate::table::Format;

/// Values read from `--config`; flags and `THREEGAP_*` variables win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub bits: Option<u32>,
    pub digits: Option<usize>,
    pub format: Option<Format>,
    pub max_index: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c: FileConfig = toml::from_str("seed = 7\ndigits = 4\nformat = \"json\"").unwrap();
        assert_eq!((c.seed, c.digits, c.format), (Some(7), Some(4), Some(Format::Json)));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("sed = 7").is_err());
    }
}
