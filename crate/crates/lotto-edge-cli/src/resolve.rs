//! Config and universe lookup.

use std::env;
use std::fs;
use std::path::Path;

use lotto_edge::builtin;
use lotto_edge::model::LotteryConfig;
use lotto_edge::risk::{estimate_universe, AssetUniverse, ReturnTable};

use crate::report::CliError;

pub const CONFIG_DIR_ENV: &str = "LOTTO_EDGE_CONFIG_DIR";

/// Resolve a lottery argument: an explicit JSON path wins, then
/// `$LOTTO_EDGE_CONFIG_DIR/<name>.json`, then the bundled configs.
pub fn resolve_config(name_or_path: &str) -> Result<LotteryConfig, CliError> {
    let as_path = Path::new(name_or_path);
    if name_or_path.ends_with(".json") || as_path.is_file() {
        let text = fs::read_to_string(as_path)
            .map_err(CliError::io(format!("reading config '{name_or_path}'")))?;
        return Ok(LotteryConfig::from_json(&text)?);
    }
    if let Ok(dir) = env::var(CONFIG_DIR_ENV) {
        let candidate = Path::new(&dir).join(format!("{name_or_path}.json"));
        if candidate.is_file() {
            let text = fs::read_to_string(&candidate).map_err(CliError::io(format!(
                "reading config '{}'",
                candidate.display()
            )))?;
            return Ok(LotteryConfig::from_json(&text)?);
        }
    }
    Ok(builtin::by_name(name_or_path)?)
}

/// Universe source for `portfolio`: a JSON fixture, a CSV of return series
/// (estimated pairwise), or the bundled table when omitted.
pub fn resolve_universe(path: Option<&str>) -> Result<(AssetUniverse, String), CliError> {
    match path {
        None => Ok((builtin::risky_universe(), "bundled".to_string())),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(CliError::io(format!("reading universe '{path}'")))?;
            let universe = if path.ends_with(".csv") {
                estimate_universe(&ReturnTable::from_csv(&text)?)?
            } else {
                AssetUniverse::from_json(&text)?
            };
            Ok((universe, path.to_string()))
        }
    }
}
