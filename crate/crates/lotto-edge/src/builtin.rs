//! Bundled lottery configurations and the historical asset-return fixture.
//!
//! The four game configs transcribe the published prize tables for the 2005-2008
//! era rules: $1 tickets, large prizes reduced 25% for withholding, state rule
//! variants ignored. They are embedded so the toolkit works with no data files
//! on disk; the CLI can override them via `LOTTO_EDGE_CONFIG_DIR`.

use crate::error::{Error, Result};
use crate::model::LotteryConfig;
use crate::risk::AssetUniverse;

pub const MEGA_MILLIONS_JSON: &str = include_str!("../configs/mega-millions.json");
pub const POWERBALL_JSON: &str = include_str!("../configs/powerball.json");
pub const LOTTO_TEXAS_JSON: &str = include_str!("../configs/lotto-texas.json");
pub const NJ_PICK6_JSON: &str = include_str!("../configs/nj-pick6.json");
/// Weekly return table (% and %^2) for five typical risky assets, Jan 1972 -
/// Jun 2007 (AGG from Sep 2003). One mean in the published source is
/// inconsistent with the portfolio weights derived from it; this fixture
/// carries the value the weights imply (REIT 0.236).
pub const UNIVERSE_JSON: &str = include_str!("../configs/universe.json");

fn parse(json: &'static str) -> LotteryConfig {
    LotteryConfig::from_json(json).expect("bundled config must parse")
}

pub fn mega_millions() -> LotteryConfig {
    parse(MEGA_MILLIONS_JSON)
}

pub fn powerball() -> LotteryConfig {
    parse(POWERBALL_JSON)
}

pub fn lotto_texas() -> LotteryConfig {
    parse(LOTTO_TEXAS_JSON)
}

pub fn nj_pick6() -> LotteryConfig {
    parse(NJ_PICK6_JSON)
}

/// All bundled configs.
pub fn all() -> Vec<LotteryConfig> {
    vec![mega_millions(), powerball(), lotto_texas(), nj_pick6()]
}

/// Look up a bundled config by its name.
pub fn by_name(name: &str) -> Result<LotteryConfig> {
    match name {
        "mega-millions" => Ok(mega_millions()),
        "powerball" => Ok(powerball()),
        "lotto-texas" => Ok(lotto_texas()),
        "nj-pick6" => Ok(nj_pick6()),
        other => Err(Error::Parse(format!(
            "unknown bundled lottery '{other}' (bundled: mega-millions, powerball, \
             lotto-texas, nj-pick6)"
        ))),
    }
}

/// The bundled five-asset return universe.
pub fn risky_universe() -> AssetUniverse {
    AssetUniverse::from_json(UNIVERSE_JSON).expect("bundled universe must parse")
}
