//! How likely is a big jackpot to keep growing?
//!
//! Once a jackpot is at or past its cutoff, sales have historically at least
//! matched the jackpot, so each drawing fails to award it with probability
//! at most `(1 - 1/t)^J0`. Chaining `k` rollovers bounds the chance the
//! jackpot survives that long, and a per-rollover growth ratio (historically
//! never much above 1.27) says how many rollovers a target multiple needs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::LotteryConfig;
use crate::numeric::{positive_finite, pow_one_minus};

/// Largest jackpot growth ratio observed between consecutive drawings of a
/// large-jackpot game; the default for [`rollovers_to_target`].
pub const DEFAULT_GROWTH_RATIO: f64 = 1.27;

/// Combined rollover outlook for one lottery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RolloverForecast {
    /// Rollovers needed for the jackpot to reach the target multiple.
    pub rollovers: u32,
    /// Upper bound on the probability of surviving that many rollovers.
    pub survival_probability_bound: f64,
    /// Per-rollover jackpot multiplier assumed.
    pub growth_ratio: f64,
}

/// Upper bound `(1 - 1/t)^(k * J0)` on the probability that a jackpot at or
/// above its cutoff rolls over `k` consecutive times, assuming sales keep
/// pace with the jackpot. Returns 1 for `k = 0`.
///
/// The bound is kept exact rather than rounded down to its `e^(-kF)` limit.
pub fn rollover_survival_bound(config: &LotteryConfig, k: u32) -> Result<f64> {
    let stats = config.stats()?;
    Ok(pow_one_minus(
        config.jackpot_probability(),
        k as f64 * stats.jackpot_cutoff,
    ))
}

/// Smallest `k` with `current_ratio * growth_ratio^k >= target_ratio`, where
/// the ratios are jackpot sizes relative to the cutoff.
pub fn rollovers_to_target(
    current_ratio: f64,
    target_ratio: f64,
    growth_ratio: f64,
) -> Result<u32> {
    if !positive_finite(current_ratio) {
        return Err(Error::Domain(format!(
            "current ratio must be positive, got {current_ratio}"
        )));
    }
    if target_ratio <= current_ratio || !target_ratio.is_finite() {
        return Err(Error::Domain(format!(
            "target ratio must exceed current ratio, got {target_ratio} <= {current_ratio}"
        )));
    }
    if growth_ratio <= 1.0 || !growth_ratio.is_finite() {
        return Err(Error::Domain(format!(
            "growth ratio must exceed 1, got {growth_ratio}"
        )));
    }

    let mut ratio = current_ratio;
    let mut k = 0u32;
    while ratio < target_ratio {
        ratio *= growth_ratio;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Domain(
                "target unreachable within a million rollovers".into(),
            ));
        }
    }
    Ok(k)
}

/// Rollovers to reach the target multiple, and the survival bound for that
/// many rollovers.
pub fn forecast(
    config: &LotteryConfig,
    current_ratio: f64,
    target_ratio: f64,
    growth_ratio: f64,
) -> Result<RolloverForecast> {
    let rollovers = rollovers_to_target(current_ratio, target_ratio, growth_ratio)?;
    let survival_probability_bound = rollover_survival_bound(config, rollovers)?;
    Ok(RolloverForecast {
        rollovers,
        survival_probability_bound,
        growth_ratio,
    })
}
