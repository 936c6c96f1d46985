//! Static lottery rules and the per-lottery statistics derived from them.
//!
//! All money is denominated in units of the ticket price, so a `payout` of
//! 187500 on a $1 game means $187,500. Prize amounts are stored *after tax*;
//! [`apply_withholding`] is the optional preprocessing step for feeding in
//! published pre-tax prize tables. Pari-mutuel rates are likewise stored
//! post-tax.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{in_open_unit_interval, positive_finite};

/// Withholding rate applied to large US gambling prizes.
pub const DEFAULT_TAX_RATE: f64 = 0.25;
/// Prize size above which withholding kicks in, in ticket-price units.
pub const DEFAULT_WITHHOLDING_THRESHOLD: f64 = 5_000.0;

/// Ticket count below which a game no longer counts as a major lottery.
/// Small games are allowed (simulation oracles rely on them) but flagged.
pub const MAJOR_LOTTERY_MIN_TICKETS: u64 = 500;

/// A prize of fixed size, independent of ticket sales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPrize {
    /// What the winner actually receives, in ticket-price units.
    #[serde(rename = "payout")]
    pub payout_after_tax: f64,
    /// Number of distinct tickets that win this prize.
    pub ways: u64,
}

/// A prize pool equal to a fixed fraction of net sales, split among all
/// winners of its tier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PariMutuelPool {
    /// Fraction of net sales allocated to this pool (post-tax).
    pub rate: f64,
    /// Number of distinct tickets that share this pool.
    pub ways: u64,
}

/// The fixed structure of one lottery: everything that does not change from
/// drawing to drawing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LotteryConfig {
    name: String,
    /// Number of distinct possible tickets.
    t: u64,
    fixed: Vec<FixedPrize>,
    pari: Vec<PariMutuelPool>,
}

/// Per-lottery constants derived from the prize structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LotteryStats {
    /// Ticket cost less the expected winnings from fixed prizes
    /// (the statistic printed as `f`).
    pub net_of_fixed: f64,
    /// `net_of_fixed` less the total pari-mutuel rates (printed as `F`);
    /// roughly the share of sales going to the jackpot and overhead.
    pub net_of_all_prizes: f64,
    /// Jackpot size below which a ticket is certainly a bad bet (printed as
    /// `J0`); equals `net_of_all_prizes * t`.
    pub jackpot_cutoff: f64,
}

/// One drawing: what varies between drawings of the same lottery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrawingParams {
    /// Total ticket sales in ticket-price units. May be non-integral; the
    /// sharing model extends cleanly to real sales figures.
    pub sales: f64,
    /// After-tax lump-sum value of the jackpot, in ticket-price units. This
    /// is far smaller than the advertised pre-tax annuity total.
    pub jackpot: f64,
}

impl DrawingParams {
    pub fn new(sales: f64, jackpot: f64) -> Result<Self> {
        if !positive_finite(sales) {
            return Err(Error::Domain(format!(
                "sales must be positive, got {sales}"
            )));
        }
        if !positive_finite(jackpot) {
            return Err(Error::Domain(format!(
                "jackpot must be positive, got {jackpot}"
            )));
        }
        Ok(Self { sales, jackpot })
    }
}

impl LotteryConfig {
    pub fn new(
        name: impl Into<String>,
        t: u64,
        fixed: Vec<FixedPrize>,
        pari: Vec<PariMutuelPool>,
    ) -> Result<Self> {
        let config = Self {
            name: name.into(),
            t,
            fixed,
            pari,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidConfig("ticket count t must be >= 1".into()));
        }
        for prize in &self.fixed {
            if !positive_finite(prize.payout_after_tax) {
                return Err(Error::InvalidConfig(format!(
                    "fixed prize payout must be positive, got {}",
                    prize.payout_after_tax
                )));
            }
            if prize.ways == 0 {
                return Err(Error::InvalidConfig("fixed prize ways must be >= 1".into()));
            }
        }
        for pool in &self.pari {
            if !in_open_unit_interval(pool.rate) {
                return Err(Error::InvalidConfig(format!(
                    "pari-mutuel rate must lie in (0, 1), got {}",
                    pool.rate
                )));
            }
            if pool.ways == 0 {
                return Err(Error::InvalidConfig("pari-mutuel ways must be >= 1".into()));
            }
        }
        let winning_ways: u64 = self
            .fixed
            .iter()
            .map(|p| p.ways)
            .chain(self.pari.iter().map(|p| p.ways))
            .try_fold(0u64, |acc, w| acc.checked_add(w))
            .ok_or_else(|| Error::InvalidConfig("prize ways overflow".into()))?;
        if winning_ways.checked_add(1).is_none() || winning_ways + 1 > self.t {
            return Err(Error::InvalidConfig(format!(
                "winning tickets ({} + 1 jackpot) exceed distinct tickets ({})",
                winning_ways, self.t
            )));
        }
        // Rejects structures that pay out more than the ticket price in
        // expectation before the jackpot; also catches rate sums >= f.
        self.stats()?;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of distinct possible tickets.
    pub fn ticket_count(&self) -> u64 {
        self.t
    }

    pub fn fixed_prizes(&self) -> &[FixedPrize] {
        &self.fixed
    }

    pub fn pari_mutuel_pools(&self) -> &[PariMutuelPool] {
        &self.pari
    }

    /// Probability that one ticket wins the jackpot.
    pub fn jackpot_probability(&self) -> f64 {
        1.0 / self.t as f64
    }

    /// Probability that one ticket lands in the given pari-mutuel tier.
    pub fn pool_probability(&self, pool: &PariMutuelPool) -> f64 {
        pool.ways as f64 / self.t as f64
    }

    /// Whether the game is large enough for the bounding-curve analysis.
    /// Tiny test lotteries are legal but fall outside those results.
    pub fn is_major(&self) -> bool {
        self.t >= MAJOR_LOTTERY_MIN_TICKETS
    }

    /// Derived statistics; see [`derive_stats`].
    pub fn stats(&self) -> Result<LotteryStats> {
        derive_stats(self)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("config JSON: {e}")))
    }
}

// Deserialization funnels through `new` so JSON configs get the same
// validation as programmatic ones.
impl<'de> Deserialize<'de> for LotteryConfig {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            t: u64,
            #[serde(default)]
            fixed: Vec<FixedPrize>,
            #[serde(default)]
            pari: Vec<PariMutuelPool>,
        }
        let raw = Raw::deserialize(deserializer)?;
        LotteryConfig::new(raw.name, raw.t, raw.fixed, raw.pari).map_err(serde::de::Error::custom)
    }
}

/// Compute the per-lottery statistics from the prize structure:
/// the fixed-prize retention `f`, the all-prize retention `F`, and the
/// jackpot cutoff `J0 = F * t`.
///
/// Rejects structures where `f <= 0` or `F <= 0`; those pay out more than
/// the ticket price in expectation before the jackpot, which signals a
/// malformed configuration.
pub fn derive_stats(config: &LotteryConfig) -> Result<LotteryStats> {
    let t = config.t as f64;
    let expected_fixed: f64 = config
        .fixed
        .iter()
        .map(|p| p.payout_after_tax * p.ways as f64 / t)
        .sum();
    let net_of_fixed = 1.0 - expected_fixed;
    let rate_sum: f64 = config.pari.iter().map(|p| p.rate).sum();
    let net_of_all_prizes = net_of_fixed - rate_sum;

    if net_of_fixed <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "fixed prizes exceed ticket price in expectation (f = {net_of_fixed})"
        )));
    }
    if net_of_all_prizes <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "prize structure leaves nothing for the jackpot (F = {net_of_all_prizes})"
        )));
    }

    Ok(LotteryStats {
        net_of_fixed,
        net_of_all_prizes,
        jackpot_cutoff: net_of_all_prizes * t,
    })
}

/// Reduce a published prize by withholding tax if it exceeds the reporting
/// threshold; smaller prizes pass through untouched.
///
/// Panics if `tax_rate` is outside `[0, 1)` or `threshold` is negative.
pub fn apply_withholding(pre_tax_payout: f64, tax_rate: f64, threshold: f64) -> f64 {
    assert!(
        (0.0..1.0).contains(&tax_rate),
        "tax rate must lie in [0, 1), got {tax_rate}"
    );
    assert!(
        threshold >= 0.0,
        "threshold must be nonnegative, got {threshold}"
    );
    if pre_tax_payout > threshold {
        pre_tax_payout * (1.0 - tax_rate)
    } else {
        pre_tax_payout
    }
}
