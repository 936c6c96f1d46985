//! Brute-force and Monte-Carlo oracles for small lotteries.
//!
//! These exist to validate the closed-form analysis by independent routes:
//! [`share_factor_sum`] and [`exhaustive_eror`] evaluate the defining
//! binomial sums term by term with no closed form, and
//! [`simulate_drawings`] plays out actual drawings with a seeded generator.
//! They are shipped as a public module so downstream users can run the same
//! cross-checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DrawingParams, LotteryConfig};
use crate::numeric::{in_open_unit_interval, ln_factorial_table, KahanSum};

/// Identifier of the pseudo-random algorithm behind [`simulate_drawings`],
/// recorded in every [`SimResult`] so runs are auditable.
pub const RNG_ALGORITHM: &str = "chacha8(seed_from_u64)";

/// Exhaustive-enumeration guards: beyond these the definitional sums are
/// pointless to evaluate directly.
pub const MAX_EXHAUSTIVE_SALES: f64 = 5_000.0;
pub const MAX_EXHAUSTIVE_TICKETS: u64 = 1_000_000;

/// Aggregate of a Monte-Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub n_trials: u64,
    /// Sample mean of the realized rate of return.
    pub mean_ror: f64,
    /// Sample variance (n-1 denominator) of the realized rate of return.
    pub var_ror: f64,
    /// `sqrt(var_ror / n_trials)`.
    pub std_error: f64,
    /// Generator identifier; see [`RNG_ALGORITHM`].
    pub rng: String,
}

/// The sharing factor evaluated as its raw binomial sum
/// `sum_{w>=1} (1/w) C(n-1, w-1) p^w (1-p)^{n-w}`, with every term taken.
///
/// Terms are evaluated in log space, so far-tail underflow to zero is
/// harmless. O(n) time; intended for oracle duty, not production sizes.
pub fn share_factor_sum(p: f64, n: u32) -> Result<f64> {
    if !in_open_unit_interval(p) {
        return Err(Error::Domain(format!(
            "share probability must lie in (0, 1), got {p}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("ticket count must be at least 1".into()));
    }
    let ln_fact = ln_factorial_table(n as usize);
    Ok(share_sum_with_table(p, n, &ln_fact, |w| 1.0 / w as f64))
}

/// `sum_{w>=1} weight(w) C(n-1, w-1) p^w (1-p)^{n-w}` via the log-space table.
fn share_sum_with_table(p: f64, n: u32, ln_fact: &[f64], weight: impl Fn(u32) -> f64) -> f64 {
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let n_us = n as usize;
    let mut acc = KahanSum::default();
    for w in 1..=n_us {
        // ln C(n-1, w-1) = ln (n-1)! - ln (w-1)! - ln (n-w)!
        let ln_choose = ln_fact[n_us - 1] - ln_fact[w - 1] - ln_fact[n_us - w];
        let ln_term = ln_choose + w as f64 * ln_p + (n_us - w) as f64 * ln_q;
        acc.add(weight(w as u32) * ln_term.exp());
    }
    acc.value()
}

/// Expected rate of return computed from the definitional sums, summing the
/// binomial sharing distribution over every possible co-winner count.
///
/// Requires integral sales with `N <= 5000` and `t <= 10^6`.
pub fn exhaustive_eror(config: &LotteryConfig, drawing: &DrawingParams) -> Result<f64> {
    let stats = config.stats()?;
    if drawing.sales.fract() != 0.0 {
        return Err(Error::SizeGuard(format!(
            "exhaustive evaluation needs integral sales, got {}",
            drawing.sales
        )));
    }
    if drawing.sales > MAX_EXHAUSTIVE_SALES {
        return Err(Error::SizeGuard(format!(
            "exhaustive evaluation capped at N <= {MAX_EXHAUSTIVE_SALES}, got {}",
            drawing.sales
        )));
    }
    if config.ticket_count() > MAX_EXHAUSTIVE_TICKETS {
        return Err(Error::SizeGuard(format!(
            "exhaustive evaluation capped at t <= {MAX_EXHAUSTIVE_TICKETS}, got {}",
            config.ticket_count()
        )));
    }

    let n = drawing.sales as u32;
    let ln_fact = ln_factorial_table(n as usize);
    let mut total = -stats.net_of_fixed;
    for pool in config.pari_mutuel_pools() {
        let p = config.pool_probability(pool);
        let s = share_sum_with_table(p, n, &ln_fact, |w| 1.0 / w as f64);
        total += pool.rate * drawing.sales * s;
    }
    let s_jackpot = share_sum_with_table(config.jackpot_probability(), n, &ln_fact, |w| {
        1.0 / w as f64
    });
    total += drawing.jackpot * s_jackpot;
    Ok(total)
}

/// Outcome tiers for one simulated ticket.
enum Tier {
    Jackpot,
    Fixed(usize),
    Pari(usize),
    Nothing,
}

/// Monte-Carlo estimate of the rate of return: each trial fixes your ticket,
/// draws the winning numbers implicitly by sampling your prize tier, then
/// samples how many of the other `N - 1` uniformly random tickets share it.
///
/// Sales are rounded to the nearest whole ticket for trial purposes.
/// Deterministic for a fixed `(config, drawing, n_trials, seed)`.
pub fn simulate_drawings(
    config: &LotteryConfig,
    drawing: &DrawingParams,
    n_trials: u64,
    seed: u64,
) -> Result<SimResult> {
    if n_trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    config.stats()?;
    let n = drawing.sales.round().max(1.0);
    let others = n as u64 - 1;
    let t = config.ticket_count() as f64;

    // Cumulative tier probabilities for your own ticket.
    let mut tiers: Vec<(f64, Tier)> = Vec::with_capacity(2 + config.fixed_prizes().len());
    let mut cum = 1.0 / t;
    tiers.push((cum, Tier::Jackpot));
    for (i, prize) in config.fixed_prizes().iter().enumerate() {
        cum += prize.ways as f64 / t;
        tiers.push((cum, Tier::Fixed(i)));
    }
    for (i, pool) in config.pari_mutuel_pools().iter().enumerate() {
        cum += pool.ways as f64 / t;
        tiers.push((cum, Tier::Pari(i)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford accumulation; order-independent up to rounding and stable for
    // the enormous spreads a jackpot produces.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for trial in 0..n_trials {
        let u: f64 = rng.gen();
        let tier = tiers
            .iter()
            .find(|(c, _)| u < *c)
            .map(|(_, tier)| tier)
            .unwrap_or(&Tier::Nothing);
        let winnings = match tier {
            Tier::Jackpot => {
                let rivals = sample_binomial(&mut rng, others, 1.0 / t);
                drawing.jackpot / (1.0 + rivals as f64)
            }
            Tier::Fixed(i) => config.fixed_prizes()[*i].payout_after_tax,
            Tier::Pari(i) => {
                let pool = &config.pari_mutuel_pools()[*i];
                let rivals = sample_binomial(&mut rng, others, config.pool_probability(pool));
                pool.rate * drawing.sales / (1.0 + rivals as f64)
            }
            Tier::Nothing => 0.0,
        };
        let ror = winnings - 1.0;
        let delta = ror - mean;
        mean += delta / (trial + 1) as f64;
        m2 += delta * (ror - mean);
    }

    let var = if n_trials > 1 {
        m2 / (n_trials - 1) as f64
    } else {
        0.0
    };
    Ok(SimResult {
        n_trials,
        mean_ror: mean,
        var_ror: var,
        std_error: (var / n_trials as f64).sqrt(),
        rng: RNG_ALGORITHM.to_string(),
    })
}

fn sample_binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 {
        return 0;
    }
    Binomial::new(n, p)
        .expect("valid binomial parameters")
        .sample(rng)
}
