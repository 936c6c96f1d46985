//! Exact expected rate of return for a single drawing.
//!
//! With every other ticket chosen uniformly at random, the expected return
//! on one ticket decomposes into the ticket cost net of fixed prizes, one
//! term per pari-mutuel pool, and the jackpot term:
//!
//! ```text
//! eRoR = -f + sum_i r_i * (1 - (1 - p_i)^N) + J * s(1/t, N)
//! ```
//!
//! where `s(p, N) = (1 - (1 - p)^N) / N` is the sharing factor: the
//! probability-weighted expected share of a pot you win against `N - 1`
//! random rivals, folded into closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DrawingParams, LotteryConfig, LotteryStats};
use crate::numeric::{in_open_unit_interval, one_minus_pow_one_minus, positive_finite};

/// Expected rate of return on one ticket, split by source.
///
/// All entries are dimensionless rates in ticket-price units; `total` is the
/// exact sum of the other fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ERoRBreakdown {
    /// `-f`: the ticket cost less expected fixed-prize winnings.
    pub cost_and_fixed: f64,
    /// One entry per pari-mutuel pool: `r_i * (1 - (1 - p_i)^N)`.
    pub pari_terms: Vec<f64>,
    /// `J * s(1/t, N)`: expected winnings from the (shared) jackpot.
    pub jackpot_term: f64,
    /// The expected rate of return for the drawing.
    pub total: f64,
}

/// Expected share `s(p, N) = (1 - (1 - p)^N) / N` of a pot won with
/// per-ticket probability `p` when `N` tickets are in play.
///
/// `N` may be any positive real. The evaluation stays accurate for `p` near
/// zero and `N` in the hundreds of millions, where the naive form loses
/// every significant digit.
pub fn share_factor(p: f64, n: f64) -> Result<f64> {
    if !in_open_unit_interval(p) {
        return Err(Error::Domain(format!(
            "share probability must lie in (0, 1), got {p}"
        )));
    }
    if !positive_finite(n) {
        return Err(Error::Domain(format!(
            "ticket count must be positive, got {n}"
        )));
    }
    Ok(one_minus_pow_one_minus(p, n) / n)
}

/// Expected rate of return for one drawing, with the other `N - 1` tickets
/// assumed uniformly random.
pub fn expected_ror(config: &LotteryConfig, drawing: &DrawingParams) -> Result<ERoRBreakdown> {
    expected_ror_with_sharing_sales(config, drawing, drawing.sales)
}

/// Upper bound on the expected rate of return for the unpopular-numbers
/// strategy: only the `quick_pick_fraction` of tickets picked randomly can
/// collide with yours, so every sharing term sees `N' = fraction * N`.
///
/// The reduction applies to the pari-mutuel terms as well as the jackpot
/// term; both arise from the same sharing model. The fixed-prize component
/// does not depend on sales and is unchanged.
pub fn unpopular_adjusted_ror(
    config: &LotteryConfig,
    drawing: &DrawingParams,
    quick_pick_fraction: f64,
) -> Result<ERoRBreakdown> {
    if !(quick_pick_fraction > 0.0 && quick_pick_fraction <= 1.0) {
        return Err(Error::Domain(format!(
            "quick-pick fraction must lie in (0, 1], got {quick_pick_fraction}"
        )));
    }
    expected_ror_with_sharing_sales(config, drawing, quick_pick_fraction * drawing.sales)
}

fn expected_ror_with_sharing_sales(
    config: &LotteryConfig,
    drawing: &DrawingParams,
    sharing_sales: f64,
) -> Result<ERoRBreakdown> {
    let stats = config.stats()?;
    if !positive_finite(sharing_sales) {
        return Err(Error::Domain(format!(
            "effective sales must be positive, got {sharing_sales}"
        )));
    }

    let cost_and_fixed = -stats.net_of_fixed;
    let pari_terms: Vec<f64> = config
        .pari_mutuel_pools()
        .iter()
        .map(|pool| {
            pool.rate * one_minus_pow_one_minus(config.pool_probability(pool), sharing_sales)
        })
        .collect();
    let jackpot_term = drawing.jackpot * share_factor(config.jackpot_probability(), sharing_sales)?;

    let total = cost_and_fixed + pari_terms.iter().sum::<f64>() + jackpot_term;
    Ok(ERoRBreakdown {
        cost_and_fixed,
        pari_terms,
        jackpot_term,
        total,
    })
}

/// True when the jackpot sits strictly below the cutoff, which already
/// guarantees a negative expected rate of return regardless of sales.
pub fn jackpot_cutoff_test(stats: &LotteryStats, drawing: &DrawingParams) -> bool {
    drawing.jackpot < stats.jackpot_cutoff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::model::{FixedPrize, PariMutuelPool};
    use crate::sim::share_factor_sum;
    use proptest::prelude::*;

    #[test]
    fn share_factor_of_one_ticket_is_p() {
        assert!((share_factor(0.5, 1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn share_factor_matches_binomial_sum_oracle() {
        // Frozen from the exhaustive sum: sum_{w>=1} (1/w) C(9, w-1) 0.1^w 0.9^{10-w}.
        let oracle = share_factor_sum(0.1, 10).unwrap();
        assert!((oracle - 0.06513215599).abs() < 1e-10);
        assert!((share_factor(0.1, 10.0).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn share_factor_at_national_game_scale() {
        // 212 million tickets against 1-in-175,711,536 odds: the whole-pot
        // capture probability N*s = 1 - (1 - 1/t)^N.
        let t = 175_711_536.0;
        let s = share_factor(1.0 / t, 212e6).unwrap();
        assert!((212e6 * s - 0.7007).abs() < 1e-3);
    }

    #[test]
    fn share_factor_limits() {
        // x -> 0: s(p, x) climbs to -ln(1 - p); x -> inf: it vanishes while
        // x * s(p, x) saturates at 1.
        for p in [0.5f64, 0.01, 1e-6] {
            let ceiling = -(-p).ln_1p();
            let near_zero = share_factor(p, 1e-9).unwrap();
            assert!(near_zero < ceiling);
            assert!((near_zero / ceiling - 1.0).abs() < 1e-8, "p = {p}");
            let far = share_factor(p, 1e9).unwrap();
            assert!(far < 2e-9, "p = {p}: {far}");
            assert!(1e9 * far <= 1.0);
        }
    }

    #[test]
    fn share_factor_domain_errors() {
        assert!(share_factor(0.0, 10.0).is_err());
        assert!(share_factor(1.0, 10.0).is_err());
        assert!(share_factor(-0.1, 10.0).is_err());
        assert!(share_factor(0.5, 0.0).is_err());
        assert!(share_factor(0.5, -1.0).is_err());
    }

    #[test]
    fn published_drawing_returns() {
        // Four historical drawings with known expected rates of return.
        let cases = [
            (builtin::lotto_texas(), 4.2e6, 33.8e6, 0.30),
            (builtin::mega_millions(), 212e6, 175e6, -0.26),
            (builtin::powerball(), 157e6, 133e6, -0.26),
            (builtin::powerball(), 161e6, 123.3e6, -0.31),
        ];
        for (config, n, j, expected) in cases {
            let drawing = DrawingParams::new(n, j).unwrap();
            let ror = expected_ror(&config, &drawing).unwrap();
            assert!(
                (ror.total - expected).abs() < 0.02,
                "{}: got {:.4}, expected {:.2}",
                config.name(),
                ror.total,
                expected
            );
        }
    }

    #[test]
    fn breakdown_sums_to_total() {
        let config = builtin::lotto_texas();
        let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
        let ror = expected_ror(&config, &drawing).unwrap();
        let sum = ror.cost_and_fixed + ror.pari_terms.iter().sum::<f64>() + ror.jackpot_term;
        assert_eq!(ror.total, sum);
        assert_eq!(ror.pari_terms.len(), 2);
        let stats = config.stats().unwrap();
        assert_eq!(ror.cost_and_fixed, -stats.net_of_fixed);
        for (term, pool) in ror.pari_terms.iter().zip(config.pari_mutuel_pools()) {
            assert!(*term >= 0.0 && *term <= pool.rate);
        }
        assert!(ror.jackpot_term > 0.0);
        assert!(ror.jackpot_term <= drawing.jackpot / config.ticket_count() as f64);
    }

    #[test]
    fn single_ticket_jackpot_only_collapses() {
        // With one ticket sold and no pari pools, eRoR = -f + J/t.
        let config = LotteryConfig::new("toy", 1000, vec![], vec![]).unwrap();
        let drawing = DrawingParams::new(1.0, 500.0).unwrap();
        let ror = expected_ror(&config, &drawing).unwrap();
        assert!((ror.total - (-1.0 + 500.0 / 1000.0)).abs() < 1e-12);
    }

    #[test]
    fn cutoff_test_examples() {
        let mm = builtin::mega_millions().stats().unwrap();
        assert!(jackpot_cutoff_test(
            &mm,
            &DrawingParams::new(1.0, 100e6).unwrap()
        ));

        let tx = builtin::lotto_texas().stats().unwrap();
        assert!(!jackpot_cutoff_test(
            &tx,
            &DrawingParams::new(1.0, 33.8e6).unwrap()
        ));

        // Boundary: exactly at the cutoff is not strictly below it.
        let at_cutoff = DrawingParams::new(1.0, tx.jackpot_cutoff).unwrap();
        assert!(!jackpot_cutoff_test(&tx, &at_cutoff));
    }

    #[test]
    fn unpopular_identity_at_full_fraction() {
        let config = builtin::lotto_texas();
        let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
        let plain = expected_ror(&config, &drawing).unwrap();
        let adjusted = unpopular_adjusted_ror(&config, &drawing, 1.0).unwrap();
        assert_eq!(plain, adjusted);
    }

    #[test]
    fn unpopular_numbers_strictly_improve_sharing() {
        let config = builtin::lotto_texas();
        let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
        let plain = expected_ror(&config, &drawing).unwrap();
        let adjusted = unpopular_adjusted_ror(&config, &drawing, 0.7).unwrap();
        assert!(adjusted.total > plain.total);
        assert!(adjusted.jackpot_term > plain.jackpot_term);

        let toy = LotteryConfig::new("toy", 1000, vec![], vec![]).unwrap();
        let toy_drawing = DrawingParams::new(1000.0, 1500.0).unwrap();
        let toy_plain = expected_ror(&toy, &toy_drawing).unwrap();
        let toy_adj = unpopular_adjusted_ror(&toy, &toy_drawing, 0.7).unwrap();
        assert!(toy_adj.total > toy_plain.total);
    }

    #[test]
    fn unpopular_fraction_domain() {
        let config = builtin::lotto_texas();
        let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
        assert!(unpopular_adjusted_ror(&config, &drawing, 0.0).is_err());
        assert!(unpopular_adjusted_ror(&config, &drawing, 1.5).is_err());
    }

    #[test]
    fn eror_affine_and_increasing_in_jackpot() {
        let config = builtin::nj_pick6();
        let n = 5e6;
        let totals: Vec<f64> = [10e6, 20e6, 30e6]
            .iter()
            .map(|&j| {
                expected_ror(&config, &DrawingParams::new(n, j).unwrap())
                    .unwrap()
                    .total
            })
            .collect();
        assert!(totals[0] < totals[1] && totals[1] < totals[2]);
        // Affinity: equal jackpot steps give equal return steps.
        let d1 = totals[1] - totals[0];
        let d2 = totals[2] - totals[1];
        assert!((d1 - d2).abs() < 1e-12 * d1.abs());
    }

    #[test]
    fn upper_bound_chain_on_grid() {
        // eRoR <= -F + J*s(1/t, N) <= -F + J/t for sales of at least one
        // ticket (the sharing factor is below 1/t only once N >= 1).
        let config = builtin::lotto_texas();
        let stats = config.stats().unwrap();
        let t = config.ticket_count() as f64;
        for &n in &[1.0, 10.0, 1e3, 1e6, 4.2e6, 1e8] {
            for &j in &[1e6, 23.5e6, 33.8e6, 100e6] {
                let drawing = DrawingParams::new(n, j).unwrap();
                let total = expected_ror(&config, &drawing).unwrap().total;
                let s = share_factor(1.0 / t, n).unwrap();
                let mid = -stats.net_of_all_prizes + j * s;
                let top = -stats.net_of_all_prizes + j / t;
                assert!(total <= mid + 1e-12 * mid.abs().max(1.0));
                assert!(mid <= top + 1e-12 * top.abs().max(1.0));
            }
        }
    }

    #[test]
    fn log_bound_lemma_on_dense_grid() {
        // 1 - 1/c - ln(c) < 0 throughout (0, 1).
        for i in 1..10_000 {
            let c = i as f64 / 10_000.0;
            assert!(1.0 - 1.0 / c - c.ln() < 0.0, "violated at c = {c}");
        }
    }

    #[test]
    fn one_minus_recip_power_lemma() {
        // t -> (1 - 1/t)^t increases toward 1/e and clears 0.36 from t = 500.
        let mut prev = 0.0;
        let mut t = 2.0_f64;
        while t <= 1e9 {
            let g = crate::numeric::pow_one_minus(1.0 / t, t);
            assert!(g > prev, "not increasing at t = {t}");
            assert!(g < 1.0 / std::f64::consts::E, "limit violated at t = {t}");
            prev = g;
            t *= 1.37;
        }
        let at_500 = crate::numeric::pow_one_minus(1.0 / 500.0, 500.0);
        assert!(at_500 > 0.36);
    }

    proptest! {
        // s(p, x) decreases in x; x * s(p, x) increases from 0 toward 1.
        #[test]
        fn sharing_monotonicity(
            p_log in -9.0f64..-0.05,
            x_log in -6.0f64..8.0,
        ) {
            let p = 10f64.powf(p_log);
            let x0 = 10f64.powf(x_log);
            let x1 = x0 * 1.7;
            let s0 = share_factor(p, x0).unwrap();
            let s1 = share_factor(p, x1).unwrap();
            prop_assert!(s1 < s0);
            // The capture probability x*s saturates to exactly 1.0 in
            // doubles once the exponent passes ~36; strictness is only
            // meaningful short of that.
            if x1 * -(-p).ln_1p() < 30.0 {
                let cap0 = x0 * s0;
                let cap1 = x1 * s1;
                prop_assert!(cap0 < cap1);
                prop_assert!(cap1 < 1.0);
            }
            // Limits: bounded above by -ln(1 - p), below by 0.
            prop_assert!(s0 < -(-p).ln_1p());
            prop_assert!(s1 > 0.0);
        }

        #[test]
        fn breakdown_identity_on_random_drawings(
            n in 1.0f64..1e8,
            j in 1e3f64..1e9,
        ) {
            let config = builtin::nj_pick6();
            let drawing = DrawingParams::new(n, j).unwrap();
            let ror = expected_ror(&config, &drawing).unwrap();
            let sum = ror.cost_and_fixed
                + ror.pari_terms.iter().sum::<f64>()
                + ror.jackpot_term;
            prop_assert_eq!(ror.total, sum);
        }

        // Adding any prize strictly lowers the corresponding retention rate.
        #[test]
        fn stats_monotone_under_prize_growth(
            payout in 0.5f64..100.0,
            ways in 1u64..1000,
            rate in 1e-4f64..0.05,
        ) {
            let base = LotteryConfig::new("b", 1_000_000, vec![], vec![]).unwrap();
            let s0 = base.stats().unwrap();
            let with_fixed = LotteryConfig::new(
                "f",
                1_000_000,
                vec![FixedPrize { payout_after_tax: payout, ways }],
                vec![],
            ).unwrap();
            let s1 = with_fixed.stats().unwrap();
            prop_assert!(s1.net_of_fixed < s0.net_of_fixed);
            let with_pool = LotteryConfig::new(
                "p",
                1_000_000,
                vec![],
                vec![PariMutuelPool { rate, ways }],
            ).unwrap();
            let s2 = with_pool.stats().unwrap();
            prop_assert!(s2.net_of_all_prizes < s0.net_of_all_prizes);
            prop_assert_eq!(s2.net_of_fixed, s0.net_of_fixed);
        }
    }
}
