//! Break-even analysis in normalized coordinates.
//!
//! Drawings are placed in the plane `x = N/J` (sales relative to jackpot)
//! and `y = J/J0` (jackpot relative to its cutoff). In these coordinates
//! each lottery has a break-even curve `y = l(x)` on `(0, 1/F)`: expected
//! return is positive strictly above it, negative strictly below, and
//! always negative for `x >= 1/F`.
//!
//! For any major lottery that keeps at least 80% of sales away from
//! non-jackpot prizes (`F >= 0.8`, `t >= 500`), the break-even curve is
//! sandwiched between two universal level curves:
//!
//! ```text
//! U: -1   + (1 - 0.45^(x y)) / x = 0      above it => positive return
//! L: -0.8 + (1 - 0.36^(x y)) / x = 0      below/right of it => negative
//! ```
//!
//! Those bounds cost one exponential to check and classify most drawings
//! without tracing the exact curve; two axis-aligned rectangles carved out
//! of the regions give even blunter rules of thumb.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DrawingParams, LotteryConfig, LotteryStats, MAJOR_LOTTERY_MIN_TICKETS};
use crate::numeric::{one_minus_pow_one_minus, positive_finite};

/// Base of the upper bounding curve U.
pub const UPPER_BOUND_BASE: f64 = 0.45;
/// Base of the lower bounding curve L.
pub const LOWER_BOUND_BASE: f64 = 0.36;
/// Retention rate below which the bounding-curve results do not apply.
pub const MIN_RETENTION_FOR_BOUNDS: f64 = 0.8;

/// Small-sales rule: `N < 0.2 J` and `J > 1.4 J0` guarantee positive return.
pub const SMALL_SALES_MAX_X: f64 = 0.2;
pub const SMALL_SALES_MIN_Y: f64 = 1.4;
/// Large-sales rule: `N > 1.12 J` and `J < 2 J0` guarantee negative return.
pub const LARGE_SALES_MIN_X: f64 = 1.12;
pub const LARGE_SALES_MAX_Y: f64 = 2.0;

/// Residuals this close to zero count as "on" a bounding curve; the
/// classifier then stays inconclusive rather than claiming a sign.
pub const BOUNDARY_BAND: f64 = 1e-12;

/// Relative tolerance (in y) of the bisected break-even curve.
pub const CURVE_REL_TOL: f64 = 1e-9;

/// A drawing in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedDrawing {
    /// Ticket sales divided by the jackpot, `N / J`.
    pub x: f64,
    /// Jackpot divided by the jackpot cutoff, `J / J0`.
    pub y: f64,
}

impl NormalizedDrawing {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !positive_finite(x) || !positive_finite(y) {
            return Err(Error::Domain(format!(
                "normalized coordinates must be positive, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn from_drawing(drawing: &DrawingParams, stats: &LotteryStats) -> Self {
        Self {
            x: drawing.sales / drawing.jackpot,
            y: drawing.jackpot / stats.jackpot_cutoff,
        }
    }
}

/// Sign verdict for a drawing's expected rate of return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetVerdict {
    Positive,
    Negative,
    Inconclusive,
}

impl std::fmt::Display for BetVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BetVerdict::Positive => "POSITIVE",
            BetVerdict::Negative => "NEGATIVE",
            BetVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Which decision rule produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// Jackpot below its cutoff (`y < 1`).
    Cutoff,
    /// Strictly above the upper bounding curve U.
    AboveUpperBound,
    /// Strictly below or right of the lower bounding curve L.
    BelowLowerBound,
    /// Compared against the lottery's own break-even curve.
    ExactCurve,
    /// Inside the small-ticket-sales rectangle.
    SmallSalesRect,
    /// Inside the large-ticket-sales rectangle.
    LargeSalesRect,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rule::Cutoff => "CUTOFF",
            Rule::AboveUpperBound => "ABOVE_U",
            Rule::BelowLowerBound => "BELOW_L",
            Rule::ExactCurve => "EXACT_CURVE",
            Rule::SmallSalesRect => "SMALL_SALES_RECT",
            Rule::LargeSalesRect => "LARGE_SALES_RECT",
        })
    }
}

/// A drawing's classification: the verdict, the rule that fired (none when
/// inconclusive), and where the drawing sits in the normalized plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetClassification {
    pub verdict: BetVerdict,
    pub rule: Option<Rule>,
    pub coords: NormalizedDrawing,
}

/// Residual of the upper bounding curve at a point; positive means the
/// point lies above U.
pub fn upper_bound_residual(coords: NormalizedDrawing) -> f64 {
    -1.0 + (1.0 - UPPER_BOUND_BASE.powf(coords.x * coords.y)) / coords.x
}

/// Residual of the lower bounding curve at a point; negative means the
/// point lies below or to the right of L.
pub fn lower_bound_residual(coords: NormalizedDrawing) -> f64 {
    -MIN_RETENTION_FOR_BOUNDS + (1.0 - LOWER_BOUND_BASE.powf(coords.x * coords.y)) / coords.x
}

/// Height of the upper bounding curve U at `x`; infinite for `x >= 1`,
/// where no point lies above U.
pub fn upper_bound_y(x: f64) -> f64 {
    if x >= 1.0 {
        f64::INFINITY
    } else {
        (1.0 - x).ln() / (x * UPPER_BOUND_BASE.ln())
    }
}

/// Height of the lower bounding curve L at `x`; infinite for `x >= 1.25`.
pub fn lower_bound_y(x: f64) -> f64 {
    if x >= 1.0 / MIN_RETENTION_FOR_BOUNDS {
        f64::INFINITY
    } else {
        (1.0 - MIN_RETENTION_FOR_BOUNDS * x).ln() / (x * LOWER_BOUND_BASE.ln())
    }
}

fn check_bound_hypotheses(retention: f64, tickets: f64) -> Result<()> {
    if retention < MIN_RETENTION_FOR_BOUNDS {
        return Err(Error::HypothesesNotMet(format!(
            "bounding curves need F >= {MIN_RETENTION_FOR_BOUNDS}, got {retention:.4}"
        )));
    }
    // Half-ticket slack absorbs rounding when the count is recovered as J0/F.
    if tickets < MAJOR_LOTTERY_MIN_TICKETS as f64 - 0.5 {
        return Err(Error::HypothesesNotMet(format!(
            "bounding curves need at least {MAJOR_LOTTERY_MIN_TICKETS} distinct tickets, \
             got {tickets:.0}"
        )));
    }
    Ok(())
}

/// Classify a drawing by the universal bounding curves alone.
///
/// Refuses lotteries outside the hypotheses (`F >= 0.8`, `t >= 500`).
/// Points within [`BOUNDARY_BAND`] of a curve are treated as on it and left
/// inconclusive, as is the whole strip between the curves.
pub fn general_bound_classify(
    config: &LotteryConfig,
    coords: NormalizedDrawing,
) -> Result<BetClassification> {
    let stats = config.stats()?;
    check_bound_hypotheses(stats.net_of_all_prizes, config.ticket_count() as f64)?;
    Ok(classify_by_bounds(coords))
}

fn classify_by_bounds(coords: NormalizedDrawing) -> BetClassification {
    if upper_bound_residual(coords) > BOUNDARY_BAND {
        return BetClassification {
            verdict: BetVerdict::Positive,
            rule: Some(Rule::AboveUpperBound),
            coords,
        };
    }
    if coords.y < 1.0 {
        return BetClassification {
            verdict: BetVerdict::Negative,
            rule: Some(Rule::Cutoff),
            coords,
        };
    }
    if lower_bound_residual(coords) < -BOUNDARY_BAND {
        return BetClassification {
            verdict: BetVerdict::Negative,
            rule: Some(Rule::BelowLowerBound),
            coords,
        };
    }
    BetClassification {
        verdict: BetVerdict::Inconclusive,
        rule: None,
        coords,
    }
}

/// Small-ticket-sales rule: true guarantees a positive expected return.
/// The corner (0.2, 1.4) sits on U, so the open rectangle lies above it.
pub fn small_sales_rule(drawing: &DrawingParams, stats: &LotteryStats) -> Result<bool> {
    check_bound_hypotheses(
        stats.net_of_all_prizes,
        stats.jackpot_cutoff / stats.net_of_all_prizes,
    )?;
    Ok(drawing.sales < SMALL_SALES_MAX_X * drawing.jackpot
        && drawing.jackpot > SMALL_SALES_MIN_Y * stats.jackpot_cutoff)
}

/// Large-ticket-sales rule: true guarantees a negative expected return.
/// The corner (1.12, 2) sits on L, so the rectangle lies below/right of it.
pub fn large_sales_rule(drawing: &DrawingParams, stats: &LotteryStats) -> Result<bool> {
    check_bound_hypotheses(
        stats.net_of_all_prizes,
        stats.jackpot_cutoff / stats.net_of_all_prizes,
    )?;
    Ok(drawing.sales > LARGE_SALES_MIN_X * drawing.jackpot
        && drawing.jackpot < LARGE_SALES_MAX_Y * stats.jackpot_cutoff)
}

/// Expected rate of return at normalized coordinates: substitute
/// `J = y J0` and `N = x y J0` into the drawing formula.
pub fn eror_at_coords(config: &LotteryConfig, stats: &LotteryStats, x: f64, y: f64) -> f64 {
    let sales = x * y * stats.jackpot_cutoff;
    let mut total = -stats.net_of_fixed;
    for pool in config.pari_mutuel_pools() {
        total += pool.rate * one_minus_pow_one_minus(config.pool_probability(pool), sales);
    }
    total + one_minus_pow_one_minus(config.jackpot_probability(), sales) / x
}

/// Height `y = l(x)` of the lottery's break-even curve, found by bisection.
///
/// The return at fixed `x` rises strictly with `y` from `-f` toward
/// `-F + 1/x`, so for `x` in `(0, 1/F)` there is exactly one zero crossing;
/// bisection brackets it and tightens to [`CURVE_REL_TOL`] relative in `y`.
pub fn breakeven_curve(config: &LotteryConfig, x: f64) -> Result<f64> {
    let stats = config.stats()?;
    curve_height(config, &stats, x)
}

fn curve_height(config: &LotteryConfig, stats: &LotteryStats, x: f64) -> Result<f64> {
    let limit = 1.0 / stats.net_of_all_prizes;
    if !positive_finite(x) || x >= limit {
        return Err(Error::CurveDomain { x, limit });
    }

    let mut hi = 1.0;
    while eror_at_coords(config, stats, x, hi) < 0.0 {
        hi *= 2.0;
        // Within rounding distance of x = 1/F the ceiling -F + 1/x drowns
        // in noise and the crossing can exceed representable heights.
        if hi > 1e18 {
            return Err(Error::CurveDomain { x, limit });
        }
    }
    let mut lo = 0.0;
    while hi - lo > CURVE_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if eror_at_coords(config, stats, x, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Classify a drawing against the lottery's own break-even curve. Total:
/// every drawing gets a sign. Sitting exactly on the curve counts as
/// negative -- zero expected return is not a good bet.
pub fn exact_curve_classify(
    config: &LotteryConfig,
    drawing: &DrawingParams,
) -> Result<BetClassification> {
    let stats = config.stats()?;
    let coords = NormalizedDrawing::from_drawing(drawing, &stats);
    let limit = 1.0 / stats.net_of_all_prizes;
    if coords.x >= limit {
        return Ok(BetClassification {
            verdict: BetVerdict::Negative,
            rule: Some(Rule::ExactCurve),
            coords,
        });
    }
    let curve_y = curve_height(config, &stats, coords.x)?;
    let verdict = if coords.y > curve_y {
        BetVerdict::Positive
    } else {
        BetVerdict::Negative
    };
    Ok(BetClassification {
        verdict,
        rule: Some(Rule::ExactCurve),
        coords,
    })
}

/// Sample `(x, l(x))` on a geometric grid, plot-ready. Geometric because the
/// curvature concentrates toward `x = 0`.
pub fn curve_points(
    config: &LotteryConfig,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    let stats = config.stats()?;
    let limit = 1.0 / stats.net_of_all_prizes;
    if !positive_finite(x_min) {
        return Err(Error::CurveDomain { x: x_min, limit });
    }
    if x_max.is_nan() || x_max >= limit {
        return Err(Error::CurveDomain { x: x_max, limit });
    }
    if x_min >= x_max {
        return Err(Error::Domain(format!(
            "need x_min < x_max, got {x_min} >= {x_max}"
        )));
    }
    if n < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 grid points, got {n}"
        )));
    }

    let log_step = (x_max / x_min).ln() / (n - 1) as f64;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        // Pin the endpoints so rounding in exp() cannot push them outside.
        let x = if i == 0 {
            x_min
        } else if i == n - 1 {
            x_max
        } else {
            x_min * (log_step * i as f64).exp()
        };
        points.push((x, curve_height(config, &stats, x)?));
    }
    Ok(points)
}
