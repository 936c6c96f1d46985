//! Lottery variance, covariance estimation, and Lintner-style efficient
//! portfolios.
//!
//! The question "is a positive-return drawing a good investment" reduces to
//! mean-variance analysis: estimate the variance of a lottery position, put
//! it next to ordinary risky assets, and solve for the efficient portfolio.
//! With Lintnerian short sales (full cash collateral) the risky weights are
//!
//! ```text
//! X = Z / sum_k |Z_k|    where    C Z = mu - R_F * 1
//! ```
//!
//! A sufficient-variance screen then settles most cases without the solve:
//! if `v >= (R_L - R_F) / (z2_floor * theta)` the efficient portfolio holds
//! a negligible lottery fraction, because the lottery weight is dominated by
//! `|Z_lottery| / z2_floor` for any coordinate of `Z` at least `z2_floor`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DrawingParams, LotteryConfig};
use crate::numeric::{positive_finite, pow_one_minus};

/// Default negligibility threshold: half a dollar on a $1000 stake.
pub const DEFAULT_NEGLIGIBILITY: f64 = 1.0 / 2000.0;
/// Default floor on the reference portfolio coordinate used by the
/// variance screen. Specific to the bundled five-asset universe, whose
/// second coordinate stays above it for every nonnegative risk-free rate;
/// compute a floor from the actual solution for other universes.
pub const DEFAULT_Z2_FLOOR: f64 = 0.022;
/// Relative pivot threshold that declares a solve singular.
const PIVOT_REL_TOL: f64 = 1e-12;

/// Variance of a lottery position, per ticket and per syndicate share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LotteryVariance {
    /// Variance of a single ticket's rate of return, in %^2 per drawing.
    pub single_ticket: f64,
    /// Number of tickets the syndicate buys.
    pub syndicate_tickets: u64,
    /// Variance of the pooled investment: `single_ticket / syndicate_tickets`.
    pub syndicate: f64,
    /// Set when the syndicate is so large relative to the game (more than
    /// t/100 tickets) that the independent-shares approximation thins out.
    pub large_syndicate_warning: bool,
}

/// Expected returns and covariances for a set of risky assets, weekly % and
/// %^2 units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssetUniverse {
    names: Vec<String>,
    #[serde(rename = "mu")]
    mean_returns: Vec<f64>,
    #[serde(rename = "cov")]
    covariances: Vec<Vec<f64>>,
}

impl AssetUniverse {
    pub fn new(
        names: Vec<String>,
        mean_returns: Vec<f64>,
        covariances: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = names.len();
        if mean_returns.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: mean_returns.len(),
            });
        }
        if covariances.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: covariances.len(),
            });
        }
        for row in &covariances {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        #[allow(clippy::needless_range_loop)] // mirror-pair indexing
        for i in 0..n {
            if covariances[i][i] < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "negative variance for {}: {}",
                    names[i], covariances[i][i]
                )));
            }
            for j in (i + 1)..n {
                let (a, b) = (covariances[i][j], covariances[j][i]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::InvalidConfig(format!(
                        "covariance matrix not symmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
            }
        }
        Ok(Self {
            names,
            mean_returns,
            covariances,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mean_returns(&self) -> &[f64] {
        &self.mean_returns
    }

    pub fn covariances(&self) -> &[Vec<f64>] {
        &self.covariances
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            names: Vec<String>,
            mu: Vec<f64>,
            cov: Vec<Vec<f64>>,
        }
        let raw: Raw =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("universe JSON: {e}")))?;
        Self::new(raw.names, raw.mu, raw.cov)
    }

    /// Extend with one uncorrelated asset (used to bolt a lottery position
    /// onto an ordinary universe).
    fn with_uncorrelated_asset(&self, name: &str, mean: f64, variance: f64) -> Result<Self> {
        let n = self.len();
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut means = self.mean_returns.clone();
        means.push(mean);
        let mut cov: Vec<Vec<f64>> = self
            .covariances
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.push(0.0);
                row
            })
            .collect();
        let mut last = vec![0.0; n];
        last.push(variance);
        cov.push(last);
        Self::new(names, means, cov)
    }
}

/// An efficient risky portfolio under Lintnerian short sales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortfolioSolution {
    /// Risk-free weekly rate (%) the solution was computed for.
    pub risk_free_rate: f64,
    /// Unnormalized weights `Z` solving `C Z = mu - R_F 1`.
    pub raw_weights: Vec<f64>,
    /// Weights `X = Z / sum|Z|`; absolute values sum to one.
    pub weights: Vec<f64>,
    /// Fraction below which a position is not worth placing.
    pub negligibility_threshold: f64,
}

impl PortfolioSolution {
    /// Flags the positions smaller (in magnitude) than the threshold.
    pub fn negligible(&self) -> Vec<bool> {
        self.weights
            .iter()
            .map(|w| w.abs() < self.negligibility_threshold)
            .collect()
    }

    /// Smallest strictly positive unnormalized weight, if any: a valid
    /// screen floor for this universe at this risk-free rate.
    pub fn min_positive_raw_weight(&self) -> Option<f64> {
        self.raw_weights
            .iter()
            .copied()
            .filter(|z| *z > 0.0)
            .min_by(|a, b| a.partial_cmp(b).expect("weights are finite"))
    }
}

/// Table of weekly returns, one column per asset; `None` marks weeks where
/// an asset has no observation (shorter histories).
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnTable {
    dates: Vec<String>,
    names: Vec<String>,
    /// Column-major: `columns[asset][week]`.
    columns: Vec<Vec<Option<f64>>>,
}

impl ReturnTable {
    pub fn new(
        dates: Vec<String>,
        names: Vec<String>,
        columns: Vec<Vec<Option<f64>>>,
    ) -> Result<Self> {
        if columns.len() != names.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                actual: columns.len(),
            });
        }
        for col in &columns {
            if col.len() != dates.len() {
                return Err(Error::DimensionMismatch {
                    expected: dates.len(),
                    actual: col.len(),
                });
            }
        }
        Ok(Self {
            dates,
            names,
            columns,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dates(&self) -> &[String] {
        &self.dates
    }

    /// Parse `date,asset1,asset2,...` rows; empty cells are missing weeks.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty return series file".into()))?;
        let mut fields = header.split(',').map(str::trim);
        match fields.next() {
            Some(first) if first.eq_ignore_ascii_case("date") => {}
            _ => {
                return Err(Error::Parse(
                    "return series header must start with 'date'".into(),
                ))
            }
        }
        let names: Vec<String> = fields.map(String::from).collect();
        if names.is_empty() {
            return Err(Error::Parse(
                "return series file has no asset columns".into(),
            ));
        }

        let mut dates = Vec::new();
        let mut columns = vec![Vec::new(); names.len()];
        for (idx, line) in lines {
            let row_no = idx + 1;
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != names.len() + 1 {
                return Err(Error::Parse(format!(
                    "row {row_no}: expected {} cells, got {}",
                    names.len() + 1,
                    cells.len()
                )));
            }
            dates.push(cells[0].to_string());
            for (col, cell) in columns.iter_mut().zip(&cells[1..]) {
                if cell.is_empty() {
                    col.push(None);
                } else {
                    let value = cell.parse::<f64>().map_err(|_| {
                        Error::Parse(format!("row {row_no}: bad return value '{cell}'"))
                    })?;
                    col.push(Some(value));
                }
            }
        }
        Self::new(dates, names, columns)
    }
}

/// Sample means and pairwise-complete sample covariances (n-1 denominator)
/// from per-asset weekly return series.
///
/// Assets with different history lengths are handled pairwise: each
/// covariance uses the weeks where both assets have observations, with the
/// means of that overlap window. Errors if any asset or pair has fewer than
/// two usable observations.
pub fn estimate_universe(table: &ReturnTable) -> Result<AssetUniverse> {
    let n = table.names.len();
    let mut means = Vec::with_capacity(n);
    for (name, col) in table.names.iter().zip(&table.columns) {
        let values: Vec<f64> = col.iter().flatten().copied().collect();
        if values.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "asset {name} has {} observations, need at least 2",
                values.len()
            )));
        }
        means.push(values.iter().sum::<f64>() / values.len() as f64);
    }

    let mut cov = vec![vec![0.0; n]; n];
    #[allow(clippy::needless_range_loop)] // fills (i, j) and (j, i) together
    for i in 0..n {
        for j in i..n {
            let pairs: Vec<(f64, f64)> = table.columns[i]
                .iter()
                .zip(&table.columns[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .collect();
            if pairs.len() < 2 {
                return Err(Error::InsufficientData(format!(
                    "assets {} and {} overlap on {} weeks, need at least 2",
                    table.names[i],
                    table.names[j],
                    pairs.len()
                )));
            }
            let m = pairs.len() as f64;
            let mean_i = pairs.iter().map(|(a, _)| a).sum::<f64>() / m;
            let mean_j = pairs.iter().map(|(_, b)| b).sum::<f64>() / m;
            let c = pairs
                .iter()
                .map(|(a, b)| (a - mean_i) * (b - mean_j))
                .sum::<f64>()
                / (m - 1.0);
            cov[i][j] = c;
            cov[j][i] = c;
        }
    }
    AssetUniverse::new(table.names.clone(), means, cov)
}

/// Variance (in %^2) of a single ticket's rate of return for one drawing.
///
/// Jackpot outcomes dominate the second moment so completely that summing
/// `100^2 (J/w - 1)^2` over the co-winner distribution is the whole
/// estimate. The sum runs until a term falls below 1e-18 of the running
/// total *and* the co-winner count is 12 standard deviations past the mean,
/// which keeps the truncation error under 1e-12 relative.
pub fn lottery_variance(config: &LotteryConfig, drawing: &DrawingParams) -> Result<f64> {
    config.stats()?;
    let p = config.jackpot_probability();
    let n = drawing.sales;
    let j = drawing.jackpot;

    let mean = n * p;
    let cutoff_w = mean + 12.0 * (mean * (1.0 - p)).sqrt() + 1.0;

    // Winner-count weights follow the recurrence
    // b(w+1) = b(w) * (n - w)/w * p/(1 - p), starting from p (1-p)^(n-1).
    let odds = p / (1.0 - p);
    let mut b = p * pow_one_minus(p, n - 1.0);
    let mut total = 0.0;
    let mut w = 1.0f64;
    loop {
        let deviation = j / w - 1.0;
        let term = 1e4 * deviation * deviation * b;
        total += term;
        if w >= n {
            break; // no more co-winner counts than tickets sold
        }
        if w > cutoff_w && term < 1e-18 * total {
            break;
        }
        b *= (n - w) / w * odds;
        w += 1.0;
    }
    Ok(total)
}

/// Ticket variance scaled down to a syndicate of `tickets` shares.
pub fn syndicate_variance(
    config: &LotteryConfig,
    drawing: &DrawingParams,
    tickets: u64,
) -> Result<LotteryVariance> {
    if tickets == 0 {
        return Err(Error::Domain(
            "syndicate must buy at least one ticket".into(),
        ));
    }
    let single_ticket = lottery_variance(config, drawing)?;
    Ok(LotteryVariance {
        single_ticket,
        syndicate_tickets: tickets,
        syndicate: single_ticket / tickets as f64,
        large_syndicate_warning: tickets as f64 > config.ticket_count() as f64 / 100.0,
    })
}

/// Solve `A x = b` by Gaussian elimination with scaled partial pivoting.
///
/// Pivots are judged against their own row's initial scale, so a universe
/// mixing unit-size covariances with an enormous lottery variance does not
/// trip the singularity test spuriously.
fn solve_linear(matrix: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut b = rhs.to_vec();

    let mut scale = Vec::with_capacity(n);
    for row in &a {
        let s = row.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if s == 0.0 {
            return Err(Error::SingularMatrix);
        }
        scale.push(s);
    }

    for col in 0..n {
        let (pivot_row, pivot_ratio) = (col..n)
            .map(|r| (r, a[r][col].abs() / scale[r]))
            .max_by(|(_, x), (_, y)| x.partial_cmp(y).expect("finite pivot ratios"))
            .expect("non-empty pivot candidates");
        if pivot_ratio < PIVOT_REL_TOL {
            return Err(Error::SingularMatrix);
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        scale.swap(col, pivot_row);

        let (pivot_block, below) = a.split_at_mut(col + 1);
        let pivot_values = &pivot_block[col];
        let pivot = pivot_values[col];
        let (b_pivot_block, b_below) = b.split_at_mut(col + 1);
        let b_pivot = b_pivot_block[col];
        for (row, b_row) in below.iter_mut().zip(b_below.iter_mut()) {
            let factor = row[col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for (cell, pivot_cell) in row[col + 1..].iter_mut().zip(&pivot_values[col + 1..]) {
                *cell -= factor * pivot_cell;
            }
            row[col] = 0.0;
            *b_row -= factor * b_pivot;
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = a[row][row + 1..]
            .iter()
            .zip(&x[row + 1..])
            .map(|(coeff, solved)| coeff * solved)
            .sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

/// Efficient risky portfolio for a universe and risk-free rate: solve
/// `C Z = mu - R_F 1`, then normalize to `sum |X_k| = 1`.
pub fn lintner_portfolio(
    universe: &AssetUniverse,
    risk_free_rate: f64,
    theta: f64,
) -> Result<PortfolioSolution> {
    if universe.is_empty() {
        return Err(Error::InsufficientData("universe has no assets".into()));
    }
    if risk_free_rate < 0.0 || !risk_free_rate.is_finite() {
        return Err(Error::Domain(format!(
            "risk-free rate must be nonnegative, got {risk_free_rate}"
        )));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!(
            "negligibility threshold must lie in (0, 1), got {theta}"
        )));
    }

    let excess: Vec<f64> = universe
        .mean_returns
        .iter()
        .map(|mu| mu - risk_free_rate)
        .collect();
    let raw_weights = solve_linear(&universe.covariances, &excess)?;
    let norm: f64 = raw_weights.iter().map(|z| z.abs()).sum();
    if norm == 0.0 {
        return Err(Error::Domain(
            "every asset has zero excess return; risky portfolio undefined".into(),
        ));
    }
    let weights = raw_weights.iter().map(|z| z / norm).collect();
    Ok(PortfolioSolution {
        risk_free_rate,
        raw_weights,
        weights,
        negligibility_threshold: theta,
    })
}

fn check_screen_args(r_l: f64, r_f: f64, theta: f64, z2_floor: f64) -> Result<()> {
    if !positive_finite(theta) || !positive_finite(z2_floor) {
        return Err(Error::Domain(format!(
            "theta and floor must be positive, got theta = {theta}, floor = {z2_floor}"
        )));
    }
    if r_l <= r_f || r_l.is_nan() || r_f.is_nan() {
        return Err(Error::Domain(format!(
            "screen assumes the lottery beats the risk-free rate; got R_L = {r_l} <= R_F = {r_f} \
             (such a lottery adds risk with no excess return and is trivially rejected)"
        )));
    }
    Ok(())
}

/// Sufficient-variance screen: true when the lottery's share of an efficient
/// portfolio is provably below `theta`, i.e. `v >= (R_L - R_F) / (z2_floor *
/// theta)` for some reference coordinate of `Z` known to be at least
/// `z2_floor`. Conservative: a `false` is inconclusive and calls for the
/// full augmented solve.
pub fn negative_theorem_screen(
    r_l: f64,
    r_f: f64,
    v: f64,
    theta: f64,
    z2_floor: f64,
) -> Result<bool> {
    check_screen_args(r_l, r_f, theta, z2_floor)?;
    if v <= 0.0 || v.is_nan() {
        return Err(Error::Domain(format!("variance must be positive, got {v}")));
    }
    Ok(v >= (r_l - r_f) / (z2_floor * theta))
}

/// Smallest syndicate size at which the variance screen stops applying and
/// lottery inclusion becomes possible: least `S` with `v1/S` strictly below
/// the screen threshold.
pub fn min_syndicate_size(r_l: f64, r_f: f64, v1: f64, theta: f64, z2_floor: f64) -> Result<u64> {
    check_screen_args(r_l, r_f, theta, z2_floor)?;
    if !positive_finite(v1) {
        return Err(Error::Domain(format!(
            "single-ticket variance must be positive, got {v1}"
        )));
    }
    let threshold = (r_l - r_f) / (z2_floor * theta);
    let ratio = (v1 / threshold).floor();
    if ratio >= u64::MAX as f64 {
        return Err(Error::Domain(format!(
            "syndicate size overflows a 64-bit count (v1/threshold = {ratio:e})"
        )));
    }
    Ok(ratio as u64 + 1)
}

/// Efficient portfolio with a lottery position appended as an extra asset,
/// uncorrelated with everything else. The lottery's unnormalized weight is
/// exactly `(R_L - R_F) / v`.
pub fn augmented_portfolio(
    universe: &AssetUniverse,
    r_l: f64,
    v: f64,
    r_f: f64,
    theta: f64,
) -> Result<PortfolioSolution> {
    if !positive_finite(v) {
        return Err(Error::Domain(format!(
            "lottery variance must be positive, got {v}"
        )));
    }
    let augmented = universe.with_uncorrelated_asset("lottery", r_l, v)?;
    lintner_portfolio(&augmented, r_f, theta)
}
