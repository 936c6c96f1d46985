//! Argument grammar.
//!
//! Money-valued arguments (`--N`, `--J`, jackpot columns, ...) accept plain
//! numbers, scientific notation, and an `m` suffix for millions: `212e6`,
//! `33.8m`, and `123300000` all parse.

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Parse a money amount in ticket-price units.
pub fn parse_money(s: &str) -> Result<f64, String> {
    let trimmed = s.trim();
    let (body, scale) = match trimmed.strip_suffix(['m', 'M']) {
        Some(body) => (body, 1e6),
        None => (trimmed, 1.0),
    };
    let value: f64 = body
        .parse()
        .map_err(|_| format!("'{s}' is not a number (use e.g. 212e6, 33.8m, or 147)"))?;
    if !value.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(value * scale)
}

#[derive(Parser, Debug)]
#[command(
    name = "lotto-edge",
    about = "Expected-return and portfolio analysis for rolling-jackpot lotteries",
    long_about = "Analyses rolling-jackpot pari-mutuel lotteries: per-lottery statistics, \
                  exact expected rates of return, break-even classification, rollover \
                  forecasts, variance estimates, and mean-variance portfolio screening.\n\n\
                  <CONFIG> is a bundled name (mega-millions, powerball, lotto-texas, \
                  nj-pick6), a path to a config JSON file, or a name resolved against \
                  $LOTTO_EDGE_CONFIG_DIR.",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the per-lottery statistics f, F, and J0.
    Stats {
        /// Lottery config name or JSON file path.
        config: String,
    },

    /// Expected rate of return for one drawing, with its breakdown.
    Eror {
        config: String,
        #[command(flatten)]
        drawing: DrawingArgs,
        /// Fraction of tickets assumed randomly picked; sharing terms use
        /// N' = fraction * N, giving an upper bound for the
        /// unpopular-numbers strategy.
        #[arg(long = "quick-pick-fraction")]
        quick_pick_fraction: Option<f64>,
    },

    /// Classify a drawing as a good or bad bet.
    Classify {
        config: String,
        #[command(flatten)]
        drawing: DrawingArgs,
        /// bounds: universal bounding curves; exact: the lottery's own
        /// break-even curve (always decides); rects: the two rule-of-thumb
        /// rectangles.
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },

    /// Sample the break-even curve as CSV columns x,y.
    Breakeven {
        config: String,
        #[arg(long = "x-min", value_parser = parse_money)]
        x_min: f64,
        #[arg(long = "x-max", value_parser = parse_money)]
        x_max: f64,
        /// Number of grid points (geometric spacing).
        #[arg(long = "n")]
        n: usize,
    },

    /// Rollovers needed to reach a target jackpot multiple, and an upper
    /// bound on the probability of surviving them.
    Rollover {
        config: String,
        /// Current jackpot as a multiple of the cutoff J0.
        #[arg(long = "current-ratio")]
        current_ratio: f64,
        /// Target jackpot as a multiple of the cutoff J0.
        #[arg(long = "target-ratio")]
        target_ratio: f64,
        /// Per-rollover jackpot growth ratio.
        #[arg(long, default_value_t = lotto_edge::rollover::DEFAULT_GROWTH_RATIO)]
        growth: f64,
        /// How often (per year) the jackpot historically reaches its cutoff;
        /// multiplies the survival bound into a target-reach rate.
        #[arg(long = "cutoff-rate")]
        cutoff_rate: Option<f64>,
    },

    /// Variance of a lottery position, per ticket and per syndicate.
    Variance {
        config: String,
        #[command(flatten)]
        drawing: DrawingArgs,
        /// Number of tickets the syndicate buys.
        #[arg(long, default_value_t = 1)]
        syndicate: u64,
    },

    /// Efficient risky portfolio, optionally with a lottery position and
    /// the sufficient-variance screen.
    Portfolio {
        /// Universe file: .json (names/mu/cov fixture) or .csv (weekly
        /// return series, estimated pairwise). Defaults to the bundled
        /// five-asset table.
        #[arg(long)]
        universe: Option<String>,
        /// Risk-free weekly rate in %.
        #[arg(long)]
        rf: f64,
        /// Lottery expected rate of return in % (pairs with --lottery-v).
        #[arg(long = "lottery-rl", requires = "lottery_v")]
        lottery_rl: Option<f64>,
        /// Lottery variance in %^2 (pairs with --lottery-rl).
        #[arg(long = "lottery-v", value_parser = parse_money, requires = "lottery_rl")]
        lottery_v: Option<f64>,
        /// Negligibility threshold for positions.
        #[arg(long, default_value_t = lotto_edge::risk::DEFAULT_NEGLIGIBILITY)]
        theta: f64,
        /// Screen floor for the reference portfolio coordinate. Defaults to
        /// the smallest positive unnormalized weight of the base solve.
        #[arg(long = "z2-floor")]
        z2_floor: Option<f64>,
    },

    /// Monte-Carlo simulation of a drawing with a seeded generator.
    Simulate {
        config: String,
        #[command(flatten)]
        drawing: DrawingArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },

    /// Classify every drawing in a CSV file
    /// (header: date,lottery,annuity,lump_sum,J,N).
    Batch {
        /// Drawings CSV path.
        file: String,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
}

#[derive(Args, Debug)]
pub struct DrawingArgs {
    /// Total ticket sales, in tickets.
    #[arg(long = "N", value_parser = parse_money)]
    pub n: f64,
    /// After-tax lump-sum jackpot, in ticket-price units.
    #[arg(long = "J", value_parser = parse_money)]
    pub j: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Bounds,
    Exact,
    Rects,
}
