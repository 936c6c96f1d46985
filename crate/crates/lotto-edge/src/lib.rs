//! Analysis toolkit for rolling-jackpot pari-mutuel lotteries.
//!
//! The crate answers two questions about a lottery drawing, in order:
//!
//! 1. **Is it a good bet?** [`returns`] computes the exact expected rate of
//!    return from the game's prize structure, ticket sales, and after-tax
//!    jackpot; [`breakeven`] classifies drawings by position relative to
//!    break-even curves in the normalized `(N/J, J/J0)` plane, including
//!    universal bounding curves that settle most drawings with one
//!    exponential; [`rollover`] bounds the chance a jackpot ever grows into
//!    the favorable region.
//! 2. **Is a good bet a good investment?** [`risk`] estimates the variance
//!    of a lottery position and runs mean-variance portfolio analysis with
//!    Lintnerian short sales, including a sufficient-variance screen that
//!    shows when the efficient allocation to lottery tickets is negligible.
//!
//! [`sim`] provides brute-force and Monte-Carlo oracles on small games so
//! the closed forms can be cross-checked end to end, and [`builtin`] ships
//! four transcribed game configurations plus a historical asset-return
//! fixture.
//!
//! Everything is denominated in ticket-price units, prize values are after
//! tax, and all types are immutable after construction.

pub mod breakeven;
pub mod builtin;
pub mod error;
pub mod model;
pub mod numeric;
pub mod returns;
pub mod risk;
pub mod rollover;
pub mod sim;

pub use breakeven::{
    breakeven_curve, curve_points, exact_curve_classify, general_bound_classify, large_sales_rule,
    small_sales_rule, BetClassification, BetVerdict, NormalizedDrawing, Rule,
};
pub use error::{Error, Result};
pub use model::{
    apply_withholding, derive_stats, DrawingParams, FixedPrize, LotteryConfig, LotteryStats,
    PariMutuelPool,
};
pub use returns::{
    expected_ror, jackpot_cutoff_test, share_factor, unpopular_adjusted_ror, ERoRBreakdown,
};
pub use risk::{
    augmented_portfolio, estimate_universe, lintner_portfolio, lottery_variance,
    min_syndicate_size, negative_theorem_screen, syndicate_variance, AssetUniverse,
    LotteryVariance, PortfolioSolution, ReturnTable,
};
pub use rollover::{forecast, rollover_survival_bound, rollovers_to_target, RolloverForecast};
pub use sim::{exhaustive_eror, share_factor_sum, simulate_drawings, SimResult};
