//! Subcommand implementations: thin adapters from parsed arguments to
//! library calls, plus report printing.

use lotto_edge::breakeven::{self, BetClassification, BetVerdict, NormalizedDrawing, Rule};
use lotto_edge::model::{DrawingParams, LotteryConfig};
use lotto_edge::returns;
use lotto_edge::risk;
use lotto_edge::rollover;
use lotto_edge::sim;

use crate::cli::{Cli, Command, DrawingArgs, Method};
use crate::drawings::{load_drawings, DrawingRecord};
use crate::report::{percent, sig6, CliError};
use crate::resolve::{resolve_config, resolve_universe};

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats { config } => stats(&config),
        Command::Eror {
            config,
            drawing,
            quick_pick_fraction,
        } => eror(&config, &drawing, quick_pick_fraction),
        Command::Classify {
            config,
            drawing,
            method,
        } => classify(&config, &drawing, method),
        Command::Breakeven {
            config,
            x_min,
            x_max,
            n,
        } => breakeven_csv(&config, x_min, x_max, n),
        Command::Rollover {
            config,
            current_ratio,
            target_ratio,
            growth,
            cutoff_rate,
        } => rollover_forecast(&config, current_ratio, target_ratio, growth, cutoff_rate),
        Command::Variance {
            config,
            drawing,
            syndicate,
        } => variance(&config, &drawing, syndicate),
        Command::Portfolio {
            universe,
            rf,
            lottery_rl,
            lottery_v,
            theta,
            z2_floor,
        } => portfolio(
            universe.as_deref(),
            rf,
            lottery_rl,
            lottery_v,
            theta,
            z2_floor,
        ),
        Command::Simulate {
            config,
            drawing,
            trials,
            seed,
        } => simulate(&config, &drawing, trials, seed),
        Command::Batch { file, method } => batch(&file, method),
    }
}

fn load(config: &str) -> Result<LotteryConfig, CliError> {
    let config = resolve_config(config)?;
    if !config.is_major() {
        eprintln!(
            "warning: {} has only {} distinct tickets; major-lottery analyses assume at least {}",
            config.name(),
            config.ticket_count(),
            lotto_edge::model::MAJOR_LOTTERY_MIN_TICKETS
        );
    }
    Ok(config)
}

fn drawing_params(args: &DrawingArgs) -> Result<DrawingParams, CliError> {
    Ok(DrawingParams::new(args.n, args.j)?)
}

fn stats(config_name: &str) -> Result<(), CliError> {
    let config = load(config_name)?;
    let stats = config.stats()?;
    println!("lottery: {}", config.name());
    println!("t  = {}", config.ticket_count());
    println!("f  = {}", sig6(stats.net_of_fixed));
    println!("F  = {}", sig6(stats.net_of_all_prizes));
    println!("J0 = {}", sig6(stats.jackpot_cutoff));
    Ok(())
}

fn print_breakdown(config: &LotteryConfig, breakdown: &returns::ERoRBreakdown) {
    println!("cost and fixed prizes = {}", sig6(breakdown.cost_and_fixed));
    for (term, pool) in breakdown.pari_terms.iter().zip(config.pari_mutuel_pools()) {
        println!("pool (rate {}) = {}", sig6(pool.rate), sig6(*term));
    }
    println!("jackpot term = {}", sig6(breakdown.jackpot_term));
    println!(
        "eRoR = {} ({})",
        sig6(breakdown.total),
        percent(breakdown.total)
    );
}

fn eror(
    config_name: &str,
    args: &DrawingArgs,
    quick_pick_fraction: Option<f64>,
) -> Result<(), CliError> {
    let config = load(config_name)?;
    let drawing = drawing_params(args)?;
    println!("lottery: {}", config.name());
    println!("N = {}", sig6(drawing.sales));
    println!("J = {}", sig6(drawing.jackpot));
    match quick_pick_fraction {
        None => {
            let breakdown = returns::expected_ror(&config, &drawing)?;
            print_breakdown(&config, &breakdown);
        }
        Some(fraction) => {
            let breakdown = returns::unpopular_adjusted_ror(&config, &drawing, fraction)?;
            println!(
                "quick-pick fraction = {} (sharing terms use N' = fraction * N;",
                sig6(fraction)
            );
            println!("  upper bound for the unpopular-numbers strategy)");
            print_breakdown(&config, &breakdown);
        }
    }
    Ok(())
}

fn print_classification(c: &BetClassification) {
    println!("x = N/J  = {}", sig6(c.coords.x));
    println!("y = J/J0 = {}", sig6(c.coords.y));
    println!("verdict: {}", c.verdict);
    match c.rule {
        Some(rule) => println!("rule: {rule}"),
        None => {
            println!("rule: none");
            println!("hint: this method cannot decide here; rerun with --method exact");
        }
    }
}

fn classify(config_name: &str, args: &DrawingArgs, method: Method) -> Result<(), CliError> {
    let config = load(config_name)?;
    let drawing = drawing_params(args)?;
    let stats = config.stats()?;
    println!("lottery: {}", config.name());
    let classification = match method {
        Method::Exact => breakeven::exact_curve_classify(&config, &drawing)?,
        Method::Bounds => {
            let coords = NormalizedDrawing::from_drawing(&drawing, &stats);
            breakeven::general_bound_classify(&config, coords)?
        }
        Method::Rects => {
            let coords = NormalizedDrawing::from_drawing(&drawing, &stats);
            if breakeven::small_sales_rule(&drawing, &stats)? {
                BetClassification {
                    verdict: BetVerdict::Positive,
                    rule: Some(Rule::SmallSalesRect),
                    coords,
                }
            } else if breakeven::large_sales_rule(&drawing, &stats)? {
                BetClassification {
                    verdict: BetVerdict::Negative,
                    rule: Some(Rule::LargeSalesRect),
                    coords,
                }
            } else {
                BetClassification {
                    verdict: BetVerdict::Inconclusive,
                    rule: None,
                    coords,
                }
            }
        }
    };
    print_classification(&classification);
    Ok(())
}

fn breakeven_csv(config_name: &str, x_min: f64, x_max: f64, n: usize) -> Result<(), CliError> {
    let config = load(config_name)?;
    let points = breakeven::curve_points(&config, x_min, x_max, n)?;
    println!("x,y");
    for (x, y) in points {
        println!("{},{}", sig6(x), sig6(y));
    }
    Ok(())
}

fn rollover_forecast(
    config_name: &str,
    current_ratio: f64,
    target_ratio: f64,
    growth: f64,
    cutoff_rate: Option<f64>,
) -> Result<(), CliError> {
    let config = load(config_name)?;
    let forecast = rollover::forecast(&config, current_ratio, target_ratio, growth)?;
    println!("lottery: {}", config.name());
    println!("current J/J0 = {}", sig6(current_ratio));
    println!("target J/J0  = {}", sig6(target_ratio));
    println!("growth ratio = {}", sig6(forecast.growth_ratio));
    println!("rollovers needed k = {}", forecast.rollovers);
    println!(
        "survival bound = {}",
        sig6(forecast.survival_probability_bound)
    );
    if let Some(rate) = cutoff_rate {
        // Exogenous arrival rate times the survival bound; no empirical
        // claim beyond the multiplication.
        let reach = rate * forecast.survival_probability_bound;
        println!("cutoff-reach rate = {} per year", sig6(rate));
        println!("target-reach rate <= {} per year", sig6(reach));
    }
    Ok(())
}

fn variance(config_name: &str, args: &DrawingArgs, syndicate: u64) -> Result<(), CliError> {
    let config = load(config_name)?;
    let drawing = drawing_params(args)?;
    let lv = risk::syndicate_variance(&config, &drawing, syndicate)?;
    println!("lottery: {}", config.name());
    println!("v1 = {} (%^2, single ticket)", sig6(lv.single_ticket));
    println!("S  = {}", lv.syndicate_tickets);
    println!("v  = {} (%^2, syndicate share)", sig6(lv.syndicate));
    if lv.large_syndicate_warning {
        eprintln!(
            "warning: syndicate holds more than 1% of all distinct tickets; \
             the v = v1/S approximation is strained"
        );
    }
    Ok(())
}

fn portfolio(
    universe_path: Option<&str>,
    rf: f64,
    lottery_rl: Option<f64>,
    lottery_v: Option<f64>,
    theta: f64,
    z2_floor: Option<f64>,
) -> Result<(), CliError> {
    let (universe, label) = resolve_universe(universe_path)?;
    let base = risk::lintner_portfolio(&universe, rf, theta)?;
    println!("universe: {label} ({} assets)", universe.len());
    println!("rf = {} (% weekly)", sig6(rf));
    println!("theta = {}", sig6(theta));
    println!("asset Z X negligible");
    let negligible = base.negligible();
    for (i, name) in universe.names().iter().enumerate() {
        println!(
            "{name} {} {} {}",
            sig6(base.raw_weights[i]),
            sig6(base.weights[i]),
            if negligible[i] { "yes" } else { "no" }
        );
    }

    let (Some(r_l), Some(v)) = (lottery_rl, lottery_v) else {
        return Ok(());
    };

    // Screen floor: explicit flag, else the smallest positive coordinate of
    // this very solution (a valid dominator for the lottery weight).
    let (floor, floor_source) = match z2_floor {
        Some(f) => (f, "from --z2-floor".to_string()),
        None => {
            let f = base.min_positive_raw_weight().ok_or_else(|| {
                lotto_edge::Error::Domain(
                    "no positive portfolio coordinate to screen against; \
                     pass --z2-floor explicitly"
                        .into(),
                )
            })?;
            (
                f,
                "computed as min positive Z of the base solve".to_string(),
            )
        }
    };

    println!("lottery R_L = {} (%), v = {} (%^2)", sig6(r_l), sig6(v));
    println!("screen floor = {} ({floor_source})", sig6(floor));
    let threshold = (r_l - rf) / (floor * theta);
    println!("screen threshold = {}", sig6(threshold));
    let negligible = risk::negative_theorem_screen(r_l, rf, v, theta, floor)?;
    if negligible {
        println!("screen: variance clears the threshold; efficient lottery fraction is negligible");
    } else {
        println!("screen: inconclusive; solving the augmented universe");
    }
    let augmented = risk::augmented_portfolio(&universe, r_l, v, rf, theta)?;
    let lottery_index = augmented.weights.len() - 1;
    println!(
        "lottery Z = {}, X = {}, negligible: {}",
        sig6(augmented.raw_weights[lottery_index]),
        sig6(augmented.weights[lottery_index]),
        if augmented.negligible()[lottery_index] {
            "yes"
        } else {
            "no"
        }
    );
    Ok(())
}

fn simulate(config_name: &str, args: &DrawingArgs, trials: u64, seed: u64) -> Result<(), CliError> {
    let config = load(config_name)?;
    let drawing = drawing_params(args)?;
    let expected_jackpot_hits = trials as f64 * config.jackpot_probability();
    if expected_jackpot_hits < 10.0 {
        eprintln!(
            "warning: about {expected_jackpot_hits:.2} jackpot hits expected across {trials} \
             trials; the sample mean will barely reflect the jackpot term (1 in {} odds \
             wants far more trials)",
            config.ticket_count()
        );
    }
    let result = sim::simulate_drawings(&config, &drawing, trials, seed)?;
    println!("lottery: {}", config.name());
    println!("trials = {}", result.n_trials);
    println!("seed = {seed}");
    println!("mean RoR = {}", sig6(result.mean_ror));
    println!("variance = {}", sig6(result.var_ror));
    println!("std error = {}", sig6(result.std_error));
    println!("rng = {}", result.rng);
    Ok(())
}

fn batch(file: &str, method: Method) -> Result<(), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(CliError::io(format!("reading drawings '{file}'")))?;
    let records = load_drawings(&text)?;
    println!("date,lottery,x,y,eRoR,verdict,rule");
    for record in &records {
        let line = batch_line(record, method)?;
        println!("{line}");
    }
    Ok(())
}

fn batch_line(record: &DrawingRecord, method: Method) -> Result<String, CliError> {
    let config = resolve_config(&record.lottery)?;
    let stats = config.stats()?;
    let drawing = DrawingParams::new(record.sales, record.jackpot_after_tax)?;
    let total = returns::expected_ror(&config, &drawing)?.total;
    let classification = match method {
        Method::Exact => breakeven::exact_curve_classify(&config, &drawing)?,
        Method::Bounds => breakeven::general_bound_classify(
            &config,
            NormalizedDrawing::from_drawing(&drawing, &stats),
        )?,
        Method::Rects => {
            let coords = NormalizedDrawing::from_drawing(&drawing, &stats);
            if breakeven::small_sales_rule(&drawing, &stats)? {
                BetClassification {
                    verdict: BetVerdict::Positive,
                    rule: Some(Rule::SmallSalesRect),
                    coords,
                }
            } else if breakeven::large_sales_rule(&drawing, &stats)? {
                BetClassification {
                    verdict: BetVerdict::Negative,
                    rule: Some(Rule::LargeSalesRect),
                    coords,
                }
            } else {
                BetClassification {
                    verdict: BetVerdict::Inconclusive,
                    rule: None,
                    coords,
                }
            }
        }
    };
    let rule = classification
        .rule
        .map(|r| r.to_string())
        .unwrap_or_else(|| "none".to_string());
    Ok(format!(
        "{},{},{},{},{},{},{}",
        record.date,
        record.lottery,
        sig6(classification.coords.x),
        sig6(classification.coords.y),
        sig6(total),
        classification.verdict,
        rule
    ))
}
