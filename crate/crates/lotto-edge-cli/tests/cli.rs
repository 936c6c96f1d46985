//! End-to-end tests of the `lotto-edge` binary: every path is a thin
//! adapter, so outputs must match direct library calls formatted the same
//! way, and exit codes must follow the 0/1/2 convention.

use std::io::Write;
use std::process::{Command, Output};

use lotto_edge::{breakeven, builtin, returns, risk, rollover, sim, DrawingParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lotto-edge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Six-significant-figure rendering, mirroring the binary's formatter.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let sci = format!("{x:.5e}");
    let (_, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..=8).contains(&exp) {
        let rounded: f64 = sci.parse().unwrap();
        let decimals = (5 - exp).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        sci
    }
}

#[test]
fn stats_matches_library() {
    let out = run(&["stats", "lotto-texas"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let stats = builtin::lotto_texas().stats().unwrap();
    assert!(text.contains(&format!("f  = {}", sig6(stats.net_of_fixed))));
    assert!(text.contains(&format!("F  = {}", sig6(stats.net_of_all_prizes))));
    assert!(text.contains(&format!("J0 = {}", sig6(stats.jackpot_cutoff))));
    // Published cutoff is 23.5 million within 1%.
    assert!((stats.jackpot_cutoff / 23.5e6 - 1.0).abs() < 0.01);
}

#[test]
fn eror_matches_library_and_published_value() {
    let out = run(&["eror", "mega-millions", "--N", "212e6", "--J", "175e6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let drawing = DrawingParams::new(212e6, 175e6).unwrap();
    let breakdown = returns::expected_ror(&builtin::mega_millions(), &drawing).unwrap();
    assert!(text.contains(&format!("eRoR = {}", sig6(breakdown.total))));
    assert!((breakdown.total + 0.26).abs() < 0.02);
}

#[test]
fn eror_quick_pick_fraction() {
    let out = run(&[
        "eror",
        "lotto-texas",
        "--N",
        "4.2e6",
        "--J",
        "33.8m",
        "--quick-pick-fraction",
        "0.7",
    ]);
    assert!(out.status.success());
    let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
    let adjusted = returns::unpopular_adjusted_ror(&builtin::lotto_texas(), &drawing, 0.7).unwrap();
    assert!(stdout(&out).contains(&format!("eRoR = {}", sig6(adjusted.total))));
}

#[test]
fn classify_rects_matches_published_drawing() {
    let out = run(&[
        "classify",
        "powerball",
        "--N",
        "161e6",
        "--J",
        "123.3e6",
        "--method",
        "rects",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: NEGATIVE"));
    assert!(text.contains("rule: LARGE_SALES_RECT"));
}

#[test]
fn classify_exact_and_bounds_match_library() {
    let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
    let config = builtin::lotto_texas();

    let out = run(&["classify", "lotto-texas", "--N", "4.2e6", "--J", "33.8e6"]);
    assert!(out.status.success());
    let exact = breakeven::exact_curve_classify(&config, &drawing).unwrap();
    let text = stdout(&out);
    assert!(text.contains(&format!("verdict: {}", exact.verdict)));
    assert!(text.contains("rule: EXACT_CURVE"));
    assert!(text.contains(&format!("x = N/J  = {}", sig6(exact.coords.x))));

    let out = run(&[
        "classify",
        "lotto-texas",
        "--N",
        "4.2e6",
        "--J",
        "33.8e6",
        "--method",
        "bounds",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rule: ABOVE_U"));
}

#[test]
fn classify_inconclusive_points_to_exact() {
    // Between the bounding curves: x = 0.5, y = 1.4 (U needs ~1.74 there).
    let stats = builtin::mega_millions().stats().unwrap();
    let j = 1.4 * stats.jackpot_cutoff;
    let n = 0.5 * j;
    let out = run(&[
        "classify",
        "mega-millions",
        "--N",
        &n.to_string(),
        "--J",
        &j.to_string(),
        "--method",
        "bounds",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: INCONCLUSIVE"));
    assert!(text.contains("--method exact"));
}

#[test]
fn breakeven_emits_curve_csv() {
    let out = run(&[
        "breakeven",
        "mega-millions",
        "--x-min",
        "0.1",
        "--x-max",
        "1.0",
        "--n",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    let points = breakeven::curve_points(&builtin::mega_millions(), 0.1, 1.0, 3).unwrap();
    for (line, (x, y)) in lines.zip(points) {
        assert_eq!(line, format!("{},{}", sig6(x), sig6(y)));
    }
}

#[test]
fn rollover_matches_library() {
    let out = run(&[
        "rollover",
        "powerball",
        "--current-ratio",
        "1.19",
        "--target-ratio",
        "2.0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let forecast = rollover::forecast(&builtin::powerball(), 1.19, 2.0, 1.27).unwrap();
    assert!(text.contains(&format!("rollovers needed k = {}", forecast.rollovers)));
    assert!(text.contains(&format!(
        "survival bound = {}",
        sig6(forecast.survival_probability_bound)
    )));
    assert_eq!(forecast.rollovers, 3);
}

#[test]
fn variance_matches_library() {
    let out = run(&[
        "variance",
        "lotto-texas",
        "--N",
        "4.2e6",
        "--J",
        "33.8e6",
        "--syndicate",
        "100000",
    ]);
    assert!(out.status.success());
    let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
    let lv = risk::syndicate_variance(&builtin::lotto_texas(), &drawing, 100_000).unwrap();
    let text = stdout(&out);
    assert!(text.contains(&format!("v1 = {}", sig6(lv.single_ticket))));
    assert!(text.contains(&format!("v  = {}", sig6(lv.syndicate))));
}

#[test]
fn portfolio_screen_worked_example() {
    let out = run(&[
        "portfolio",
        "--rf",
        "0.01",
        "--lottery-rl",
        "30",
        "--lottery-v",
        "4e6",
        "--z2-floor",
        "0.022",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let universe = builtin::risky_universe();
    let augmented =
        risk::augmented_portfolio(&universe, 30.0, 4e6, 0.01, risk::DEFAULT_NEGLIGIBILITY).unwrap();
    let idx = augmented.weights.len() - 1;
    assert!(text.contains("lottery fraction is negligible"));
    assert!(text.contains(&format!(
        "lottery Z = {}, X = {}, negligible: yes",
        sig6(augmented.raw_weights[idx]),
        sig6(augmented.weights[idx])
    )));
}

#[test]
fn portfolio_requires_paired_lottery_flags() {
    let out = run(&["portfolio", "--rf", "0.01", "--lottery-rl", "30"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_reproducible_and_matches_library() {
    let args = [
        "simulate",
        "lotto-texas",
        "--N",
        "4.2e6",
        "--J",
        "33.8e6",
        "--trials",
        "2000",
        "--seed",
        "7",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert!(out1.status.success());
    assert_eq!(stdout(&out1), stdout(&out2));
    let drawing = DrawingParams::new(4.2e6, 33.8e6).unwrap();
    let result = sim::simulate_drawings(&builtin::lotto_texas(), &drawing, 2000, 7).unwrap();
    assert!(stdout(&out1).contains(&format!("mean RoR = {}", sig6(result.mean_ror))));
    // 2000 trials against 1-in-26-million odds: the jackpot term is
    // invisible to the sample mean, and the run should say so.
    assert!(stderr(&out1).contains("jackpot hits"), "{}", stderr(&out1));
}

#[test]
fn batch_classifies_records() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "date,lottery,annuity,lump_sum,J,N").unwrap();
    writeln!(file, "2007-03-06,mega-millions,390m,233m,,212m").unwrap();
    writeln!(file, "2007-04-07,lotto-texas,75m,45m,33.8m,4.2m").unwrap();
    let out = run(&["batch", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("date,lottery,x,y,eRoR,verdict,rule"));
    let mm = lines.next().unwrap();
    assert!(
        mm.contains("mega-millions") && mm.contains("NEGATIVE"),
        "{mm}"
    );
    let tx = lines.next().unwrap();
    assert!(
        tx.contains("lotto-texas") && tx.contains("POSITIVE"),
        "{tx}"
    );
    // Back-filled jackpot: J = 233m * 0.75.
    let drawing = DrawingParams::new(212e6, 233e6 * 0.75).unwrap();
    let total = returns::expected_ror(&builtin::mega_millions(), &drawing)
        .unwrap()
        .total;
    assert!(mm.contains(&sig6(total)), "{mm}");
}

#[test]
fn batch_reports_bad_rows_with_numbers() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "date,lottery,annuity,lump_sum,J,N").unwrap();
    writeln!(file, "2007-03-06,mega-millions,,,,212m").unwrap();
    let out = run(&["batch", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stderr(&out);
    assert!(text.contains("error[ParseError]"), "{text}");
    assert!(text.contains("row 2"), "{text}");
}

#[test]
fn exit_codes() {
    // Usage errors: 2.
    assert_eq!(
        run(&["eror", "mega-millions", "--N", "1e6"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    // Domain errors: 1, with the error name.
    let out = run(&["eror", "mega-millions", "--N=-5", "--J", "1e6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("error[DomainError]"),
        "{}",
        stderr(&out)
    );
    // Unknown lottery: 1.
    let out = run(&["stats", "el-gordo"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error[ParseError]"));
    // Curve domain: 1.
    let out = run(&[
        "breakeven",
        "powerball",
        "--x-min",
        "0.1",
        "--x-max",
        "3.0",
        "--n",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error[CurveDomainError]"));
}

#[test]
fn config_dir_env_overrides_bundled() {
    let dir = tempfile::tempdir().unwrap();
    // A "powerball" with no prizes at all: f = F = 1 gives it away.
    std::fs::write(
        dir.path().join("powerball.json"),
        r#"{"name":"powerball","t":146107962,"fixed":[],"pari":[]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lotto-edge"))
        .args(["stats", "powerball"])
        .env("LOTTO_EDGE_CONFIG_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("f  = 1.00000"));

    // Names not present in the override directory fall back to bundled.
    let out = Command::new(env!("CARGO_BIN_EXE_lotto-edge"))
        .args(["stats", "mega-millions"])
        .env("LOTTO_EDGE_CONFIG_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("f  = 0.837637"));
}

#[test]
fn minor_lottery_warns_but_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.json");
    std::fs::write(&path, r#"{"name":"tiny","t":100,"fixed":[],"pari":[]}"#).unwrap();
    let out = run(&["stats", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"), "{}", stderr(&out));
}

#[test]
fn portfolio_csv_universe() {
    let mut file = tempfile::NamedTempFile::with_suffix(".csv").unwrap();
    writeln!(file, "date,a,b").unwrap();
    writeln!(file, "2020-01-03,1,2").unwrap();
    writeln!(file, "2020-01-10,2,4").unwrap();
    writeln!(file, "2020-01-17,3,5").unwrap();
    let out = run(&[
        "portfolio",
        "--universe",
        file.path().to_str().unwrap(),
        "--rf",
        "0.0",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("2 assets"));
}
