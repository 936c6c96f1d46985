//! Output formatting and CLI error reporting.

use std::fmt;

/// Format a number to six significant figures: plain decimal within a
/// readable exponent range, scientific outside it. Deterministic, so output
/// is stable for golden comparisons.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (_, exp) = sci
        .split_once('e')
        .expect("LowerExp always carries an exponent");
    let exp: i32 = exp.parse().expect("valid exponent");
    if (-4..=8).contains(&exp) {
        let rounded: f64 = sci.parse().expect("own output parses");
        let decimals = (5 - exp).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        sci
    }
}

/// Percent rendering of a rate: `-0.259176` -> `-25.9176%`.
pub fn percent(rate: f64) -> String {
    format!("{}%", sig6(rate * 100.0))
}

/// What a failed command reports before exiting with code 1.
#[derive(Debug)]
pub enum CliError {
    Lib(lotto_edge::Error),
    Io {
        context: String,
        source: std::io::Error,
    },
    /// Accumulated per-row problems from a batch file.
    Rows(Vec<String>),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.name(),
            CliError::Io { .. } => "IoError",
            CliError::Rows(_) => "ParseError",
        }
    }

    pub fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io { context, source } => write!(f, "{context}: {source}"),
            CliError::Rows(rows) => {
                write!(f, "{} bad row(s)", rows.len())?;
                for row in rows {
                    write!(f, "\n  {row}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<lotto_edge::Error> for CliError {
    fn from(e: lotto_edge::Error) -> Self {
        CliError::Lib(e)
    }
}
