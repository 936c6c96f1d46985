//! Historical drawings CSV: `date,lottery,annuity,lump_sum,J,N`.
//!
//! Jackpot figures circulate in three forms: the advertised pre-tax annuity
//! total, the pre-tax lump sum, and the after-tax lump sum `J` that the
//! analysis actually uses. Rows may leave `J` blank when a lump sum is
//! given; it is back-filled at the default withholding rate.

use lotto_edge::model::DEFAULT_TAX_RATE;

use crate::cli::parse_money;
use crate::report::CliError;

pub const DRAWINGS_HEADER: [&str; 6] = ["date", "lottery", "annuity", "lump_sum", "J", "N"];

/// One historical drawing row, with `J` resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawingRecord {
    pub date: String,
    pub lottery: String,
    pub annuity_pre_tax: Option<f64>,
    pub lump_sum_pre_tax: Option<f64>,
    /// After-tax lump sum: the column value, or `lump_sum * (1 - 0.25)`.
    pub jackpot_after_tax: f64,
    pub sales: f64,
}

/// Parse a drawings CSV. Every malformed row is reported with its number;
/// a bad or missing header fails the whole file immediately.
pub fn load_drawings(text: &str) -> Result<Vec<DrawingRecord>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| CliError::Rows(vec![format!("header: {e}")]))?;
    let header_fields: Vec<&str> = header.iter().collect();
    if header_fields != DRAWINGS_HEADER {
        return Err(CliError::Rows(vec![format!(
            "header must be '{}', got '{}'",
            DRAWINGS_HEADER.join(","),
            header_fields.join(",")
        )]));
    }

    let mut records = Vec::new();
    let mut problems = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let row_no = idx + 2; // 1-based, after the header line
        match row {
            Ok(record) => match parse_row(&record) {
                Ok(parsed) => records.push(parsed),
                Err(msg) => problems.push(format!("row {row_no}: {msg}")),
            },
            Err(e) => problems.push(format!("row {row_no}: {e}")),
        }
    }
    if problems.is_empty() {
        Ok(records)
    } else {
        Err(CliError::Rows(problems))
    }
}

fn parse_row(record: &csv::StringRecord) -> Result<DrawingRecord, String> {
    if record.len() != DRAWINGS_HEADER.len() {
        return Err(format!(
            "expected {} fields, got {}",
            DRAWINGS_HEADER.len(),
            record.len()
        ));
    }
    let field = |i: usize| record.get(i).unwrap_or("");
    let optional_money = |i: usize, name: &str| -> Result<Option<f64>, String> {
        let cell = field(i);
        if cell.is_empty() {
            Ok(None)
        } else {
            parse_money(cell)
                .map(Some)
                .map_err(|e| format!("{name}: {e}"))
        }
    };

    let date = field(0).to_string();
    if date.is_empty() {
        return Err("date is empty".into());
    }
    let lottery = field(1).to_string();
    if lottery.is_empty() {
        return Err("lottery is empty".into());
    }
    let annuity_pre_tax = optional_money(2, "annuity")?;
    let lump_sum_pre_tax = optional_money(3, "lump_sum")?;
    let explicit_jackpot = optional_money(4, "J")?;
    let sales = parse_money(field(5)).map_err(|e| format!("N: {e}"))?;

    let jackpot_after_tax = match (explicit_jackpot, lump_sum_pre_tax) {
        (Some(j), _) => j,
        (None, Some(lump)) => lump * (1.0 - DEFAULT_TAX_RATE),
        (None, None) => return Err("need J or lump_sum".into()),
    };
    if jackpot_after_tax <= 0.0 || jackpot_after_tax.is_nan() {
        return Err(format!("jackpot must be positive, got {jackpot_after_tax}"));
    }
    if sales <= 0.0 || sales.is_nan() {
        return Err(format!("N must be positive, got {sales}"));
    }

    Ok(DrawingRecord {
        date,
        lottery,
        annuity_pre_tax,
        lump_sum_pre_tax,
        jackpot_after_tax,
        sales,
    })
}

/// Serialize records back to the same CSV shape. Numbers use the shortest
/// representation that re-parses to the identical value.
#[cfg(test)]
pub fn serialize_drawings(records: &[DrawingRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(DRAWINGS_HEADER)
        .expect("in-memory write");
    let show = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        writer
            .write_record(&[
                r.date.clone(),
                r.lottery.clone(),
                show(r.annuity_pre_tax),
                show(r.lump_sum_pre_tax),
                r.jackpot_after_tax.to_string(),
                r.sales.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = "\
date,lottery,annuity,lump_sum,J,N
2007-03-06,mega-millions,390m,233m,,212m
2007-04-07,lotto-texas,75m,45m,33.8m,4.2m
";

    #[test]
    fn backfills_jackpot_from_lump_sum() {
        let records = load_drawings(SAMPLE).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].jackpot_after_tax, 233e6 * 0.75);
        assert_eq!(records[0].sales, 212e6);
        // Explicit J wins over the lump sum.
        assert_eq!(records[1].jackpot_after_tax, 33.8e6);
    }

    #[test]
    fn missing_both_jackpot_columns_is_a_row_error() {
        let text = "date,lottery,annuity,lump_sum,J,N\n2007-01-01,powerball,300m,,,150m\n";
        let err = load_drawings(text).unwrap_err();
        match err {
            CliError::Rows(rows) => {
                assert_eq!(rows.len(), 1);
                assert!(rows[0].contains("row 2"), "{}", rows[0]);
                assert!(rows[0].contains("need J or lump_sum"), "{}", rows[0]);
            }
            other => panic!("expected row errors, got {other:?}"),
        }
    }

    #[test]
    fn all_bad_rows_are_reported() {
        let text = "date,lottery,annuity,lump_sum,J,N\n\
                    ,powerball,,,100m,150m\n\
                    2007-01-01,powerball,,,100m,abc\n\
                    2007-01-02,powerball,,,100m,150m\n";
        match load_drawings(text).unwrap_err() {
            CliError::Rows(rows) => {
                assert_eq!(rows.len(), 2);
                assert!(rows[0].contains("row 2"));
                assert!(rows[1].contains("row 3"));
            }
            other => panic!("expected row errors, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_header() {
        let text = "when,lottery,annuity,lump_sum,J,N\n2007-01-01,x,,,1,1\n";
        assert!(load_drawings(text).is_err());
    }

    #[test]
    fn round_trip_identity() {
        let records = load_drawings(SAMPLE).unwrap();
        let text = serialize_drawings(&records);
        let back = load_drawings(&text).unwrap();
        assert_eq!(records, back);
    }

    proptest! {
        #[test]
        fn round_trip_random_records(
            annuity in proptest::option::of(1e3f64..1e10),
            lump in proptest::option::of(1e3f64..1e10),
            j in 1e3f64..1e10,
            n in 1.0f64..1e10,
        ) {
            let record = DrawingRecord {
                date: "2008-12-31".into(),
                lottery: "powerball".into(),
                annuity_pre_tax: annuity,
                lump_sum_pre_tax: lump,
                jackpot_after_tax: j,
                sales: n,
            };
            let text = serialize_drawings(std::slice::from_ref(&record));
            let back = load_drawings(&text).unwrap();
            prop_assert_eq!(back, vec![record]);
        }
    }
}
