//! Time-indexed series, the CSV exchange format, and the holdout split.
//!
//! A [`TimeSeries`] is a non-empty run of finite values observed at a fixed
//! cadence: `frequency` periods per year, starting at `(start_year,
//! start_period)` with `1 <= start_period <= frequency`. Monthly data uses
//! frequency 12, yearly data frequency 1; any positive frequency is accepted
//! by the type itself.
//!
//! The CSV exchange format is two columns with the exact header
//! `yearMonth,count`, ISO `YYYY-MM-DD` dates pinned to day 01 (one bin per
//! calendar month or year), strictly increasing and gap-free. Counts are
//! non-negative integers. Both LF and CRLF line endings are accepted on
//! input; output always uses LF.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evenly spaced observations with a calendar anchor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr")]
pub struct TimeSeries {
    start_year: i32,
    start_period: u32,
    frequency: u32,
    values: Vec<f64>,
}

/// Unvalidated mirror of [`TimeSeries`] used to re-check invariants when
/// deserializing.
#[derive(Deserialize)]
struct SeriesRepr {
    start_year: i32,
    start_period: u32,
    frequency: u32,
    values: Vec<f64>,
}

impl TryFrom<SeriesRepr> for TimeSeries {
    type Error = Error;

    fn try_from(raw: SeriesRepr) -> Result<TimeSeries> {
        TimeSeries::new(raw.values, raw.start_year, raw.start_period, raw.frequency)
    }
}

impl TimeSeries {
    /// Builds a series, validating that it is non-empty, every value is
    /// finite, `frequency >= 1`, and `1 <= start_period <= frequency`.
    pub fn new(
        values: Vec<f64>,
        start_year: i32,
        start_period: u32,
        frequency: u32,
    ) -> Result<TimeSeries> {
        if values.is_empty() {
            return Err(Error::InvalidInput("series must be non-empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "series values must be finite, found {bad}"
            )));
        }
        if frequency == 0 {
            return Err(Error::InvalidInput("frequency must be >= 1".into()));
        }
        if start_period == 0 || start_period > frequency {
            return Err(Error::InvalidInput(format!(
                "start period {start_period} outside 1..={frequency}"
            )));
        }
        Ok(TimeSeries {
            start_year,
            start_period,
            frequency,
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start_year(&self) -> i32 {
        self.start_year
    }

    pub fn start_period(&self) -> u32 {
        self.start_period
    }

    pub fn frequency(&self) -> u32 {
        self.frequency
    }

    /// Calendar position `(year, period)` of observation `i` (0-based).
    pub fn period_at(&self, i: usize) -> (i32, u32) {
        let freq = self.frequency as u64;
        let abs = (self.start_period as u64 - 1) + i as u64;
        let year = self.start_year + (abs / freq) as i32;
        let period = (abs % freq) as u32 + 1;
        (year, period)
    }

    /// Calendar position of the first period after the last observation.
    pub fn period_after_end(&self) -> (i32, u32) {
        self.period_at(self.len())
    }

    /// The series restricted to its last `min(k, len)` observations, with the
    /// calendar anchor advanced to match. `k` must be positive.
    pub fn last_points(&self, k: usize) -> TimeSeries {
        assert!(k > 0, "last_points needs k >= 1");
        if k >= self.len() {
            return self.clone();
        }
        let drop = self.len() - k;
        let (year, period) = self.period_at(drop);
        TimeSeries {
            start_year: year,
            start_period: period,
            frequency: self.frequency,
            values: self.values[drop..].to_vec(),
        }
    }
}

/// Hold-out split by leading fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    train_fraction: f64,
}

impl SplitSpec {
    /// `train_fraction` must lie strictly between 0 and 1.
    pub fn new(train_fraction: f64) -> Result<SplitSpec> {
        if !train_fraction.is_finite() || train_fraction <= 0.0 || train_fraction >= 1.0 {
            return Err(Error::InvalidInput(format!(
                "train fraction must be in (0, 1), got {train_fraction}"
            )));
        }
        Ok(SplitSpec { train_fraction })
    }

    pub fn train_fraction(&self) -> f64 {
        self.train_fraction
    }
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.8,
        }
    }
}

/// Splits a series into `(train, test)` where the train segment holds the
/// first `floor(train_fraction * n)` observations and the test segment the
/// rest. Concatenating the two halves reproduces the input.
///
/// Errors with [`Error::TooShort`] when the train segment would hold fewer
/// than `2 * frequency` observations, the minimum any seasonal model needs.
pub fn split(series: &TimeSeries, spec: &SplitSpec) -> Result<(TimeSeries, TimeSeries)> {
    let n = series.len();
    let train_len = ((spec.train_fraction * n as f64).floor() as usize).min(n - 1);
    let need = 2 * series.frequency as usize;
    if train_len < need {
        return Err(Error::TooShort(format!(
            "train segment of {train_len} points < 2 * frequency = {need} (n = {n})"
        )));
    }
    let (test_year, test_period) = series.period_at(train_len);
    let train = TimeSeries {
        start_year: series.start_year,
        start_period: series.start_period,
        frequency: series.frequency,
        values: series.values[..train_len].to_vec(),
    };
    let test = TimeSeries {
        start_year: test_year,
        start_period: test_period,
        frequency: series.frequency,
        values: series.values[train_len..].to_vec(),
    };
    Ok((train, test))
}

/// Mean squared error between two equal-length, non-empty slices.
pub fn mse(observed: &[f64], predicted: &[f64]) -> Result<f64> {
    if observed.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: observed.len(),
            right: predicted.len(),
        });
    }
    if observed.is_empty() {
        return Err(Error::InvalidInput("mse needs at least one point".into()));
    }
    let sum: f64 = observed
        .iter()
        .zip(predicted)
        .map(|(o, p)| (o - p) * (o - p))
        .sum();
    Ok(sum / observed.len() as f64)
}

/// Date stride of a CSV file: one bin per month or per year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Stride {
    Monthly,
    Yearly,
}

/// Parses the monthly CSV exchange format (header `yearMonth,count`, day-01
/// ISO dates advancing one month per row, non-negative integer counts).
/// The result has frequency 12 and starts at the first row's month.
pub fn parse_series_csv(text: &str) -> Result<TimeSeries> {
    parse_csv_stride(text, Stride::Monthly)
}

pub(crate) fn parse_csv_stride(text: &str, stride: Stride) -> Result<TimeSeries> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == "yearMonth,count" => {}
        Some((_, header)) => {
            return Err(Error::MalformedRow {
                line: 1,
                reason: format!(
                    "expected header \"yearMonth,count\", found {:?}",
                    header.trim_end_matches('\r')
                ),
            })
        }
        None => {
            return Err(Error::MalformedRow {
                line: 1,
                reason: "missing header row".into(),
            })
        }
    }

    let mut values = Vec::new();
    let mut start: Option<(i32, u32)> = None;
    let mut prev: Option<(i32, u32)> = None;
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        let (date, count) = row.split_once(',').ok_or_else(|| Error::MalformedRow {
            line,
            reason: "expected two comma-separated columns".into(),
        })?;
        let (year, month) = parse_bin_date(date, stride).map_err(|reason| Error::MalformedRow {
            line,
            reason,
        })?;
        if !count.is_empty() && count.bytes().all(|b| b.is_ascii_digit()) {
            let parsed: u64 = count.parse().map_err(|_| Error::MalformedRow {
                line,
                reason: format!("count {count:?} exceeds the integer range"),
            })?;
            values.push(parsed as f64);
        } else {
            return Err(Error::MalformedRow {
                line,
                reason: format!("count must be a non-negative integer, found {count:?}"),
            });
        }
        if let Some((py, pm)) = prev {
            let expected = match stride {
                Stride::Monthly => {
                    if pm == 12 {
                        (py + 1, 1)
                    } else {
                        (py, pm + 1)
                    }
                }
                Stride::Yearly => (py + 1, pm),
            };
            if (year, month) != expected {
                return Err(Error::NonContiguous {
                    line,
                    reason: format!(
                        "expected {:04}-{:02}, found {year:04}-{month:02}",
                        expected.0, expected.1
                    ),
                });
            }
        }
        prev = Some((year, month));
        if start.is_none() {
            start = Some((year, month));
        }
    }

    let (start_year, start_month) = start.ok_or(Error::Empty)?;
    match stride {
        Stride::Monthly => TimeSeries::new(values, start_year, start_month, 12),
        Stride::Yearly => TimeSeries::new(values, start_year, 1, 1),
    }
}

/// Parses `YYYY-MM-01`; yearly bins additionally require January.
fn parse_bin_date(date: &str, stride: Stride) -> std::result::Result<(i32, u32), String> {
    let bytes = date.as_bytes();
    if bytes.len() != 10 || bytes[4] != b'-' || bytes[7] != b'-' {
        return Err(format!("date {date:?} is not in YYYY-MM-DD form"));
    }
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    let (y, m, d) = (&date[..4], &date[5..7], &date[8..10]);
    if !digits(y) || !digits(m) || !digits(d) {
        return Err(format!("date {date:?} is not in YYYY-MM-DD form"));
    }
    let year: i32 = y.parse().expect("4 digits");
    let month: u32 = m.parse().expect("2 digits");
    if !(1..=12).contains(&month) {
        return Err(format!("month {month:02} outside 01..=12"));
    }
    if d != "01" {
        return Err(format!("day must be 01 for binned dates, found {d}"));
    }
    if stride == Stride::Yearly && month != 1 {
        return Err(format!("yearly bins must fall on January, found month {m}"));
    }
    Ok((year, month))
}

/// Serializes a monthly or yearly series back to the CSV exchange format,
/// the exact inverse of [`parse_series_csv`] for integer-valued series.
/// Integer values print without a decimal point; anything else uses the
/// shortest round-trip representation.
pub fn serialize_series_csv(series: &TimeSeries) -> Result<String> {
    match series.frequency() {
        1 | 12 => {}
        other => return Err(Error::UnsupportedFrequency(other)),
    }
    let mut out = String::from("yearMonth,count\n");
    for (i, v) in series.values().iter().enumerate() {
        let (year, period) = series.period_at(i);
        if !(0..=9999).contains(&year) {
            return Err(Error::InvalidInput(format!(
                "year {year} not representable as YYYY"
            )));
        }
        let month = if series.frequency() == 12 { period } else { 1 };
        out.push_str(&format!("{year:04}-{month:02}-01,{}\n", format_count(*v)));
    }
    Ok(out)
}

fn format_count(v: f64) -> String {
    const EXACT_INT: f64 = 9_007_199_254_740_992.0; // 2^53
    if v.fract() == 0.0 && v.abs() < EXACT_INT {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
