//! Embedded court caseload datasets.
//!
//! Two fixtures from Brazilian state courts ship with the crate as CSV
//! assets so that examples, tests, and the CLI work offline:
//!
//! * `tjrs_year_month`: new proceedings per month at the Rio Grande do Sul
//!   state court (TJRS), January 2000 through December 2017 (216 points);
//! * `tjmg_year_head`: new proceedings per year at the Minas Gerais state
//!   court (TJMG), 2000 through 2009. This is the first decade of a longer
//!   yearly series (whose full total is 4,236,229); only the head ships
//!   here.
//!
//! Each fixture carries a checksum equal to the exact sum of its values,
//! verified at load time, so silent corruption of the embedded assets cannot
//! go unnoticed.

use crate::error::Result;
use crate::series::{parse_csv_stride, serialize_series_csv, Stride, TimeSeries};

const TJRS_YEAR_MONTH_CSV: &str = include_str!("../assets/tjrs_year_month.csv");
const TJMG_YEAR_HEAD_CSV: &str = include_str!("../assets/tjmg_year_head.csv");

/// A named dataset with an integrity checksum (the exact sum of its values).
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub series: TimeSeries,
    pub checksum: u64,
}

impl Fixture {
    fn load(name: &'static str, csv: &str, stride: Stride, checksum: u64) -> Fixture {
        let series = parse_csv_stride(csv, stride)
            .unwrap_or_else(|e| panic!("embedded dataset {name} is corrupt: {e}"));
        let sum: u64 = series.values().iter().map(|v| *v as u64).sum();
        assert_eq!(sum, checksum, "embedded dataset {name} failed its checksum");
        Fixture {
            name,
            series,
            checksum,
        }
    }

    /// The fixture in the CSV exchange format.
    pub fn to_csv(&self) -> Result<String> {
        serialize_series_csv(&self.series)
    }
}

/// Monthly TJRS caseload, 2000-01 through 2017-12.
pub fn tjrs_year_month() -> Fixture {
    Fixture::load(
        "tjrs_year_month",
        TJRS_YEAR_MONTH_CSV,
        Stride::Monthly,
        5_625_666,
    )
}

/// Yearly TJMG caseload, 2000 through 2009.
pub fn tjmg_year_head() -> Fixture {
    Fixture::load(
        "tjmg_year_head",
        TJMG_YEAR_HEAD_CSV,
        Stride::Yearly,
        1_437_411,
    )
}

/// Names accepted by [`by_name`], in listing order.
pub fn names() -> [&'static str; 2] {
    ["tjrs_year_month", "tjmg_year_head"]
}

/// Looks a fixture up by its name.
pub fn by_name(name: &str) -> Option<Fixture> {
    match name {
        "tjrs_year_month" => Some(tjrs_year_month()),
        "tjmg_year_head" => Some(tjmg_year_head()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_series_csv;

    #[test]
    fn tjrs_has_216_months_summing_to_checksum() {
        let f = tjrs_year_month();
        assert_eq!(f.series.len(), 216);
        assert_eq!(f.series.frequency(), 12);
        assert_eq!((f.series.start_year(), f.series.start_period()), (2000, 1));
        let sum: u64 = f.series.values().iter().map(|v| *v as u64).sum();
        assert_eq!(sum, 5_625_666);
        assert_eq!(f.series.values()[0], 12.0);
        assert_eq!(*f.series.values().last().unwrap(), 28945.0);
    }

    #[test]
    fn tjmg_head_matches_published_decade() {
        let f = tjmg_year_head();
        assert_eq!(f.series.frequency(), 1);
        assert_eq!((f.series.start_year(), f.series.start_period()), (2000, 1));
        let expected = [
            38403.0, 49560.0, 66653.0, 81005.0, 92012.0, 107442.0, 164101.0, 213774.0,
            280847.0, 343614.0,
        ];
        assert_eq!(f.series.values(), expected);
        assert_eq!(f.checksum, 1_437_411);
    }

    #[test]
    fn monthly_fixture_round_trips_through_csv() {
        let f = tjrs_year_month();
        let text = f.to_csv().unwrap();
        let reparsed = parse_series_csv(&text).unwrap();
        assert_eq!(reparsed, f.series);
        // A second serialization is byte-identical.
        let again = serialize_series_csv(&reparsed).unwrap();
        assert_eq!(again, text);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("tjrs_year_month").unwrap().series.len(), 216);
        assert_eq!(by_name("tjmg_year_head").unwrap().series.len(), 10);
        assert!(by_name("nope").is_none());
        for name in names() {
            assert!(by_name(name).is_some());
        }
    }
}
