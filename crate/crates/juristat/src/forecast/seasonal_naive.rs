//! Seasonal naive forecasting: repeat the last observed season.
//!
//! The h-step forecast is the value observed one season before the target
//! period, so the final season of training repeats forever. A frequency-1
//! series degrades to the plain naive forecast (repeat the last value).

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A fitted seasonal naive model: the last full season of training.
#[derive(Debug, Clone)]
pub struct SnFit {
    last_season: Vec<f64>,
}

impl SnFit {
    /// Forecasts for `1..=horizon` steps ahead by cycling the stored season.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let m = self.last_season.len();
        (1..=horizon).map(|h| self.last_season[(h - 1) % m]).collect()
    }
}

/// Fits the seasonal naive model. Requires at least one full season.
pub fn fit_seasonal_naive(train: &TimeSeries) -> Result<SnFit> {
    let m = train.frequency() as usize;
    if train.len() < m {
        return Err(Error::TooShort(format!(
            "seasonal naive needs one full season ({m} points), got {}",
            train.len()
        )));
    }
    Ok(SnFit {
        last_season: train.values()[train.len() - m..].to_vec(),
    })
}
