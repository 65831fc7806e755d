//! Additive Holt-Winters exponential smoothing.
//!
//! The three smoothing weights are chosen by in-sample one-step squared
//! error: a coarse grid over {0, 0.1, ..., 1} is followed by one refinement
//! pass at 0.01 resolution in a +/-0.1 window around the coarse optimum,
//! all clipped to [0, 1]. Ties keep the first candidate in scan order, so
//! the fit is deterministic.
//!
//! Initial state comes from the first two seasons: the trend is the
//! per-period change between their means, the level is placed at the end of
//! the first season, and the seasonal offsets are the first season's
//! detrended deviations. With this start a perfectly linear series has zero
//! seasonal offsets and is reproduced exactly.
//!
//! A frequency-1 series degrades to Holt's trend-only method: the single
//! seasonal offset is identically zero and gamma is pinned to 0.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A fitted additive Holt-Winters model.
#[derive(Debug, Clone)]
pub struct HwFit {
    alpha: f64,
    beta: f64,
    gamma: f64,
    /// Level at the end of training.
    level: f64,
    /// Trend at the end of training.
    trend: f64,
    /// Seasonal offsets indexed by absolute period position (`t % m`).
    seasonal: Vec<f64>,
    /// Season position of the first post-training step.
    phase: usize,
    /// In-sample one-step squared-error total at the optimum.
    sse: f64,
}

impl HwFit {
    pub fn params(&self) -> (f64, f64, f64) {
        (self.alpha, self.beta, self.gamma)
    }

    pub fn sse(&self) -> f64 {
        self.sse
    }

    /// Forecasts for `1..=horizon` steps ahead: level + h * trend plus the
    /// seasonal offset of the target period.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let m = self.seasonal.len();
        (1..=horizon)
            .map(|h| self.level + h as f64 * self.trend + self.seasonal[(self.phase + h - 1) % m])
            .collect()
    }
}

struct SmootherRun {
    sse: f64,
    level: f64,
    trend: f64,
    seasonal: Vec<f64>,
}

/// Fits additive Holt-Winters to `train`.
/// Requires at least two full seasons of data.
pub fn fit_holt_winters(train: &TimeSeries) -> Result<HwFit> {
    let y = train.values();
    let n = y.len();
    let m = train.frequency() as usize;
    if n < 2 * m || n < 2 {
        return Err(Error::TooShort(format!(
            "Holt-Winters needs at least two full seasons ({} points), got {n}",
            (2 * m).max(2)
        )));
    }

    let init = InitialState::from_first_two_seasons(y, m);

    let mut best: Option<(f64, f64, f64, SmootherRun)> = None;
    let consider = |alpha: f64, beta: f64, gamma: f64, best: &mut Option<(f64, f64, f64, SmootherRun)>| {
        let run = smooth(y, m, &init, alpha, beta, gamma);
        if best.as_ref().map_or(true, |(_, _, _, b)| run.sse < b.sse) {
            *best = Some((alpha, beta, gamma, run));
        }
    };

    let gamma_grid_max = if m > 1 { 10 } else { 0 };
    for ai in 0..=10u32 {
        for bi in 0..=10u32 {
            for gi in 0..=gamma_grid_max {
                consider(ai as f64 / 10.0, bi as f64 / 10.0, gi as f64 / 10.0, &mut best);
            }
        }
    }
    let (a0, b0, g0) = best.as_ref().map(|(a, b, g, _)| (*a, *b, *g)).unwrap();

    // Refine in centi-steps around the coarse optimum.
    let window = |center: f64| {
        let c = (center * 100.0).round() as i64;
        ((c - 10).max(0) as u32)..=((c + 10).min(100) as u32)
    };
    for ac in window(a0) {
        for bc in window(b0) {
            let gammas: Vec<u32> = if m > 1 { window(g0).collect() } else { vec![0] };
            for gc in gammas {
                consider(ac as f64 / 100.0, bc as f64 / 100.0, gc as f64 / 100.0, &mut best);
            }
        }
    }

    let (alpha, beta, gamma, run) = best.unwrap();
    Ok(HwFit {
        alpha,
        beta,
        gamma,
        level: run.level,
        trend: run.trend,
        seasonal: run.seasonal,
        phase: n % m,
        sse: run.sse,
    })
}

struct InitialState {
    /// Level at position m-1 (end of the first season).
    level: f64,
    /// Per-period trend.
    trend: f64,
    /// Detrended first-season offsets.
    seasonal: Vec<f64>,
}

impl InitialState {
    fn from_first_two_seasons(y: &[f64], m: usize) -> InitialState {
        let mf = m as f64;
        let mean1 = y[..m].iter().sum::<f64>() / mf;
        let mean2 = y[m..2 * m].iter().sum::<f64>() / mf;
        let trend = (mean2 - mean1) / mf;
        let mid = (mf - 1.0) / 2.0;
        let seasonal = (0..m)
            .map(|i| y[i] - (mean1 + (i as f64 - mid) * trend))
            .collect();
        InitialState {
            level: mean1 + mid * trend,
            trend,
            seasonal,
        }
    }
}

/// Runs the additive smoother over `y[m..]` from the initial state and
/// returns the one-step SSE together with the final state.
fn smooth(y: &[f64], m: usize, init: &InitialState, alpha: f64, beta: f64, gamma: f64) -> SmootherRun {
    let mut level = init.level;
    let mut trend = init.trend;
    let mut seasonal = init.seasonal.clone();
    let mut sse = 0.0;
    for t in m..y.len() {
        let pos = t % m;
        let pred = level + trend + seasonal[pos];
        let e = y[t] - pred;
        sse += e * e;
        let new_level = alpha * (y[t] - seasonal[pos]) + (1.0 - alpha) * (level + trend);
        trend = beta * (new_level - level) + (1.0 - beta) * trend;
        seasonal[pos] = gamma * (y[t] - new_level) + (1.0 - gamma) * seasonal[pos];
        level = new_level;
    }
    SmootherRun {
        sse,
        level,
        trend,
        seasonal,
    }
}
