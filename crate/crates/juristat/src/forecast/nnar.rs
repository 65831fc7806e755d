//! Neural autoregression: a feed-forward net on lagged values.
//!
//! Inputs are the `p` immediate lags plus `P` seasonal lags (one season
//! apart), standardized by the training mean and standard deviation. A
//! single hidden layer of `max(1, floor((p + P + 1) / 2))` sigmoid units
//! feeds a linear output. Each of `repeats` nets starts from its own seeded
//! uniform(-0.7, 0.7) initialization and trains by full-batch gradient
//! descent with a halving step size: a step that does not reduce the loss is
//! rejected and the learning rate halves. Point forecasts average the nets
//! and feed the ensemble mean back recursively.
//!
//! Prediction intervals come from a residual bootstrap: simulated paths
//! re-add randomly drawn in-sample residuals at every step and per-step
//! quantiles of the simulated distribution form the band.

use crate::error::{Error, Result};
use crate::rng::XorShift64;
use crate::series::TimeSeries;

/// Architecture and training settings for a neural autoregression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnarSpec {
    /// Number of immediate lags (>= 1).
    pub p: usize,
    /// Number of seasonal lags: multiples of the frequency up to `seasonal_p`
    /// seasons back. Zero for non-seasonal fits.
    pub seasonal_p: usize,
    /// Ensemble size (>= 1). Nets are seeded `seed, seed + 1, ...`.
    pub repeats: usize,
    /// Base seed for weight initialization.
    pub seed: u64,
}

impl NnarSpec {
    pub fn new(p: usize, seasonal_p: usize, repeats: usize, seed: u64) -> Result<NnarSpec> {
        if p == 0 {
            return Err(Error::InvalidInput("lag order p must be >= 1".into()));
        }
        if repeats == 0 {
            return Err(Error::InvalidInput("ensemble needs at least one net".into()));
        }
        Ok(NnarSpec {
            p,
            seasonal_p,
            repeats,
            seed,
        })
    }

    /// Hidden layer width: half the input count, rounded down, at least one.
    pub fn hidden_units(&self) -> usize {
        ((self.p + self.seasonal_p + 1) / 2).max(1)
    }

    /// Derives a spec from the data: `p` is chosen by the linear
    /// autoregression's order selection (falling back to 1 when the series
    /// is too short or degenerate), one seasonal lag is used whenever the
    /// series is seasonal, and the ensemble has 20 nets.
    pub fn auto(train: &TimeSeries, seed: u64) -> NnarSpec {
        let m = train.frequency() as usize;
        let n = train.len();
        let seasonal_p = if m > 1 { 1 } else { 0 };
        let budget = n.saturating_sub(2 * m).min(super::DEFAULT_MAX_P);
        let mut p = 1;
        if budget >= 1 {
            if let Ok(ar) = super::fit_auto_ar(train, budget) {
                p = ar.order().max(1);
            }
        }
        // Leave at least one training row for the net.
        let cap = n.saturating_sub(seasonal_p * m + 1).max(1);
        NnarSpec {
            p: p.min(cap),
            seasonal_p,
            repeats: 20,
            seed,
        }
    }
}

/// A fitted neural autoregression ensemble.
#[derive(Debug, Clone)]
pub struct NnarFit {
    nets: Vec<Net>,
    /// Lag offsets feeding the input layer, ascending.
    lags: Vec<usize>,
    /// Training tail, as long as the largest lag.
    history: Vec<f64>,
    mean: f64,
    sd: f64,
    /// In-sample one-step residuals of the ensemble mean, original scale.
    residuals: Vec<f64>,
}

impl NnarFit {
    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    pub fn hidden_units(&self) -> usize {
        self.nets[0].hidden
    }

    /// Recursive forecasts for `1..=horizon` steps: each step feeds the
    /// ensemble mean back as the newest observation.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let mut window = self.history.clone();
        let mut out = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            let value = self.step(&window);
            window.push(value);
            out.push(value);
        }
        out
    }

    /// One-step ensemble prediction from a window of original-scale values.
    fn step(&self, window: &[f64]) -> f64 {
        let x: Vec<f64> = self
            .lags
            .iter()
            .map(|lag| (window[window.len() - lag] - self.mean) / self.sd)
            .collect();
        let z = self.nets.iter().map(|net| net.forward(&x)).sum::<f64>() / self.nets.len() as f64;
        self.mean + self.sd * z
    }
}

/// One hidden-layer network. Hidden weights are stored unit-major as
/// `inputs..., bias` per unit; the output layer as `unit weights..., bias`.
#[derive(Debug, Clone)]
struct Net {
    hidden: usize,
    inputs: usize,
    w_hidden: Vec<f64>,
    w_out: Vec<f64>,
}

impl Net {
    fn forward(&self, x: &[f64]) -> f64 {
        let mut out = self.w_out[self.hidden];
        for unit in 0..self.hidden {
            let row = &self.w_hidden[unit * (self.inputs + 1)..(unit + 1) * (self.inputs + 1)];
            let mut pre = row[self.inputs];
            for (w, xi) in row[..self.inputs].iter().zip(x) {
                pre += w * xi;
            }
            out += self.w_out[unit] * sigmoid(pre);
        }
        out
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Fits a neural autoregression to `train`.
/// Requires enough points for at least one training row.
pub fn fit_nnar(train: &TimeSeries, spec: &NnarSpec) -> Result<NnarFit> {
    let m = train.frequency() as usize;
    let mut lags: Vec<usize> = (1..=spec.p).collect();
    for j in 1..=spec.seasonal_p {
        let lag = j * m;
        if !lags.contains(&lag) {
            lags.push(lag);
        }
    }
    lags.sort_unstable();
    let max_lag = *lags.last().unwrap();

    let y = train.values();
    let n = y.len();
    if n < max_lag + 1 {
        return Err(Error::TooShort(format!(
            "neural autoregression with largest lag {max_lag} needs at least {} points, got {n}",
            max_lag + 1
        )));
    }

    let mean = y.iter().sum::<f64>() / n as f64;
    let var = y.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    let sd = if var.sqrt() > 0.0 && var.is_finite() {
        var.sqrt()
    } else {
        1.0 // constant series standardize to all zeros
    };
    let z: Vec<f64> = y.iter().map(|v| (v - mean) / sd).collect();

    let inputs = lags.len();
    let rows: Vec<(Vec<f64>, f64)> = (max_lag..n)
        .map(|t| {
            let x = lags.iter().map(|lag| z[t - lag]).collect();
            (x, z[t])
        })
        .collect();

    let hidden = spec.hidden_units();
    let nets: Vec<Net> = (0..spec.repeats)
        .map(|r| train_net(&rows, inputs, hidden, spec.seed.wrapping_add(r as u64)))
        .collect();

    let mut fit = NnarFit {
        nets,
        lags,
        history: y[n - max_lag..].to_vec(),
        mean,
        sd,
        residuals: Vec::new(),
    };
    fit.residuals = (max_lag..n)
        .map(|t| y[t] - fit.step(&y[..t]))
        .collect();
    Ok(fit)
}

const EPOCHS: usize = 2000;
const INITIAL_LEARNING_RATE: f64 = 0.01;

/// Full-batch gradient descent on half mean squared error. A candidate step
/// that fails to reduce the loss is discarded and the rate halves, so the
/// loss trace is non-increasing and the result depends only on the seed.
fn train_net(rows: &[(Vec<f64>, f64)], inputs: usize, hidden: usize, seed: u64) -> Net {
    let mut rng = XorShift64::new(seed);
    let mut net = Net {
        hidden,
        inputs,
        w_hidden: (0..hidden * (inputs + 1))
            .map(|_| rng.next_range(-0.7, 0.7))
            .collect(),
        w_out: (0..hidden + 1).map(|_| rng.next_range(-0.7, 0.7)).collect(),
    };
    let mut loss = batch_loss(&net, rows);
    let mut rate = INITIAL_LEARNING_RATE;
    for _ in 0..EPOCHS {
        let (gh, go) = batch_gradient(&net, rows);
        let mut candidate = net.clone();
        for (w, g) in candidate.w_hidden.iter_mut().zip(&gh) {
            *w -= rate * g;
        }
        for (w, g) in candidate.w_out.iter_mut().zip(&go) {
            *w -= rate * g;
        }
        let candidate_loss = batch_loss(&candidate, rows);
        if candidate_loss.is_finite() && candidate_loss < loss {
            net = candidate;
            loss = candidate_loss;
        } else {
            rate *= 0.5;
            if rate < 1e-12 {
                break;
            }
        }
    }
    net
}

fn batch_loss(net: &Net, rows: &[(Vec<f64>, f64)]) -> f64 {
    let total: f64 = rows
        .iter()
        .map(|(x, target)| {
            let e = net.forward(x) - target;
            e * e
        })
        .sum();
    0.5 * total / rows.len() as f64
}

fn batch_gradient(net: &Net, rows: &[(Vec<f64>, f64)]) -> (Vec<f64>, Vec<f64>) {
    let stride = net.inputs + 1;
    let mut gh = vec![0.0; net.hidden * stride];
    let mut go = vec![0.0; net.hidden + 1];
    let mut activations = vec![0.0; net.hidden];
    for (x, target) in rows {
        let mut out = net.w_out[net.hidden];
        for unit in 0..net.hidden {
            let row = &net.w_hidden[unit * stride..(unit + 1) * stride];
            let mut pre = row[net.inputs];
            for (w, xi) in row[..net.inputs].iter().zip(x) {
                pre += w * xi;
            }
            let a = sigmoid(pre);
            activations[unit] = a;
            out += net.w_out[unit] * a;
        }
        let e = out - target;
        go[net.hidden] += e;
        for unit in 0..net.hidden {
            let a = activations[unit];
            go[unit] += e * a;
            let dpre = e * net.w_out[unit] * a * (1.0 - a);
            let g = &mut gh[unit * stride..(unit + 1) * stride];
            for (gi, xi) in g[..net.inputs].iter_mut().zip(x) {
                *gi += dpre * xi;
            }
            g[net.inputs] += dpre;
        }
    }
    let scale = 1.0 / rows.len() as f64;
    for g in gh.iter_mut().chain(go.iter_mut()) {
        *g *= scale;
    }
    (gh, go)
}

/// Residual-bootstrap prediction bands: `paths` simulated trajectories each
/// re-add a uniformly drawn in-sample residual at every step (and feed the
/// noisy value back), then per-step quantiles at `(1 - level) / 2` and
/// `1 - (1 - level) / 2` bound the band.
pub(crate) fn bootstrap_band(
    fit: &NnarFit,
    horizon: usize,
    level: f64,
    paths: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    assert!(paths >= 2 && horizon >= 1 && (0.0..1.0).contains(&level) && level > 0.0);
    let mut rng = XorShift64::new(seed);
    let mut per_step: Vec<Vec<f64>> = vec![Vec::with_capacity(paths); horizon];
    for _ in 0..paths {
        let mut window = fit.history.clone();
        for slot in per_step.iter_mut() {
            let shock = fit.residuals[rng.next_index(fit.residuals.len())];
            let value = fit.step(&window) + shock;
            window.push(value);
            slot.push(value);
        }
    }
    let lo_q = (1.0 - level) / 2.0;
    let mut lower = Vec::with_capacity(horizon);
    let mut upper = Vec::with_capacity(horizon);
    for slot in per_step.iter_mut() {
        slot.sort_by(f64::total_cmp);
        lower.push(quantile(slot, lo_q));
        upper.push(quantile(slot, 1.0 - lo_q));
    }
    (lower, upper)
}

/// Linear interpolation between order statistics of a sorted slice.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}
