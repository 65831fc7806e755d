//! Autoregression with automatic order selection.
//!
//! Candidate models regress each observation on an intercept, its `p`
//! immediate lags, and (for seasonal data) the one-season lag `m` when `m`
//! is not already among the `p` lags. Orders `p = 1..=max_p` are compared by
//! corrected AIC on a common sample so the criterion values are directly
//! comparable, and the winner is refit on its own maximal sample.
//!
//! Candidates whose normal equations are singular (collinear lags) are
//! skipped; if every order is singular the fit degrades to the intercept-only
//! model (order 0), which predicts the training mean. Forecasts are recursive:
//! each step feeds earlier predictions back as lagged inputs.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A fitted autoregression.
#[derive(Debug, Clone)]
pub struct ArFit {
    /// Intercept followed by one coefficient per entry of `lags`.
    coeffs: Vec<f64>,
    /// Lag offsets, ascending; empty for the intercept-only fallback.
    lags: Vec<usize>,
    /// Chosen autoregressive order (0 = intercept-only).
    order: usize,
    /// Corrected AIC of the winning candidate on the comparison sample.
    aicc: f64,
    /// Training tail, as long as the largest lag.
    history: Vec<f64>,
}

impl ArFit {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn aicc(&self) -> f64 {
        self.aicc
    }

    pub fn intercept(&self) -> f64 {
        self.coeffs[0]
    }

    /// Lag offsets used by the regression, ascending.
    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    /// Recursive forecasts for `1..=horizon` steps ahead.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let mut window = self.history.clone();
        let mut out = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            let mut value = self.coeffs[0];
            for (c, lag) in self.coeffs[1..].iter().zip(&self.lags) {
                value += c * window[window.len() - lag];
            }
            window.push(value);
            out.push(value);
        }
        out
    }
}

/// Fits an autoregression to `train`, selecting the order by minimum AICc
/// over `1..=max_p`. Requires `train.len() >= max_p + 2 * frequency`.
pub fn fit_auto_ar(train: &TimeSeries, max_p: usize) -> Result<ArFit> {
    if max_p == 0 {
        return Err(Error::InvalidInput("max order must be >= 1".into()));
    }
    let y = train.values();
    let n = y.len();
    let m = train.frequency() as usize;
    let need = max_p + 2 * m;
    if n < need {
        return Err(Error::TooShort(format!(
            "autoregression needs at least {need} points (max order {max_p} + \
             two seasons), got {n}"
        )));
    }
    let seasonal = if m > 1 { Some(m) } else { None };

    // All candidates score on the same rows so AICc values are comparable.
    let common_start = max_p.max(seasonal.unwrap_or(0));
    let mut best: Option<(f64, usize, Vec<usize>)> = None;
    for p in 1..=max_p {
        let lags = candidate_lags(p, seasonal);
        let Some((coeffs, rss)) = ols_on_lags(y, &lags, common_start) else {
            continue; // singular design at this order
        };
        let rows = (n - common_start) as f64;
        let k = (coeffs.len() + 1) as f64; // + residual variance
        if rows - k - 1.0 <= 0.0 {
            continue;
        }
        let aicc = rows * (rss / rows).max(f64::MIN_POSITIVE).ln()
            + 2.0 * k
            + 2.0 * k * (k + 1.0) / (rows - k - 1.0);
        if best.as_ref().map_or(true, |(b, _, _)| aicc < *b) {
            best = Some((aicc, p, lags));
        }
    }

    let (aicc, order, lags) = match best {
        Some(b) => b,
        // Every order was collinear (e.g. a constant series); degrade to the
        // intercept-only model.
        None => {
            let rows = (n - common_start) as f64;
            let mean = y[common_start..].iter().sum::<f64>() / rows;
            let rss: f64 = y[common_start..].iter().map(|v| (v - mean) * (v - mean)).sum();
            let k = 2.0;
            let aicc = rows * (rss / rows).max(f64::MIN_POSITIVE).ln()
                + 2.0 * k
                + 2.0 * k * (k + 1.0) / (rows - k - 1.0);
            (aicc, 0, Vec::new())
        }
    };

    // Refit the winner on its own maximal sample.
    let start = lags.iter().copied().max().unwrap_or(0);
    let coeffs = if lags.is_empty() {
        vec![y.iter().sum::<f64>() / n as f64]
    } else {
        match ols_on_lags(y, &lags, start) {
            Some((coeffs, _)) => coeffs,
            None => return Err(Error::SingularDesign),
        }
    };
    let history = y[n - start.max(1)..].to_vec();
    Ok(ArFit {
        coeffs,
        lags,
        order,
        aicc,
        history,
    })
}

fn candidate_lags(p: usize, seasonal: Option<usize>) -> Vec<usize> {
    let mut lags: Vec<usize> = (1..=p).collect();
    if let Some(m) = seasonal {
        if m > p {
            lags.push(m);
        }
    }
    lags
}

/// Least squares of `y[t]` on an intercept and `y[t - lag]` for rows
/// `t >= start`. Returns `(coefficients, rss)`, or `None` when the normal
/// equations are singular.
fn ols_on_lags(y: &[f64], lags: &[usize], start: usize) -> Option<(Vec<f64>, f64)> {
    let d = lags.len() + 1;
    let rows = y.len() - start;
    debug_assert!(rows >= 1 && start >= *lags.iter().max().unwrap_or(&0));
    let mut xtx = vec![vec![0.0f64; d]; d];
    let mut xty = vec![0.0f64; d];
    let mut x = vec![0.0f64; d];
    for t in start..y.len() {
        x[0] = 1.0;
        for (j, lag) in lags.iter().enumerate() {
            x[j + 1] = y[t - lag];
        }
        for i in 0..d {
            for j in i..d {
                xtx[i][j] += x[i] * x[j];
            }
            xty[i] += x[i] * y[t];
        }
    }
    for i in 0..d {
        for j in 0..i {
            xtx[i][j] = xtx[j][i];
        }
    }
    let coeffs = solve_symmetric(&mut xtx, &mut xty)?;
    let mut rss = 0.0;
    for t in start..y.len() {
        let mut pred = coeffs[0];
        for (c, lag) in coeffs[1..].iter().zip(lags) {
            pred += c * y[t - lag];
        }
        let e = y[t] - pred;
        rss += e * e;
    }
    Some((coeffs, rss))
}

/// Solves the symmetric positive definite system `a x = b` by Cholesky
/// factorization; `None` when the matrix is singular (or not positive
/// definite within tolerance), which for normal equations means collinear
/// regressors.
fn solve_symmetric(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let d = b.len();
    let scale = (0..d).fold(0.0f64, |acc, i| acc.max(a[i][i].abs()));
    if scale == 0.0 {
        return None;
    }
    let tol = 1e-12 * scale;
    // Lower-triangular factor written over the lower triangle of `a`.
    for col in 0..d {
        for row in col..d {
            let mut acc = a[row][col];
            for k in 0..col {
                acc -= a[row][k] * a[col][k];
            }
            if row == col {
                if acc < tol {
                    return None;
                }
                a[col][col] = acc.sqrt();
            } else {
                a[row][col] = acc / a[col][col];
            }
        }
    }
    // Forward substitution (L z = b), then back substitution (L' x = z).
    let mut x = vec![0.0; d];
    for row in 0..d {
        let mut acc = b[row];
        for k in 0..row {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    for row in (0..d).rev() {
        let mut acc = x[row];
        for k in row + 1..d {
            acc -= a[k][row] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64;

    fn ar1_series(n: usize, intercept: f64, phi: f64, noise: f64, seed: u64) -> TimeSeries {
        let mut rng = XorShift64::new(seed);
        let mut y = Vec::with_capacity(n);
        let mut prev = intercept / (1.0 - phi);
        for _ in 0..n {
            let v = intercept + phi * prev + noise * (rng.next_f64() - 0.5);
            y.push(v);
            prev = v;
        }
        TimeSeries::new(y, 2000, 1, 1).unwrap()
    }

    #[test]
    fn recovers_ar1_dynamics() {
        let series = ar1_series(300, 5.0, 0.7, 0.2, 9);
        let fit = fit_auto_ar(&series, 12).unwrap();
        assert!(fit.order() >= 1);
        let phi = fit.coeffs[1];
        assert!((phi - 0.7).abs() < 0.1, "phi = {phi}");
    }

    #[test]
    fn recursion_matches_closed_form_for_one_lag() {
        let series = ar1_series(200, 2.0, 0.6, 0.1, 4);
        let fit = fit_auto_ar(&series, 1).unwrap();
        assert_eq!(fit.lags(), &[1]);
        let (c, phi) = (fit.coeffs[0], fit.coeffs[1]);
        let last = *series.values().last().unwrap();
        let forecasts = fit.forecast(5);
        // Closed form: y(h) = phi^h * y(n) + c * (1 + phi + ... + phi^(h-1)).
        let mut geom = 0.0;
        for (h, fc) in forecasts.iter().enumerate() {
            geom = geom * phi + 1.0;
            let expected = phi.powi(h as i32 + 1) * last + c * geom;
            assert!((fc - expected).abs() < 1e-9, "step {h}: {fc} vs {expected}");
        }
    }

    #[test]
    fn constant_series_degrades_to_intercept_only() {
        let series = TimeSeries::new(vec![7.5; 60], 2000, 1, 1).unwrap();
        let fit = fit_auto_ar(&series, 6).unwrap();
        assert_eq!(fit.order(), 0);
        assert!((fit.intercept() - 7.5).abs() < 1e-9);
        for fc in fit.forecast(10) {
            assert!((fc - 7.5).abs() < 1e-9);
        }
    }

    #[test]
    fn periodic_series_is_captured_by_the_seasonal_lag() {
        let pattern = [13.7, 4.21, 27.9, 8.05, 19.3, 2.6, 33.1, 11.8, 24.6, 6.9, 15.2, 30.4];
        let values: Vec<f64> = (0..96).map(|i| pattern[i % 12]).collect();
        let series = TimeSeries::new(values, 2000, 1, 12).unwrap();
        let fit = fit_auto_ar(&series, 12).unwrap();
        let forecasts = fit.forecast(12);
        for (h, fc) in forecasts.iter().enumerate() {
            let expected = pattern[(96 + h) % 12];
            assert!(
                (fc - expected).abs() < 1e-6,
                "step {h}: {fc} vs {expected}"
            );
        }
    }

    #[test]
    fn too_short_is_reported() {
        let series = TimeSeries::new(vec![1.0; 30], 2000, 1, 12).unwrap();
        assert_eq!(fit_auto_ar(&series, 12).unwrap_err().code(), "TOO_SHORT");
        let ok = TimeSeries::new(vec![1.0; 36], 2000, 1, 12).unwrap();
        assert!(fit_auto_ar(&ok, 12).is_ok());
    }

    #[test]
    fn seasonal_lag_included_only_beyond_order() {
        assert_eq!(candidate_lags(3, Some(12)), vec![1, 2, 3, 12]);
        assert_eq!(candidate_lags(12, Some(12)), (1..=12).collect::<Vec<_>>());
        assert_eq!(candidate_lags(2, None), vec![1, 2]);
    }

    #[test]
    fn singular_solver_detects_collinearity() {
        let mut a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        let mut b = vec![1.0, 2.0];
        assert!(solve_symmetric(&mut a, &mut b).is_none());
        let mut a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let mut b = vec![3.0, 5.0];
        let x = solve_symmetric(&mut a, &mut b).unwrap();
        assert!((2.0 * x[0] + x[1] - 3.0).abs() < 1e-12);
        assert!((x[0] + 3.0 * x[1] - 5.0).abs() < 1e-12);
    }
}
