//! Majority-vote reliability of an odd panel of independent deciders.
//!
//! Each of `n` panelists independently reaches the correct decision with
//! probability `theta`. The probability that the panel majority is correct
//! is the upper tail of a Binomial(n, theta) distribution:
//!
//! ```text
//! P(n, theta) = sum_{i = (n+1)/2}^{n} C(n, i) theta^i (1 - theta)^(n - i)
//! ```
//!
//! For competent deciders (`theta > 1/2`) this probability exceeds `theta`
//! for every odd `n >= 3` and increases monotonically toward 1 as the panel
//! grows; for `theta < 1/2` the mirror statements hold with the direction
//! reversed, and at `theta = 1/2` the panel is a coin flip regardless of
//! size. Those facts back [`min_panel_size`]'s binary search and are pinned
//! down by the test suite.
//!
//! Binomial coefficients are computed exactly in 128-bit integers up to
//! `n = 60` and in log space above that, where the coefficients no longer
//! fit the 53-bit float mantissa.

use crate::error::{Error, Result};
use crate::rng::XorShift64;

/// Largest panel size [`min_panel_size`] will consider.
pub const PANEL_SEARCH_CAP: u64 = 1_000_000;

/// Exact binomials below this; log-space above.
const EXACT_LIMIT: u64 = 60;

/// A validated panel: odd positive size, per-member competence in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelSpec {
    n: u64,
    theta: f64,
}

impl PanelSpec {
    pub fn new(n: u64, theta: f64) -> Result<PanelSpec> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::EvenPanel(n));
        }
        if !theta.is_finite() || !(0.0..=1.0).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "competence must lie in [0, 1], got {theta}"
            )));
        }
        Ok(PanelSpec { n, theta })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Exact probability that a strict majority of the panel decides correctly.
pub fn majority_prob(spec: &PanelSpec) -> f64 {
    let (n, theta) = (spec.n, spec.theta);
    if theta == 0.0 {
        return 0.0;
    }
    if theta == 1.0 {
        return 1.0;
    }
    binom_upper_tail(n, n / 2 + 1, theta, n > EXACT_LIMIT)
}

/// `sum_{i=k}^{n} C(n, i) theta^i (1-theta)^(n-i)` for `0 < theta < 1`.
fn binom_upper_tail(n: u64, k: u64, theta: f64, log_space: bool) -> f64 {
    debug_assert!(k >= 1 && k <= n);
    let total = if log_space {
        // ln C(n, k) accumulated term by term, then advanced by the ratio
        // C(n, i+1) = C(n, i) * (n - i) / (i + 1).
        let mut ln_c = 0.0;
        for j in 1..=k {
            ln_c += ((n - k + j) as f64).ln() - (j as f64).ln();
        }
        let (ln_t, ln_f) = (theta.ln(), (1.0 - theta).ln());
        let mut sum = 0.0;
        for i in k..=n {
            sum += (ln_c + i as f64 * ln_t + (n - i) as f64 * ln_f).exp();
            if i < n {
                ln_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
            }
        }
        sum
    } else {
        // C(n, k) by the multiplicative formula; every intermediate division
        // is exact because the running value is itself a binomial coefficient.
        let r = k.min(n - k);
        let mut c: u128 = 1;
        for j in 1..=r {
            c = c * (n - r + j) as u128 / j as u128;
        }
        let fail = 1.0 - theta;
        let mut sum = 0.0;
        for i in k..=n {
            sum += c as f64 * theta.powi(i as i32) * fail.powi((n - i) as i32);
            if i < n {
                c = c * (n - i) as u128 / (i + 1) as u128;
            }
        }
        sum
    };
    total.clamp(0.0, 1.0)
}

/// Monte Carlo estimate of [`majority_prob`] from `trials` simulated panel
/// votes. Deterministic for a given seed on every platform; runs in
/// `O(trials * n)`.
pub fn majority_prob_mc(spec: &PanelSpec, trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    let mut rng = XorShift64::new(seed);
    let mut hits: u64 = 0;
    for _ in 0..trials {
        let mut correct: u64 = 0;
        for _ in 0..spec.n {
            if rng.next_f64() < spec.theta {
                correct += 1;
            }
        }
        if 2 * correct > spec.n {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

/// Smallest odd panel size whose majority reaches `target` reliability,
/// searched up to [`PANEL_SEARCH_CAP`].
///
/// Requires `theta` in `(0.5, 1)` and `target` in `(0, 1)`; monotonicity in
/// the panel size (see the module docs) makes exponential growth followed by
/// binary search over odd sizes correct.
pub fn min_panel_size(theta: f64, target: f64) -> Result<u64> {
    if !theta.is_finite() || theta <= 0.5 || theta >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "competence must lie in (0.5, 1), got {theta}"
        )));
    }
    if !target.is_finite() || target <= 0.0 || target >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "target must lie in (0, 1), got {target}"
        )));
    }
    let cap_odd = PANEL_SEARCH_CAP - 1; // largest odd size within the cap
    let prob = |n: u64| majority_prob(&PanelSpec { n, theta });

    if prob(1) >= target {
        return Ok(1);
    }
    // Grow until the target is bracketed.
    let mut lo = 1u64;
    let mut hi = 3u64;
    loop {
        if prob(hi) >= target {
            break;
        }
        if hi >= cap_odd {
            return Err(Error::CapExceeded {
                cap: PANEL_SEARCH_CAP,
            });
        }
        lo = hi;
        hi = (2 * hi + 1).min(cap_odd);
    }
    // Shrink the bracket: lo always misses the target, hi always meets it.
    while hi - lo > 2 {
        let mut mid = lo + (hi - lo) / 2;
        if mid % 2 == 0 {
            mid += 1;
        }
        if prob(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: enumerate all 2^n vote patterns.
    fn enumerated_majority_prob(n: u64, theta: f64) -> f64 {
        assert!(n <= 20);
        let mut total = 0.0;
        for mask in 0u64..(1 << n) {
            let correct = mask.count_ones() as u64;
            if 2 * correct > n {
                total += theta.powi(correct as i32) * (1.0 - theta).powi((n - correct) as i32);
            }
        }
        total
    }

    fn p(n: u64, theta: f64) -> f64 {
        majority_prob(&PanelSpec::new(n, theta).unwrap())
    }

    #[test]
    fn golden_three_member_panels() {
        assert!((p(3, 0.6) - 0.648).abs() < 1e-12);
        assert!((p(3, 0.3) - 0.216).abs() < 1e-12);
        assert!((p(3, 0.5) - 0.5).abs() < 1e-12);
        assert!((p(5, 0.6) - 0.68256).abs() < 1e-12);
    }

    #[test]
    fn degenerate_competence() {
        assert_eq!(p(7, 0.0), 0.0);
        assert_eq!(p(7, 1.0), 1.0);
        assert_eq!(p(1, 0.37), 0.37);
    }

    #[test]
    fn panel_spec_validation() {
        assert_eq!(PanelSpec::new(4, 0.5).unwrap_err().code(), "EVEN_PANEL");
        assert_eq!(PanelSpec::new(0, 0.5).unwrap_err().code(), "EVEN_PANEL");
        assert_eq!(PanelSpec::new(3, -0.1).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(PanelSpec::new(3, 1.1).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(
            PanelSpec::new(3, f64::NAN).unwrap_err().code(),
            "INVALID_INPUT"
        );
    }

    #[test]
    fn matches_exhaustive_enumeration_up_to_15() {
        for &theta in &[0.1, 0.3, 0.49, 0.5, 0.51, 0.6, 0.75, 0.9] {
            for n in (1..=15u64).step_by(2) {
                let exact = p(n, theta);
                let oracle = enumerated_majority_prob(n, theta);
                assert!(
                    (exact - oracle).abs() < 1e-12,
                    "n = {n}, theta = {theta}: {exact} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn log_space_agrees_with_exact_integers() {
        for &theta in &[0.05, 0.3, 0.5, 0.51, 0.75, 0.95] {
            for n in (31..=59u64).step_by(2) {
                let k = n / 2 + 1;
                let exact = binom_upper_tail(n, k, theta, false);
                let logged = binom_upper_tail(n, k, theta, true);
                assert!(
                    (exact - logged).abs() < 1e-12,
                    "n = {n}, theta = {theta}: {exact} vs {logged}"
                );
            }
        }
    }

    #[test]
    fn competent_panels_improve_with_size() {
        let mut prev = p(1, 0.6);
        for n in (3..=101u64).step_by(2) {
            let cur = p(n, 0.6);
            assert!(cur > prev, "n = {n}");
            assert!(cur > 0.6, "n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn incompetent_panels_decay_with_size() {
        let mut prev = p(1, 0.3);
        for n in (3..=101u64).step_by(2) {
            let cur = p(n, 0.3);
            assert!(cur < prev, "n = {n}");
            assert!(cur < 0.3, "n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn coin_flip_panels_stay_even() {
        for n in (1..=201u64).step_by(20) {
            let n = if n % 2 == 0 { n + 1 } else { n };
            assert!((p(n, 0.5) - 0.5).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn monte_carlo_tracks_the_exact_value() {
        let spec = PanelSpec::new(5, 0.6).unwrap();
        let exact = majority_prob(&spec);
        let mc = majority_prob_mc(&spec, 200_000, 42).unwrap();
        // 5 sigma for 200k Bernoulli trials at p ~ 0.68.
        assert!((mc - exact).abs() < 0.0052, "mc = {mc}, exact = {exact}");
    }

    #[test]
    fn monte_carlo_is_reproducible_and_validates_trials() {
        let spec = PanelSpec::new(7, 0.55).unwrap();
        let a = majority_prob_mc(&spec, 10_000, 7).unwrap();
        let b = majority_prob_mc(&spec, 10_000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            majority_prob_mc(&spec, 0, 7).unwrap_err().code(),
            "INVALID_INPUT"
        );
    }

    #[test]
    fn min_panel_size_goldens() {
        assert_eq!(min_panel_size(0.9, 0.95).unwrap(), 3);
        assert_eq!(min_panel_size(0.6, 0.6).unwrap(), 1);
    }

    #[test]
    fn min_panel_size_is_minimal() {
        for &(theta, target) in &[(0.55, 0.8), (0.6, 0.9), (0.75, 0.99), (0.51, 0.6)] {
            let n = min_panel_size(theta, target).unwrap();
            assert!(p(n, theta) >= target, "theta {theta} target {target}");
            if n > 1 {
                assert!(p(n - 2, theta) < target, "theta {theta} target {target}");
            }
        }
    }

    #[test]
    fn min_panel_size_validates_and_caps() {
        assert_eq!(min_panel_size(0.5, 0.9).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(min_panel_size(1.0, 0.9).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(min_panel_size(0.7, 1.0).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(min_panel_size(0.7, 0.0).unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(
            min_panel_size(0.500001, 0.999).unwrap_err().code(),
            "CAP_EXCEEDED"
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            #[test]
            fn complement_symmetry(theta in 0.0f64..=1.0, half_n in 0u64..100) {
                let n = 2 * half_n + 1;
                let a = p(n, theta);
                let b = p(n, 1.0 - theta);
                prop_assert!((a + b - 1.0).abs() < 1e-9,
                             "n = {}, theta = {}: {} + {}", n, theta, a, b);
            }

            #[test]
            fn probabilities_stay_in_unit_interval(theta in 0.0f64..=1.0, half_n in 0u64..150) {
                let n = 2 * half_n + 1;
                let v = p(n, theta);
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}
