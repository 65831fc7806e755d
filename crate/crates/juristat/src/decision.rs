//! Liability calculus and belief updating for legal decision problems.
//!
//! Three small families live here:
//!
//! * the negligence calculus: [`hand_rule`] compares the burden of adequate
//!   precautions against the expected harm they would prevent, and
//!   [`expected_daily_loss`] prices a recurring loss per business day;
//! * observed frequencies: [`conviction_rate`];
//! * Bayesian belief updating over discrete hypothesis sets
//!   ([`bayes_update_discrete`]) and Beta-distributed probabilities
//!   ([`beta_update`], [`beta_from_opinion`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs to the negligence calculus: the cost `burden` of adequate
/// precautions, the `probability` of the harmful event absent precautions,
/// and the `loss` if it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandInputs {
    pub burden: f64,
    pub probability: f64,
    pub loss: f64,
}

impl HandInputs {
    pub fn new(burden: f64, probability: f64, loss: f64) -> Result<HandInputs> {
        if !burden.is_finite() || burden < 0.0 {
            return Err(Error::InvalidInput(format!(
                "burden must be a non-negative real, got {burden}"
            )));
        }
        if !probability.is_finite() || !(0.0..=1.0).contains(&probability) {
            return Err(Error::InvalidInput(format!(
                "probability must lie in [0, 1], got {probability}"
            )));
        }
        if !loss.is_finite() || loss < 0.0 {
            return Err(Error::InvalidInput(format!(
                "loss must be a non-negative real, got {loss}"
            )));
        }
        Ok(HandInputs {
            burden,
            probability,
            loss,
        })
    }
}

/// Outcome of the negligence calculus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandRuling {
    /// True when the burden is strictly less than the expected harm, i.e.
    /// the actor should have taken the precaution.
    pub liable: bool,
    /// `probability * loss`.
    pub expected_harm: f64,
}

/// Negligence test: liable exactly when `burden < probability * loss`.
/// A burden equal to the expected harm is not negligence.
pub fn hand_rule(inputs: &HandInputs) -> HandRuling {
    let expected_harm = inputs.probability * inputs.loss;
    HandRuling {
        liable: inputs.burden < expected_harm,
        expected_harm,
    }
}

/// An expected loss per business day, with a fixed report sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedLoss {
    pub value: f64,
    pub text: String,
}

/// Expected monetary loss per business day when `consultations_per_month`
/// leads each turn into a hire with probability `hire_rate` at an average
/// ticket of `avg_ticket`, spread over `business_days` working days per
/// month.
///
/// The report sentence rounds to whole cents, half away from zero.
pub fn expected_daily_loss(
    consultations_per_month: f64,
    hire_rate: f64,
    avg_ticket: f64,
    business_days: f64,
) -> Result<ExpectedLoss> {
    for (name, v) in [
        ("consultations per month", consultations_per_month),
        ("average ticket", avg_ticket),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "{name} must be a non-negative real, got {v}"
            )));
        }
    }
    if !hire_rate.is_finite() || !(0.0..=1.0).contains(&hire_rate) {
        return Err(Error::InvalidInput(format!(
            "hire rate must lie in [0, 1], got {hire_rate}"
        )));
    }
    if !business_days.is_finite() || business_days <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "business days must be positive, got {business_days}"
        )));
    }
    let value = consultations_per_month * hire_rate * avg_ticket / business_days;
    let cents = (value * 100.0).round();
    if cents > 9e15 {
        return Err(Error::InvalidInput(format!(
            "loss value {value} too large to format in cents"
        )));
    }
    let cents = cents as i64;
    let text = format!(
        "The estimated loss amount per business day is ${}.{:02}.",
        cents / 100,
        cents % 100
    );
    Ok(ExpectedLoss { value, text })
}

/// Fraction of accused persons who were convicted.
pub fn conviction_rate(convicted: u64, accused: u64) -> Result<f64> {
    if accused == 0 {
        return Err(Error::ZeroAccused);
    }
    if convicted > accused {
        return Err(Error::Inconsistent { convicted, accused });
    }
    Ok(convicted as f64 / accused as f64)
}

/// A probability distribution over a finite hypothesis set: non-negative
/// weights summing to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DiscreteBelief {
    weights: Vec<f64>,
}

impl DiscreteBelief {
    /// Accepts weights that already sum to 1 within 1e-12.
    pub fn new(weights: Vec<f64>) -> Result<DiscreteBelief> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("belief must be non-empty".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInput(format!(
                "belief weights must be non-negative reals, found {bad}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "belief weights must sum to 1, found {sum}"
            )));
        }
        Ok(DiscreteBelief { weights })
    }

    /// Builds a belief from arbitrary non-negative weights by normalizing
    /// them. Fails with [`Error::ZeroEvidence`] when every weight is zero.
    pub fn normalized(weights: Vec<f64>) -> Result<DiscreteBelief> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("belief must be non-empty".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInput(format!(
                "belief weights must be non-negative reals, found {bad}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if sum == 0.0 {
            return Err(Error::ZeroEvidence);
        }
        Ok(DiscreteBelief {
            weights: weights.into_iter().map(|w| w / sum).collect(),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<f64>> for DiscreteBelief {
    type Error = Error;

    fn try_from(weights: Vec<f64>) -> Result<DiscreteBelief> {
        DiscreteBelief::new(weights)
    }
}

impl From<DiscreteBelief> for Vec<f64> {
    fn from(belief: DiscreteBelief) -> Vec<f64> {
        belief.weights
    }
}

/// Bayes' rule on a discrete hypothesis set:
/// `posterior_i = prior_i * likelihood_i / sum_j prior_j * likelihood_j`.
///
/// Likelihoods need not be normalized; only their ratios matter. Errors with
/// [`Error::ZeroEvidence`] when every prior-likelihood product is zero, and
/// [`Error::LengthMismatch`] when the likelihood length differs from the
/// prior's.
pub fn bayes_update_discrete(prior: &DiscreteBelief, likelihood: &[f64]) -> Result<DiscreteBelief> {
    if likelihood.len() != prior.len() {
        return Err(Error::LengthMismatch {
            left: prior.len(),
            right: likelihood.len(),
        });
    }
    if let Some(bad) = likelihood.iter().find(|l| !l.is_finite() || **l < 0.0) {
        return Err(Error::InvalidInput(format!(
            "likelihoods must be non-negative reals, found {bad}"
        )));
    }
    let products: Vec<f64> = prior
        .weights()
        .iter()
        .zip(likelihood)
        .map(|(p, l)| p * l)
        .collect();
    let evidence: f64 = products.iter().sum();
    if evidence == 0.0 {
        return Err(Error::ZeroEvidence);
    }
    Ok(DiscreteBelief {
        weights: products.into_iter().map(|u| u / evidence).collect(),
    })
}

/// A Beta(alpha, beta) belief over a probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaBelief {
    pub alpha: f64,
    pub beta: f64,
}

impl BetaBelief {
    pub fn new(alpha: f64, beta: f64) -> Result<BetaBelief> {
        if !alpha.is_finite() || alpha <= 0.0 || !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "beta parameters must be positive reals, got ({alpha}, {beta})"
            )));
        }
        Ok(BetaBelief { alpha, beta })
    }

    /// Mean of the distribution, `alpha / (alpha + beta)`.
    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }
}

/// Conjugate update of a Beta belief after observing `successes` and
/// `failures` Bernoulli outcomes.
pub fn beta_update(prior: &BetaBelief, successes: u64, failures: u64) -> BetaBelief {
    BetaBelief {
        alpha: prior.alpha + successes as f64,
        beta: prior.beta + failures as f64,
    }
}

/// Elicits a Beta prior from an ordinal opinion about how probable an event
/// is, on a scale where 1 means "very likely" and 5 means "very unlikely",
/// with 0 reserved for complete ignorance.
///
/// Level 0 maps to the flat Beta(1, 1). Level `k` in 1..=5 maps to the mean
/// `mu = (6 - k) / 6` at fixed concentration `nu = 12`, i.e.
/// `Beta(mu * nu, (1 - mu) * nu)`; level 1 gives Beta(10, 2), level 3 the
/// symmetric Beta(6, 6), level 5 gives Beta(2, 10).
///
/// The mapping is one self-consistent convention, not a law: callers with a
/// different elicitation scheme can construct [`BetaBelief`] directly.
pub fn beta_from_opinion(level: u32) -> Result<BetaBelief> {
    if level > 5 {
        return Err(Error::OutOfRange(level as i64));
    }
    if level == 0 {
        return Ok(BetaBelief {
            alpha: 1.0,
            beta: 1.0,
        });
    }
    // mu * nu and (1 - mu) * nu are the integers 2 * (6 - k) and 2 * k;
    // building them as integers keeps the parameters exact.
    Ok(BetaBelief {
        alpha: (2 * (6 - level)) as f64,
        beta: (2 * level) as f64,
    })
}
