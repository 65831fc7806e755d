//! Quantitative legal analytics.
//!
//! The crate bundles five small toolkits that share a numeric core:
//!
//! * [`jury`]: reliability of majority verdicts from panels of independent
//!   deciders, exact and by simulation, plus minimum panel sizing.
//! * [`decision`]: the negligence calculus (burden vs. expected harm),
//!   expected-loss reporting, conviction rates, and Bayesian belief
//!   updating over discrete hypotheses and Beta priors.
//! * [`textassoc`]: term association and tf-idf weights over a corpus of
//!   tokenized documents.
//! * [`forecast`]: caseload forecasting by holdout comparison of four
//!   models (autoregression, Holt-Winters, seasonal naive, and a neural
//!   autoregression), with reproducible seeding.
//! * [`data`]: embedded court caseload series for demos and tests.
//!
//! [`series`] holds the time-series type and CSV exchange format, [`rng`]
//! the deterministic generator used everywhere randomness is needed, and
//! [`cli`] the command-line front end behind the `juristat` binary.
//!
//! ```
//! use juristat::jury::{majority_prob, PanelSpec};
//!
//! let spec = PanelSpec::new(3, 0.6).unwrap();
//! assert!((majority_prob(&spec) - 0.648).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod data;
pub mod decision;
pub mod error;
pub mod forecast;
pub mod jury;
pub mod rng;
pub mod series;
pub mod textassoc;

pub use error::{Error, Result};
