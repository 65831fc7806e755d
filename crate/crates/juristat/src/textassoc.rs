//! Term association and term weighting over a document corpus.
//!
//! Association between two terms is measured from document-level presence
//! counts with a chi-square-style statistic on a log10 scale, using a
//! continuity correction of `n/2`:
//!
//! ```text
//! magnitude = log10( n * (|f*n - a*b| - n/2)^2 / (a * b * (n-a) * (n-b)) )
//! ```
//!
//! where `a` and `b` count the documents containing each term, `f` counts
//! documents containing both, and `n` is the corpus size. The statistic is
//! unsigned; the direction is reported separately as `negative = a*b > f*n`
//! (the terms co-occur less often than independence would predict).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty set of tokenized documents. Tokens are lower-cased on
/// construction so that lookups are case-insensitive; empty documents are
/// allowed, empty tokens are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    docs: Vec<Vec<String>>,
}

impl Corpus {
    pub fn new(docs: Vec<Vec<String>>) -> Result<Corpus> {
        if docs.is_empty() {
            return Err(Error::InvalidInput("corpus must be non-empty".into()));
        }
        if docs.iter().flatten().any(|t| t.is_empty()) {
            return Err(Error::InvalidInput("tokens must be non-empty".into()));
        }
        let docs = docs
            .into_iter()
            .map(|doc| doc.into_iter().map(|t| t.to_lowercase()).collect())
            .collect();
        Ok(Corpus { docs })
    }

    /// One document per line, whitespace-tokenized. Blank lines become empty
    /// documents. Errors only when the text contains no lines at all.
    pub fn from_lines(text: &str) -> Result<Corpus> {
        let docs: Vec<Vec<String>> = text
            .lines()
            .map(|line| line.split_whitespace().map(str::to_owned).collect())
            .collect();
        Corpus::new(docs)
    }

    pub fn docs(&self) -> &[Vec<String>] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Document-level presence counts for a pair of terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocCounts {
    /// Documents containing the first term.
    pub a: u64,
    /// Documents containing the second term.
    pub b: u64,
    /// Documents containing both.
    pub f: u64,
    /// Documents in the corpus.
    pub n: u64,
}

impl AssocCounts {
    pub fn new(a: u64, b: u64, f: u64, n: u64) -> Result<AssocCounts> {
        if n == 0 {
            return Err(Error::InvalidInput("corpus count n must be >= 1".into()));
        }
        if a > n || b > n {
            return Err(Error::InvalidInput(format!(
                "term counts ({a}, {b}) cannot exceed corpus count {n}"
            )));
        }
        if f > a.min(b) {
            return Err(Error::InvalidInput(format!(
                "joint count {f} cannot exceed min({a}, {b})"
            )));
        }
        Ok(AssocCounts { a, b, f, n })
    }
}

/// Association strength and direction for a pair of terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Association {
    /// log10 of the corrected chi-square-style ratio; always computed from
    /// the absolute deviation, so it carries no sign information.
    pub magnitude: f64,
    /// True when the observed co-occurrence falls below the independence
    /// expectation (`a*b > f*n`).
    pub negative: bool,
}

/// Computes the association statistic for validated counts.
///
/// Errors:
/// * [`Error::DegenerateTerm`] when either term appears in no document or in
///   every document (a zero factor would make the ratio undefined);
/// * [`Error::CorrectionDominates`] when `|f*n - a*b| <= n/2`, i.e. the
///   continuity correction swallows the whole deviation.
pub fn stiles_association(counts: &AssocCounts) -> Result<Association> {
    let AssocCounts { a, b, f, n } = *counts;
    if a == 0 || b == 0 || a == n || b == n {
        return Err(Error::DegenerateTerm(format!(
            "term counts must satisfy 0 < a < n and 0 < b < n, got a = {a}, b = {b}, n = {n}"
        )));
    }
    let fn_ = f as u128 * n as u128;
    let ab = a as u128 * b as u128;
    let dev = fn_.abs_diff(ab);
    // |f*n - a*b| > n/2 as exact integers: 2|f*n - a*b| > n.
    if 2 * dev <= n as u128 {
        return Err(Error::CorrectionDominates);
    }
    let corrected = dev as f64 - n as f64 / 2.0;
    let magnitude = (n as f64).log10() + 2.0 * corrected.log10()
        - (a as f64).log10()
        - (b as f64).log10()
        - ((n - a) as f64).log10()
        - ((n - b) as f64).log10();
    Ok(Association {
        magnitude,
        negative: ab > fn_,
    })
}

/// Counts document-level presence of two terms (case-insensitive).
pub fn count_pair(corpus: &Corpus, term1: &str, term2: &str) -> AssocCounts {
    let t1 = term1.to_lowercase();
    let t2 = term2.to_lowercase();
    let (mut a, mut b, mut f) = (0u64, 0u64, 0u64);
    for doc in corpus.docs() {
        let has1 = doc.iter().any(|t| *t == t1);
        let has2 = doc.iter().any(|t| *t == t2);
        a += has1 as u64;
        b += has2 as u64;
        f += (has1 && has2) as u64;
    }
    AssocCounts {
        a,
        b,
        f,
        n: corpus.len() as u64,
    }
}

/// Term weights per document: term frequency times the log of the inverse
/// document frequency, `tf(t, d) * ln(n / df(t))`, with the natural log.
/// Terms occurring in every document weigh zero. For a different log base,
/// see [`tfidf_with_base`].
pub fn tfidf(corpus: &Corpus) -> Vec<BTreeMap<String, f64>> {
    tfidf_scaled(corpus, 1.0)
}

/// [`tfidf`] with the IDF log taken in the given base (must be a finite
/// value greater than 1).
pub fn tfidf_with_base(corpus: &Corpus, base: f64) -> Result<Vec<BTreeMap<String, f64>>> {
    if !base.is_finite() || base <= 1.0 {
        return Err(Error::InvalidInput(format!(
            "log base must be a finite value > 1, got {base}"
        )));
    }
    Ok(tfidf_scaled(corpus, 1.0 / base.ln()))
}

fn tfidf_scaled(corpus: &Corpus, scale: f64) -> Vec<BTreeMap<String, f64>> {
    let n = corpus.len() as f64;
    let mut df: BTreeMap<&str, u64> = BTreeMap::new();
    for doc in corpus.docs() {
        let mut seen: Vec<&str> = doc.iter().map(String::as_str).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    corpus
        .docs()
        .iter()
        .map(|doc| {
            let mut tf: BTreeMap<&str, u64> = BTreeMap::new();
            for term in doc {
                *tf.entry(term).or_insert(0) += 1;
            }
            tf.into_iter()
                .map(|(term, count)| {
                    let idf = (n / df[term] as f64).ln() * scale;
                    (term.to_owned(), count as f64 * idf)
                })
                .collect()
        })
        .collect()
}
