//! Labeled discrete distributions with exact probabilities.
//!
//! A distribution file is JSON:
//!
//! ```json
//! { "outcomes": [ { "label": "box01", "p": "1/20" }, { "label": "box02", "p": "0.95" } ] }
//! ```
//!
//! `p` is either `a/b` or a decimal literal; both are read exactly.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{weighted_surprisal, NumericsError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistributionError {
    #[error("malformed distribution file: {0}")]
    Syntax(String),
    #[error("outcome {index}: malformed probability {text:?}")]
    BadProbability { index: usize, text: String },
    #[error("distribution has no outcomes")]
    Empty,
    #[error("outcome {index} has an empty label")]
    EmptyLabel { index: usize },
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("outcome {label:?} has non-positive probability {p}")]
    NonPositive { label: String, p: Rational },
    #[error("probabilities sum to {sum}, deficit {deficit}")]
    SumMismatch { sum: Box<Rational>, deficit: Box<Rational> },
    #[error("uniform distribution needs at least one outcome")]
    ZeroOutcomes,
}

impl DistributionError {
    /// Syntax problems, as opposed to well-formed files that break an invariant.
    pub fn is_syntax(&self) -> bool {
        matches!(self, DistributionError::Syntax(_) | DistributionError::BadProbability { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub label: String,
    pub p: Rational,
}

/// Outcomes in input order; an outcome's position is its identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    outcomes: Vec<Outcome>,
}

#[derive(Serialize, Deserialize)]
struct FileOutcome {
    label: String,
    p: String,
}

#[derive(Serialize, Deserialize)]
struct DistributionFile {
    outcomes: Vec<FileOutcome>,
}

impl Distribution {
    pub fn new(outcomes: Vec<Outcome>) -> Result<Self, DistributionError> {
        if outcomes.is_empty() {
            return Err(DistributionError::Empty);
        }
        let mut seen = HashSet::with_capacity(outcomes.len());
        for (index, outcome) in outcomes.iter().enumerate() {
            if outcome.label.is_empty() {
                return Err(DistributionError::EmptyLabel { index });
            }
            if !seen.insert(outcome.label.as_str()) {
                return Err(DistributionError::DuplicateLabel { label: outcome.label.clone() });
            }
            if !outcome.p.is_positive() {
                return Err(DistributionError::NonPositive { label: outcome.label.clone(), p: outcome.p.clone() });
            }
        }
        let sum: Rational = outcomes.iter().map(|o| &o.p).sum();
        if sum != Rational::one() {
            let deficit = Rational::one() - &sum;
            return Err(DistributionError::SumMismatch { sum: Box::new(sum), deficit: Box::new(deficit) });
        }
        Ok(Distribution { outcomes })
    }

    /// Builds from bare probabilities, labeling outcomes `x1..xn`.
    pub fn from_probabilities(ps: Vec<Rational>) -> Result<Self, DistributionError> {
        let width = ps.len().to_string().len();
        let outcomes =
            ps.into_iter().enumerate().map(|(i, p)| Outcome { label: format!("x{:0width$}", i + 1), p }).collect();
        Distribution::new(outcomes)
    }

    /// `n` equiprobable outcomes labeled `<prefix>01..<prefix>NN`, zero-padded to the width of `n`.
    pub fn uniform(n: usize, label_prefix: &str) -> Result<Self, DistributionError> {
        if n == 0 {
            return Err(DistributionError::ZeroOutcomes);
        }
        let width = n.to_string().len();
        let p = Rational::new(1u64, n as u64).expect("n > 0");
        let outcomes = (1..=n).map(|i| Outcome { label: format!("{label_prefix}{i:0width$}"), p: p.clone() }).collect();
        Distribution::new(outcomes)
    }

    pub fn parse(text: &str) -> Result<Self, DistributionError> {
        let file: DistributionFile =
            serde_json::from_str(text).map_err(|e| DistributionError::Syntax(e.to_string()))?;
        let outcomes = file
            .outcomes
            .into_iter()
            .enumerate()
            .map(|(index, o)| {
                let p =
                    o.p.parse()
                        .map_err(|_: NumericsError| DistributionError::BadProbability { index, text: o.p.clone() })?;
                Ok(Outcome { label: o.label, p })
            })
            .collect::<Result<Vec<_>, DistributionError>>()?;
        Distribution::new(outcomes)
    }

    /// Renders the file format, probabilities as canonical `a/b`.
    pub fn render(&self) -> String {
        let file = DistributionFile {
            outcomes: self
                .outcomes
                .iter()
                .map(|o| FileOutcome { label: o.label.clone(), p: o.p.to_string() })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn p(&self, index: usize) -> &Rational {
        &self.outcomes[index].p
    }

    pub fn label(&self, index: usize) -> &str {
        &self.outcomes[index].label
    }

    pub fn probabilities(&self) -> impl Iterator<Item = &Rational> {
        self.outcomes.iter().map(|o| &o.p)
    }

    /// Total probability of a set of outcome indices.
    pub fn mass<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> Rational {
        indices.into_iter().map(|&i| self.p(i)).sum()
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.probabilities().map(weighted_surprisal).fold(0.0, |acc, bits| acc + bits)
    }
}
