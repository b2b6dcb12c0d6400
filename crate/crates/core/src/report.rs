use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numerics::Rational;
use crate::tree::DepthBucket;

/// Everything the exact analysis of one question tree produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub expected_questions: Rational,
    pub expected_questions_decimal: f64,
    pub entropy_bits: f64,
    pub information_yield_bits: f64,
    /// `expected_questions_decimal − entropy_bits`.
    pub redundancy_bits: f64,
    pub depth_histogram: BTreeMap<usize, HistogramEntry>,
    /// In outcome order.
    pub codewords: Vec<Codeword>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub leaves: usize,
    pub probability: Rational,
}

impl From<DepthBucket> for HistogramEntry {
    fn from(bucket: DepthBucket) -> Self {
        HistogramEntry { leaves: bucket.leaves, probability: bucket.probability }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub label: String,
    pub bits: String,
}
