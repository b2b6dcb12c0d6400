//! Deterministic builders for questioning strategies.

mod division;
mod huffman;
mod optimal;
mod sequential;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::distribution::Distribution;
use crate::tree::QuestionTree;

pub use division::{build_balanced_division, build_shannon_fano, DIVISION_CAPACITY};
pub use huffman::{build_huffman, MergeStep};
pub use optimal::{brute_force_optimal, OPTIMAL_CAPACITY};
pub use sequential::build_sequential;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("{strategy} handles at most {capacity} outcomes, got {got}")]
    CapacityExceeded { strategy: &'static str, capacity: usize, got: usize },
}

/// Order in which the sequential strategy asks about outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Input,
    /// By probability, largest first; ties by ascending index.
    Descending,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Order::Input => "input",
            Order::Descending => "descending",
        }
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input" => Ok(Order::Input),
            "descending" => Ok(Order::Descending),
            other => Err(format!("unknown order {other:?} (expected input or descending)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential(Order),
    Division,
    ShannonFano,
    Huffman,
    Optimal,
}

impl Strategy {
    /// Every strategy, in the order comparison tables list them.
    pub const ALL: [Strategy; 6] = [
        Strategy::Sequential(Order::Input),
        Strategy::Sequential(Order::Descending),
        Strategy::Division,
        Strategy::ShannonFano,
        Strategy::Huffman,
        Strategy::Optimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Sequential(_) => "sequential",
            Strategy::Division => "division",
            Strategy::ShannonFano => "shannon-fano",
            Strategy::Huffman => "huffman",
            Strategy::Optimal => "optimal",
        }
    }

    /// Maximum number of outcomes the builder accepts, if bounded.
    pub fn capacity(self) -> Option<usize> {
        match self {
            Strategy::Division => Some(DIVISION_CAPACITY),
            Strategy::Optimal => Some(OPTIMAL_CAPACITY),
            _ => None,
        }
    }

    pub fn build(self, d: &Distribution) -> Result<QuestionTree, StrategyError> {
        match self {
            Strategy::Sequential(order) => Ok(build_sequential(d, order)),
            Strategy::Division => build_balanced_division(d),
            Strategy::ShannonFano => Ok(build_shannon_fano(d)),
            Strategy::Huffman => Ok(build_huffman(d).0),
            Strategy::Optimal => brute_force_optimal(d).map(|(_, tree)| tree),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Sequential(order) => write!(f, "sequential ({})", order.name()),
            other => f.write_str(other.name()),
        }
    }
}

/// Outcome indices sorted by probability descending, ties by ascending index.
pub(crate) fn descending_order(d: &Distribution) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d.p(b).cmp(d.p(a)).then(a.cmp(&b)));
    order
}
