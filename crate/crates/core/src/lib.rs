//! Yes/no questioning strategies modeled as binary decision trees.
//!
//! Identifying one hidden outcome with yes/no questions is the same problem as
//! assigning it a binary prefix code: every question tree is a code tree, and
//! the expected number of questions is the expected code length. This crate
//! builds the classic strategies over exact rational distributions:
//!
//! - [`build_sequential`]: ask about one outcome at a time;
//! - [`build_balanced_division`]: split into two groups of nearly equal mass;
//! - [`build_shannon_fano`]: the contiguous sorted-split variant;
//! - [`build_huffman`]: merge the two least probable boxes, bottom-up;
//! - [`brute_force_optimal`]: exhaustive minimum over complete code lengths,
//!
//! and analyzes them exactly ([`QuestionTree::expected_questions`],
//! [`QuestionTree::information_yield_bits`], ...) or by simulation.
//!
//! ```
//! use twenty_questions::{build_huffman, Distribution, Rational};
//!
//! let boxes = Distribution::uniform(20, "box").unwrap();
//! let (tree, _merges) = build_huffman(&boxes);
//! assert_eq!(tree.expected_questions(&boxes).unwrap(), "22/5".parse::<Rational>().unwrap());
//! ```

pub mod distribution;
pub mod game;
pub mod numerics;
pub mod report;
pub mod simulator;
pub mod strategies;
pub mod tree;

pub use distribution::{Distribution, DistributionError, Outcome};
pub use game::{Exchange, GameError, GameState, Prompt};
pub use numerics::{binary_entropy_bits, surprisal_bits, NumericsError, Rational};
pub use report::{Codeword, HistogramEntry, StrategyReport};
pub use simulator::{exhaustive_evaluate, simulate, simulate_with_threads, SimulationError, SimulationResult};
pub use strategies::{
    brute_force_optimal, build_balanced_division, build_huffman, build_sequential, build_shannon_fano, MergeStep,
    Order, Strategy, StrategyError,
};
pub use tree::{Answer, DepthBucket, Node, QuestionTree, TreeError, Violation};
