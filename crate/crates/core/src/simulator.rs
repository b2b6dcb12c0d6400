//! Monte-Carlo and exact evaluation of question trees.
//!
//! Sampling is keyed by `(seed, trial_index)`, and question counts are summed
//! as integers, so results do not depend on how trials are split across threads.

use std::num::NonZeroUsize;
use std::thread;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::distribution::Distribution;
use crate::report::{Codeword, StrategyReport};
use crate::tree::{Node, QuestionTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("simulation needs at least one trial")]
    ZeroTrials,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub trials: u64,
    pub total_questions: u64,
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation / √trials).
    pub stderr: f64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The `index`-th output of a SplitMix64 stream started at `seed`.
pub fn trial_draw(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Inverse-CDF sampler over exact cumulative probabilities scaled to 2^64.
///
/// Boundary k is `⌊(p₀ + … + p_k)·2^64⌋`, so each outcome's interval is within
/// one unit of its exact width.
#[derive(Debug, Clone)]
pub struct Sampler {
    upper: Vec<u128>,
}

impl Sampler {
    pub fn new(d: &Distribution) -> Self {
        let scale = BigInt::from(1u128 << 64);
        let mut cumulative = crate::numerics::Rational::zero();
        let upper = d
            .probabilities()
            .map(|p| {
                cumulative += p;
                let scaled = cumulative.numer() * &scale / cumulative.denom();
                scaled.to_u128().expect("cumulative ≤ 1")
            })
            .collect();
        Sampler { upper }
    }

    pub fn sample(&self, draw: u64) -> usize {
        self.upper.partition_point(|&bound| bound <= u128::from(draw))
    }
}

fn questions_for(root: &Node, outcome: usize) -> u64 {
    let mut node = root;
    let mut asked = 0;
    while let Node::Internal { yes_set, yes, no } = node {
        asked += 1;
        node = if yes_set.contains(&outcome) { yes } else { no };
    }
    asked
}

/// Runs `trials` games on the available cores.
pub fn simulate(
    t: &QuestionTree,
    d: &Distribution,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult, SimulationError> {
    let threads = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    simulate_with_threads(t, d, trials, seed, threads)
}

/// Same as [`simulate`] with an explicit worker count; the result is identical for any count.
pub fn simulate_with_threads(
    t: &QuestionTree,
    d: &Distribution,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<SimulationResult, SimulationError> {
    if trials == 0 {
        return Err(SimulationError::ZeroTrials);
    }
    t.validate(d)?;
    let sampler = Sampler::new(d);
    let threads = (threads.max(1) as u64).min(trials);
    let chunk = trials.div_ceil(threads);

    let run = |start: u64, end: u64| {
        let mut sum = 0u64;
        let mut sum_sq = 0u128;
        for index in start..end {
            let outcome = sampler.sample(trial_draw(seed, index));
            let asked = questions_for(t.root(), outcome);
            sum += asked;
            sum_sq += u128::from(asked * asked);
        }
        (sum, sum_sq)
    };

    let (sum, sum_sq) = if threads == 1 {
        run(0, trials)
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|k| {
                    let start = k * chunk;
                    let end = ((k + 1) * chunk).min(trials);
                    scope.spawn(move || run(start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .fold((0u64, 0u128), |(a, b), (x, y)| (a + x, b + y))
        })
    };

    let n = trials as f64;
    let mean = sum as f64 / n;
    let stderr = if trials < 2 {
        0.0
    } else {
        // n·Σx² − (Σx)² is exact in integers.
        let spread = u128::from(trials) * sum_sq - u128::from(sum) * u128::from(sum);
        let variance = spread as f64 / (n * (n - 1.0));
        (variance / n).sqrt()
    };
    Ok(SimulationResult { trials, total_questions: sum, mean, stderr })
}

/// Exact analysis of `t` against `d`; no sampling.
pub fn exhaustive_evaluate(t: &QuestionTree, d: &Distribution) -> Result<StrategyReport, TreeError> {
    let expected_questions = t.expected_questions(d)?;
    let expected_questions_decimal = expected_questions.to_f64();
    let entropy_bits = d.entropy_bits();
    let information_yield_bits = t.information_yield_bits(d)?;
    let depth_histogram = t.depth_histogram(d)?.into_iter().map(|(k, b)| (k, b.into())).collect();
    let codewords = t
        .codewords()
        .into_iter()
        .map(|(outcome, bits)| Codeword { label: d.label(outcome).to_string(), bits })
        .collect();
    Ok(StrategyReport {
        expected_questions,
        expected_questions_decimal,
        entropy_bits,
        information_yield_bits,
        redundancy_bits: expected_questions_decimal - entropy_bits,
        depth_histogram,
        codewords,
    })
}
