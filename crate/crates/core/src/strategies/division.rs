//! Top-down division: split the remaining outcomes into two groups of nearly
//! equal probability and ask which group holds the answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::distribution::Distribution;
use crate::numerics::Rational;
use crate::tree::{Node, QuestionTree};

use super::{descending_order, StrategyError};

/// Largest node the exact partition search accepts (2^23 candidate subsets).
pub const DIVISION_CAPACITY: usize = 24;

/// Balanced division by exact minimum-difference partition.
///
/// At a node with outcomes `S`, the Yes group `A` is the proper subset of `S`
/// containing its smallest index that minimizes `|p(A) − p(S∖A)|`; ties go to
/// the smaller `|A|`, then to the lexicographically smallest index sequence.
pub fn build_balanced_division(d: &Distribution) -> Result<QuestionTree, StrategyError> {
    if d.len() > DIVISION_CAPACITY {
        return Err(StrategyError::CapacityExceeded {
            strategy: "division",
            capacity: DIVISION_CAPACITY,
            got: d.len(),
        });
    }
    let all: Vec<usize> = (0..d.len()).collect();
    Ok(QuestionTree::new(divide(d, &all)))
}

fn divide(d: &Distribution, outcomes: &[usize]) -> Node {
    if let [only] = outcomes {
        return Node::leaf(*only);
    }
    let mask = best_partition(d, outcomes);
    let mut yes = vec![outcomes[0]];
    let mut no = Vec::new();
    for (pos, &outcome) in outcomes[1..].iter().enumerate() {
        if mask & (1 << pos) != 0 {
            yes.push(outcome);
        } else {
            no.push(outcome);
        }
    }
    Node::question(divide(d, &yes), divide(d, &no))
}

/// Probabilities of `outcomes` as integers over their common denominator.
fn integer_weights(d: &Distribution, outcomes: &[usize]) -> Vec<BigInt> {
    let lcm = outcomes.iter().fold(BigInt::one(), |acc, &i| acc.lcm(d.p(i).denom()));
    outcomes
        .iter()
        .map(|&i| {
            let p = d.p(i);
            p.numer() * (&lcm / p.denom())
        })
        .collect()
}

/// Bitmask over `outcomes[1..]` of the chosen Yes group (`outcomes[0]` always included).
fn best_partition(d: &Distribution, outcomes: &[usize]) -> u32 {
    let weights = integer_weights(d, outcomes);
    let total: BigInt = weights.iter().sum();
    // 2·p(A) − p(S) must fit; the common denominator keeps weights small in practice.
    if total.bits() < 120 {
        let small: Vec<i128> = weights.iter().map(|w| w.to_i128().expect("fits")).collect();
        search(&small, total.to_i128().expect("fits"))
    } else {
        search(&weights, total)
    }
}

/// Gray-code walk over the 2^(m−1) subsets containing element 0, so each
/// step adds or removes one weight.
fn search<W: Signed + Clone + Ord>(weights: &[W], total: W) -> u32 {
    let free = weights.len() - 1;
    let full: u32 = (1u32 << free) - 1;
    let mut sum = weights[0].clone();
    let mut mask = 0u32;
    let imbalance = |sum: &W| (sum.clone() + sum.clone() - total.clone()).abs();

    let mut best_mask = mask;
    let mut best_diff = imbalance(&sum);
    let mut best_size = 1u32;
    for step in 1u32..(1u32 << free) {
        let bit = step.trailing_zeros();
        mask ^= 1 << bit;
        if mask & (1 << bit) != 0 {
            sum = sum + weights[bit as usize + 1].clone();
        } else {
            sum = sum - weights[bit as usize + 1].clone();
        }
        if mask == full {
            continue;
        }
        let diff = imbalance(&sum);
        let size = mask.count_ones() + 1;
        let better = match diff.cmp(&best_diff) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => match size.cmp(&best_size) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                // Same size: the set owning the lowest differing element sorts first.
                std::cmp::Ordering::Equal => {
                    let lowest = (mask ^ best_mask) & (mask ^ best_mask).wrapping_neg();
                    mask & lowest != 0
                }
            },
        };
        if better {
            best_mask = mask;
            best_diff = diff;
            best_size = size;
        }
    }
    best_mask
}

/// Contiguous division over outcomes sorted by probability descending: each
/// node splits its sorted run at the boundary with the smallest mass
/// difference (earliest boundary on ties); the leading segment is Yes.
pub fn build_shannon_fano(d: &Distribution) -> QuestionTree {
    let sorted = descending_order(d);
    QuestionTree::new(split_sorted(d, &sorted))
}

fn split_sorted(d: &Distribution, run: &[usize]) -> Node {
    if let [only] = run {
        return Node::leaf(*only);
    }
    let total = d.mass(run);
    let mut prefix = Rational::zero();
    let mut best: Option<(Rational, usize)> = None;
    for (k, &outcome) in run[..run.len() - 1].iter().enumerate() {
        prefix += d.p(outcome);
        let diff = (&prefix + &prefix - &total).abs();
        if best.as_ref().is_none_or(|(b, _)| diff < *b) {
            best = Some((diff, k + 1));
        }
    }
    let (_, boundary) = best.expect("run has at least two outcomes");
    let (yes, no) = run.split_at(boundary);
    Node::question(split_sorted(d, yes), split_sorted(d, no))
}
