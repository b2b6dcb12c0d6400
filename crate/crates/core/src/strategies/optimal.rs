//! Exhaustive search for a minimum expected-length prefix code.
//!
//! Any optimal code assigns non-decreasing lengths to outcomes sorted by
//! decreasing probability, and a full tree meets the Kraft inequality with
//! equality, so it suffices to enumerate sorted length vectors `l₁ ≤ … ≤ lₙ`
//! with `Σ 2^-lᵢ = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::distribution::Distribution;
use crate::numerics::Rational;
use crate::tree::{Node, QuestionTree};

use super::{descending_order, StrategyError};

pub const OPTIMAL_CAPACITY: usize = 16;

struct Search<'a> {
    /// Sorted-descending probabilities over a common denominator.
    weights: &'a [BigInt],
    n: usize,
    lengths: Vec<usize>,
    best: Option<(BigInt, Vec<usize>)>,
}

impl Search<'_> {
    /// `budget` is the unused Kraft mass in units of `2^-(n-1)`.
    fn extend(&mut self, min_len: usize, budget: u64, cost: &BigInt) {
        let placed = self.lengths.len();
        if placed == self.n {
            if budget == 0 && self.best.as_ref().is_none_or(|(best, _)| cost < best) {
                self.best = Some((cost.clone(), self.lengths.clone()));
            }
            return;
        }
        let left = (self.n - placed) as u64;
        let max_len = self.n - 1;
        for len in min_len..=max_len {
            let unit = 1u64 << (max_len - len);
            // Every remaining length is ≥ len, so each takes between 1 and `unit`.
            if left * unit < budget {
                break;
            }
            if unit > budget || budget - unit < left - 1 {
                continue;
            }
            self.lengths.push(len);
            let cost = cost + &self.weights[placed] * BigInt::from(len);
            self.extend(len, budget - unit, &cost);
            self.lengths.pop();
        }
    }
}

/// Minimum expected question count over all question trees, with a canonical
/// tree achieving it (codewords assigned shortest first, in lexicographic order).
pub fn brute_force_optimal(d: &Distribution) -> Result<(Rational, QuestionTree), StrategyError> {
    let n = d.len();
    if n > OPTIMAL_CAPACITY {
        return Err(StrategyError::CapacityExceeded { strategy: "optimal", capacity: OPTIMAL_CAPACITY, got: n });
    }
    if n == 1 {
        return Ok((Rational::zero(), QuestionTree::new(Node::leaf(0))));
    }

    let order = descending_order(d);
    let lcm = order.iter().fold(BigInt::one(), |acc, &i| acc.lcm(d.p(i).denom()));
    let weights: Vec<BigInt> = order.iter().map(|&i| d.p(i).numer() * (&lcm / d.p(i).denom())).collect();

    let mut search = Search { weights: &weights, n, lengths: Vec::with_capacity(n), best: None };
    search.extend(1, 1u64 << (n - 1), &BigInt::zero());
    let (_, lengths) = search.best.expect("a complete code always exists");

    let expected: Rational = order.iter().zip(&lengths).map(|(&i, &len)| d.p(i) * &Rational::from(len as u64)).sum();
    let codes = canonical_codes(&lengths);
    let leaves: Vec<(usize, Vec<bool>)> = order.into_iter().zip(codes).collect();
    Ok((expected, QuestionTree::new(build_from_codes(&leaves, 0))))
}

/// Canonical assignment for ascending lengths; `true` is a `1` (Yes) bit.
fn canonical_codes(lengths: &[usize]) -> Vec<Vec<bool>> {
    let mut code: u64 = 0;
    let mut prev = lengths[0];
    lengths
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            if i > 0 {
                code = (code + 1) << (len - prev);
            }
            prev = len;
            (0..len).rev().map(|bit| code >> bit & 1 == 1).collect()
        })
        .collect()
}

fn build_from_codes(leaves: &[(usize, Vec<bool>)], depth: usize) -> Node {
    if let [(outcome, _)] = leaves {
        return Node::leaf(*outcome);
    }
    let (yes, no): (Vec<_>, Vec<_>) = leaves.iter().cloned().partition(|(_, code)| code[depth]);
    Node::question(build_from_codes(&yes, depth + 1), build_from_codes(&no, depth + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(ps: &[&str]) -> Distribution {
        Distribution::from_probabilities(ps.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn four_outcome_example() {
        let d = dist(&["2/5", "1/3", "1/5", "1/15"]);
        let (cost, t) = brute_force_optimal(&d).unwrap();
        assert_eq!(cost, "28/15".parse().unwrap());
        assert_eq!(t.expected_questions(&d).unwrap(), cost);
        let words = t.codewords();
        assert_eq!(words[&0], "0");
        assert_eq!(words[&1], "10");
        assert_eq!(words[&2], "110");
        assert_eq!(words[&3], "111");
    }

    #[test]
    fn uniform_four_is_perfect() {
        let d = Distribution::uniform(4, "u").unwrap();
        let (cost, t) = brute_force_optimal(&d).unwrap();
        assert_eq!(cost, Rational::from(2u64));
        assert!(t.leaf_depths().iter().all(|&(_, depth)| depth == 2));
    }

    #[test]
    fn trivial_sizes() {
        let (cost, t) = brute_force_optimal(&Distribution::uniform(1, "u").unwrap()).unwrap();
        assert_eq!(cost, Rational::zero());
        assert!(t.root().is_leaf());
        let (cost, _) = brute_force_optimal(&Distribution::uniform(2, "u").unwrap()).unwrap();
        assert_eq!(cost, Rational::one());
    }

    #[test]
    fn capacity() {
        assert!(brute_force_optimal(&Distribution::uniform(16, "u").unwrap()).is_ok());
        assert!(matches!(
            brute_force_optimal(&Distribution::uniform(17, "u").unwrap()),
            Err(StrategyError::CapacityExceeded { capacity: 16, got: 17, .. })
        ));
    }

    #[test]
    fn skewed_chain_is_optimal() {
        let d = dist(&["1/2", "1/4", "1/8", "1/16", "1/16"]);
        let (cost, t) = brute_force_optimal(&d).unwrap();
        assert_eq!(cost, "15/8".parse().unwrap());
        assert_eq!(t.kraft_sum(), Rational::one());
    }

    #[test]
    fn canonical_code_shape() {
        let codes = canonical_codes(&[1, 2, 3, 3]);
        let render: Vec<String> =
            codes.iter().map(|c| c.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
        assert_eq!(render, ["0", "10", "110", "111"]);
    }
}
