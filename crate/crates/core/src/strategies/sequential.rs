use crate::distribution::Distribution;
use crate::tree::{Node, QuestionTree};

use super::{descending_order, Order};

/// One-by-one asking: question k is "is it outcome π(k)?". After n−1 misses
/// the last outcome is the No leaf of the final question.
pub fn build_sequential(d: &Distribution, order: Order) -> QuestionTree {
    let order: Vec<usize> = match order {
        Order::Input => (0..d.len()).collect(),
        Order::Descending => descending_order(d),
    };
    let (&last, asked) = order.split_last().expect("distribution is non-empty");
    let chain = asked.iter().rev().fold(Node::leaf(last), |rest, &outcome| Node::question(Node::leaf(outcome), rest));
    QuestionTree::new(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    #[test]
    fn uniform_twenty_chain() {
        let d = Distribution::uniform(20, "box").unwrap();
        let t = build_sequential(&d, Order::Input);
        assert_eq!(t.expected_questions(&d).unwrap(), "209/20".parse().unwrap());
        assert_eq!(t.internal_count(), 19);
        assert_eq!(t.codewords()[&0], "1");
        assert_eq!(t.codewords()[&19], "0".repeat(19));
    }

    #[test]
    fn two_outcomes() {
        let d = Distribution::uniform(2, "c").unwrap();
        for order in [Order::Input, Order::Descending] {
            let t = build_sequential(&d, order);
            assert_eq!(t.internal_count(), 1);
            assert!(t.leaf_depths().iter().all(|&(_, depth)| depth == 1));
        }
    }

    #[test]
    fn descending_order_asks_likeliest_first() {
        let ps = ["1/15", "1/3", "2/5", "1/5"].iter().map(|s| s.parse().unwrap()).collect();
        let d = Distribution::from_probabilities(ps).unwrap();
        let t = build_sequential(&d, Order::Descending);
        // 1 + (1 - 2/5) + (1 - 2/5 - 1/3)
        let expected = Rational::one()
            + (Rational::one() - "2/5".parse::<Rational>().unwrap())
            + (Rational::one() - "2/5".parse::<Rational>().unwrap() - "1/3".parse::<Rational>().unwrap());
        assert_eq!(expected, "28/15".parse().unwrap());
        assert_eq!(t.expected_questions(&d).unwrap(), expected);
        let words = t.codewords();
        assert_eq!(words[&2], "1");
        assert_eq!(words[&1], "01");
    }

    #[test]
    fn descending_ties_keep_index_order() {
        let d = Distribution::uniform(4, "u").unwrap();
        assert_eq!(build_sequential(&d, Order::Descending), build_sequential(&d, Order::Input));
    }

    #[test]
    fn single_outcome() {
        let d = Distribution::uniform(1, "u").unwrap();
        assert!(build_sequential(&d, Order::Input).root().is_leaf());
    }
}
