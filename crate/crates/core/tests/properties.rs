//! Cross-module invariants over random distributions.

use proptest::prelude::*;
use proptest::strategy::Strategy as _;
use twenty_questions::{
    brute_force_optimal, build_huffman, simulate, surprisal_bits, Answer, Distribution, GameState, Order, Prompt,
    QuestionTree, Rational, Strategy,
};

fn rational(n: u64, d: u64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// Random rationals `a/b`, normalized to sum to one.
fn distribution(max_n: usize) -> impl proptest::strategy::Strategy<Value = Distribution> {
    prop::collection::vec((1u64..20, 1u64..20), 1..=max_n).prop_map(|raw| {
        let ps: Vec<Rational> = raw.iter().map(|&(a, b)| rational(a, b)).collect();
        let total: Rational = ps.iter().sum();
        Distribution::from_probabilities(ps.into_iter().map(|p| p / total.clone()).collect()).unwrap()
    })
}

fn all_trees(d: &Distribution) -> Vec<(Strategy, QuestionTree)> {
    Strategy::ALL.iter().filter_map(|&s| s.build(d).ok().map(|t| (s, t))).collect()
}

fn prefix_free(words: &[&String]) -> bool {
    words.iter().enumerate().all(|(i, a)| words.iter().enumerate().all(|(j, b)| i == j || !b.starts_with(a.as_str())))
}

/// Minimum cost over every possible sequence of pairwise merges.
fn merge_order_oracle(masses: Vec<Rational>) -> Rational {
    if masses.len() <= 1 {
        return Rational::zero();
    }
    let mut best: Option<Rational> = None;
    for i in 0..masses.len() {
        for j in i + 1..masses.len() {
            let merged = &masses[i] + &masses[j];
            let mut rest: Vec<Rational> =
                masses.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, m)| m.clone()).collect();
            rest.push(merged.clone());
            let cost = merged + merge_order_oracle(rest);
            if best.as_ref().is_none_or(|b| cost < *b) {
                best = Some(cost);
            }
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_builder_yields_a_valid_code_tree(d in distribution(12)) {
        let entropy = d.entropy_bits();
        for (strategy, t) in all_trees(&d) {
            prop_assert_eq!(t.validate(&d), Ok(()), "{}", strategy);
            prop_assert_eq!(t.kraft_sum(), Rational::one());
            let expected = t.expected_questions(&d).unwrap();
            prop_assert_eq!(t.internal_mass_sum(&d).unwrap(), expected.clone());
            prop_assert!((t.information_yield_bits(&d).unwrap() - entropy).abs() < 1e-9);
            prop_assert!(expected.to_f64() >= entropy - 1e-9);

            let words = t.codewords();
            let list: Vec<&String> = words.values().collect();
            prop_assert!(prefix_free(&list));
            for (&outcome, word) in &words {
                prop_assert_eq!(t.decode(word), Some(outcome));
                let along_path = t.path_surprisal_bits(&d, outcome).unwrap();
                prop_assert!((along_path - surprisal_bits(d.p(outcome)).unwrap()).abs() < 1e-9);
            }
            prop_assert_eq!(strategy.build(&d).unwrap(), t);
        }
    }

    #[test]
    fn huffman_is_optimal_and_dominant(d in distribution(10)) {
        let (huffman, _) = build_huffman(&d);
        let cost = huffman.expected_questions(&d).unwrap();
        let (optimal, oracle_tree) = brute_force_optimal(&d).unwrap();
        prop_assert_eq!(&cost, &optimal);
        prop_assert_eq!(oracle_tree.expected_questions(&d).unwrap(), optimal);
        for (strategy, t) in all_trees(&d) {
            prop_assert!(cost <= t.expected_questions(&d).unwrap(), "{} beats huffman", strategy);
        }
        let entropy = d.entropy_bits();
        prop_assert!(entropy <= cost.to_f64() + 1e-9);
        prop_assert!(cost.to_f64() < entropy + 1.0 + 1e-9);
    }

    #[test]
    fn oracle_matches_every_merge_order(d in distribution(6)) {
        let masses: Vec<Rational> = d.probabilities().cloned().collect();
        let (optimal, _) = brute_force_optimal(&d).unwrap();
        prop_assert_eq!(merge_order_oracle(masses), optimal);
    }

    #[test]
    fn merges_take_the_two_smallest(d in distribution(16)) {
        let (_, trace) = build_huffman(&d);
        prop_assert_eq!(trace.len(), d.len() - 1);
        let mut pool: Vec<Rational> = d.probabilities().cloned().collect();
        for step in &trace {
            let (a, b) = &step.merged_masses;
            prop_assert!(a.is_positive() && b.is_positive());
            prop_assert_eq!(&step.result_mass, &(a + b));
            for taken in [a, b] {
                let pos = pool.iter().position(|m| m == taken);
                prop_assert!(pos.is_some(), "merged mass {} not in pool", taken);
                pool.swap_remove(pos.unwrap());
            }
            prop_assert!(pool.iter().all(|m| a <= m && b <= m));
            pool.push(step.result_mass.clone());
        }
        prop_assert_eq!(pool, vec![Rational::one()]);
    }

    #[test]
    fn truthful_answers_reach_the_secret(d in distribution(10), secret in 0usize..10) {
        let secret = secret % d.len();
        for (_, t) in all_trees(&d) {
            let mut game = GameState::new(&t, &d).unwrap();
            let depth = t.codewords()[&secret].len();
            while let Prompt::Question { yes_labels, .. } = game.question() {
                let truthful = if yes_labels.iter().any(|l| l == d.label(secret)) { Answer::Yes } else { Answer::No };
                game.answer(truthful).unwrap();
            }
            let Prompt::Complete { outcome, questions, .. } = game.question() else { unreachable!() };
            prop_assert_eq!((outcome, questions), (secret, depth));
        }
    }
}

#[test]
fn sequential_descending_example() {
    let ps = vec![rational(2, 5), rational(1, 3), rational(1, 5), rational(1, 15)];
    let d = Distribution::from_probabilities(ps).unwrap();
    let t = Strategy::Sequential(Order::Descending).build(&d).unwrap();
    assert_eq!(t.expected_questions(&d).unwrap(), rational(28, 15));
}

#[test]
fn simulation_mean_within_five_standard_errors() {
    let d = Distribution::uniform(20, "box").unwrap();
    let (t, _) = build_huffman(&d);
    let expected = t.expected_questions(&d).unwrap().to_f64();
    let within = (0..100u64)
        .filter(|&seed| {
            let r = simulate(&t, &d, 100_000, seed).unwrap();
            (r.mean - expected).abs() < 5.0 * r.stderr
        })
        .count();
    assert!(within >= 99, "only {within} of 100 seeds within 5 standard errors");
}
