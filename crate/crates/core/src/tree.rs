//! Question trees: full binary decision trees whose internal nodes ask
//! "is the outcome in this set?" and whose leaves name one outcome.
//!
//! Depth counts questions asked, so a tree that is a single leaf has depth 0
//! and the Yes branch emits bit `1` in codewords.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::distribution::Distribution;
use crate::numerics::{binary_entropy_bits, surprisal_bits, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn bit(self) -> char {
        match self {
            Answer::Yes => '1',
            Answer::No => '0',
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf {
        outcome: usize,
    },
    Internal {
        /// Outcomes for which the answer is Yes; always the leaves of `yes`.
        yes_set: BTreeSet<usize>,
        yes: Box<Node>,
        no: Box<Node>,
    },
}

impl Node {
    pub fn leaf(outcome: usize) -> Self {
        Node::Leaf { outcome }
    }

    /// An internal node whose Yes-set is taken from the leaves of `yes`.
    pub fn question(yes: Node, no: Node) -> Self {
        let yes_set = yes.outcomes();
        Node::Internal { yes_set, yes: Box::new(yes), no: Box::new(no) }
    }

    /// An internal node with an explicit Yes-set, which [`QuestionTree::validate`] checks.
    pub fn question_with_set(yes_set: BTreeSet<usize>, yes: Node, no: Node) -> Self {
        Node::Internal { yes_set, yes: Box::new(yes), no: Box::new(no) }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf { .. })
    }

    /// Leaf outcomes below this node.
    pub fn outcomes(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        self.for_each_leaf(0, &mut |outcome, _| {
            set.insert(outcome);
        });
        set
    }

    /// Child reached by `answer`, or `None` at a leaf.
    pub fn child(&self, answer: Answer) -> Option<&Node> {
        match self {
            Node::Leaf { .. } => None,
            Node::Internal { yes, no, .. } => Some(match answer {
                Answer::Yes => yes,
                Answer::No => no,
            }),
        }
    }

    fn for_each_leaf(&self, depth: usize, visit: &mut impl FnMut(usize, usize)) {
        match self {
            Node::Leaf { outcome } => visit(*outcome, depth),
            Node::Internal { yes, no, .. } => {
                yes.for_each_leaf(depth + 1, visit);
                no.for_each_leaf(depth + 1, visit);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutcomeOutOfRange { outcome: usize, path: String },
    DuplicateLeaf { outcome: usize },
    MissingOutcome { outcome: usize },
    InconsistentYesSet { path: String },
    ImproperYesSet { path: String },
}

fn show_path(path: &str) -> &str {
    if path.is_empty() {
        "root"
    } else {
        path
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutcomeOutOfRange { outcome, path } => {
                write!(f, "leaf at {} names outcome {outcome}, which does not exist", show_path(path))
            }
            Violation::DuplicateLeaf { outcome } => write!(f, "duplicate leaf for outcome {outcome}"),
            Violation::MissingOutcome { outcome } => write!(f, "missing outcome {outcome}"),
            Violation::InconsistentYesSet { path } => {
                write!(f, "yes_set at {} differs from the leaves of its Yes child", show_path(path))
            }
            Violation::ImproperYesSet { path } => {
                write!(f, "yes_set at {} is not a non-empty strict subset of the node's outcomes", show_path(path))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid question tree: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown outcome {outcome} (distribution has {count})")]
    UnknownOutcome { outcome: usize, count: usize },
}

fn join_violations(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Leaves at one depth: how many, and how much probability they carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthBucket {
    pub leaves: usize,
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionTree {
    root: Node,
}

impl QuestionTree {
    pub fn new(root: Node) -> Self {
        QuestionTree { root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// All violated invariants against `d`'s outcome count, or `Ok`.
    pub fn validate(&self, d: &Distribution) -> Result<(), TreeError> {
        let mut violations = Vec::new();
        let mut seen = vec![0usize; d.len()];
        let mut path = String::new();
        check_node(&self.root, &mut path, &mut seen, &mut violations);
        for (outcome, &count) in seen.iter().enumerate() {
            match count {
                0 => violations.push(Violation::MissingOutcome { outcome }),
                1 => {}
                _ => violations.push(Violation::DuplicateLeaf { outcome }),
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(TreeError::Invalid(violations))
        }
    }

    /// `(outcome, depth)` for every leaf, in pre-order.
    pub fn leaf_depths(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.root.for_each_leaf(0, &mut |outcome, depth| out.push((outcome, depth)));
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_depths().len()
    }

    pub fn internal_count(&self) -> usize {
        fn count(node: &Node) -> usize {
            match node {
                Node::Leaf { .. } => 0,
                Node::Internal { yes, no, .. } => 1 + count(yes) + count(no),
            }
        }
        count(&self.root)
    }

    /// Root-to-leaf bit strings: `1` for Yes, `0` for No.
    pub fn codewords(&self) -> BTreeMap<usize, String> {
        fn walk(node: &Node, prefix: &mut String, out: &mut BTreeMap<usize, String>) {
            match node {
                Node::Leaf { outcome } => {
                    out.insert(*outcome, prefix.clone());
                }
                Node::Internal { yes, no, .. } => {
                    prefix.push('1');
                    walk(yes, prefix, out);
                    prefix.pop();
                    prefix.push('0');
                    walk(no, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = BTreeMap::new();
        walk(&self.root, &mut String::new(), &mut out);
        out
    }

    /// Leaf reached by following `bits` from the root, if the path ends on a leaf.
    pub fn decode(&self, bits: &str) -> Option<usize> {
        let mut node = &self.root;
        for bit in bits.chars() {
            let answer = match bit {
                '1' => Answer::Yes,
                '0' => Answer::No,
                _ => return None,
            };
            node = node.child(answer)?;
        }
        match node {
            Node::Leaf { outcome } => Some(*outcome),
            Node::Internal { .. } => None,
        }
    }

    /// `Σ pᵢ·depth(i)`.
    pub fn expected_questions(&self, d: &Distribution) -> Result<Rational, TreeError> {
        self.validate(d)?;
        Ok(self.leaf_depths().into_iter().map(|(outcome, depth)| d.p(outcome) * &Rational::from(depth as u64)).sum())
    }

    /// Sum of the reach probability of every internal node: each question costs
    /// one bit times the probability that it gets asked.
    pub fn internal_mass_sum(&self, d: &Distribution) -> Result<Rational, TreeError> {
        self.validate(d)?;
        fn walk(node: &Node, d: &Distribution, total: &mut Rational) -> Rational {
            match node {
                Node::Leaf { outcome } => d.p(*outcome).clone(),
                Node::Internal { yes, no, .. } => {
                    let mass = walk(yes, d, total) + walk(no, d, total);
                    *total += &mass;
                    mass
                }
            }
        }
        let mut total = Rational::zero();
        walk(&self.root, d, &mut total);
        Ok(total)
    }

    /// `Σ p(node)·H_b(p(yes)/p(node))` over internal nodes.
    pub fn information_yield_bits(&self, d: &Distribution) -> Result<f64, TreeError> {
        self.validate(d)?;
        fn walk(node: &Node, d: &Distribution, total: &mut f64) -> Rational {
            match node {
                Node::Leaf { outcome } => d.p(*outcome).clone(),
                Node::Internal { yes, no, .. } => {
                    let yes_mass = walk(yes, d, total);
                    let mass = &yes_mass + &walk(no, d, total);
                    let split = &yes_mass / &mass;
                    *total += mass.to_f64() * binary_entropy_bits(&split).expect("split in [0, 1]");
                    mass
                }
            }
        }
        let mut total = 0.0;
        walk(&self.root, d, &mut total);
        Ok(total)
    }

    /// Answers along the root-to-leaf path of `outcome`, with the node each answer was given at.
    pub fn path_to(&self, outcome: usize) -> Option<Vec<(&Node, Answer)>> {
        let mut node = &self.root;
        let mut path = Vec::new();
        loop {
            match node {
                Node::Leaf { outcome: found } => return (*found == outcome).then_some(path),
                Node::Internal { yes_set, yes, no } => {
                    let answer = if yes_set.contains(&outcome) { Answer::Yes } else { Answer::No };
                    path.push((node, answer));
                    node = if answer == Answer::Yes { yes } else { no };
                }
            }
        }
    }

    /// Sum over the path to `outcome` of `-log₂ P(answer | node reached)`.
    pub fn path_surprisal_bits(&self, d: &Distribution, outcome: usize) -> Result<f64, TreeError> {
        self.validate(d)?;
        if outcome >= d.len() {
            return Err(TreeError::UnknownOutcome { outcome, count: d.len() });
        }
        let path = self.path_to(outcome).expect("valid tree has a leaf for every outcome");
        Ok(path
            .into_iter()
            .map(|(node, answer)| {
                let reached = d.mass(&node.outcomes());
                let taken = d.mass(&node.child(answer).expect("internal").outcomes());
                surprisal_bits(&(&taken / &reached)).expect("conditional probability in (0, 1]")
            })
            .fold(0.0, |acc, bits| acc + bits))
    }

    pub fn depth_histogram(&self, d: &Distribution) -> Result<BTreeMap<usize, DepthBucket>, TreeError> {
        self.validate(d)?;
        let mut histogram: BTreeMap<usize, DepthBucket> = BTreeMap::new();
        for (outcome, depth) in self.leaf_depths() {
            let bucket =
                histogram.entry(depth).or_insert_with(|| DepthBucket { leaves: 0, probability: Rational::zero() });
            bucket.leaves += 1;
            bucket.probability += d.p(outcome);
        }
        Ok(histogram)
    }

    /// `Σ 2^-depth` over leaves; exactly 1 for any full binary tree.
    pub fn kraft_sum(&self) -> Rational {
        self.leaf_depths().into_iter().map(|(_, depth)| Rational::dyadic(depth)).sum()
    }

    /// Graphviz text. Nodes are numbered in pre-order; internal nodes show the
    /// Yes-set and reach probability, edges carry `Yes`/`No`.
    pub fn export_dot(&self, d: &Distribution) -> Result<String, TreeError> {
        self.validate(d)?;
        let mut out = String::from("digraph questions {\n");
        out.push_str("  node [fontname=\"Helvetica\"];\n");
        let mut next_id = 0usize;
        dot_node(&self.root, d, &mut next_id, &mut out);
        out.push_str("}\n");
        Ok(out)
    }
}

fn check_node(node: &Node, path: &mut String, seen: &mut [usize], violations: &mut Vec<Violation>) {
    match node {
        Node::Leaf { outcome } => match seen.get_mut(*outcome) {
            Some(count) => *count += 1,
            None => violations.push(Violation::OutcomeOutOfRange { outcome: *outcome, path: path.clone() }),
        },
        Node::Internal { yes_set, yes, no } => {
            let yes_leaves = yes.outcomes();
            if *yes_set != yes_leaves {
                violations.push(Violation::InconsistentYesSet { path: path.clone() });
            }
            let mut reach = yes_leaves;
            reach.extend(no.outcomes());
            if yes_set.is_empty() || !yes_set.is_subset(&reach) || yes_set.len() == reach.len() {
                violations.push(Violation::ImproperYesSet { path: path.clone() });
            }
            path.push('1');
            check_node(yes, path, seen, violations);
            path.pop();
            path.push('0');
            check_node(no, path, seen, violations);
            path.pop();
        }
    }
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_node(node: &Node, d: &Distribution, next_id: &mut usize, out: &mut String) -> usize {
    let id = *next_id;
    *next_id += 1;
    match node {
        Node::Leaf { outcome } => {
            let label = dot_escape(d.label(*outcome));
            writeln!(out, "  n{id} [shape=ellipse, label=\"{label}\\n{}\"];", d.p(*outcome)).unwrap();
        }
        Node::Internal { yes_set, yes, no } => {
            let labels: Vec<&str> = yes_set.iter().map(|&i| d.label(i)).collect();
            let mass = d.mass(&node.outcomes());
            writeln!(out, "  n{id} [shape=box, label=\"{{{}}}?\\n{mass}\"];", dot_escape(&labels.join(", "))).unwrap();
            let yes_id = dot_node(yes, d, next_id, out);
            writeln!(out, "  n{id} -> n{yes_id} [label=\"Yes\"];").unwrap();
            let no_id = dot_node(no, d, next_id, out);
            writeln!(out, "  n{id} -> n{no_id} [label=\"No\"];").unwrap();
        }
    }
    id
}
