//! Down-top merging (Huffman) with the two-queue construction.

use std::collections::VecDeque;

use crate::distribution::Distribution;
use crate::numerics::Rational;
use crate::tree::{Node, QuestionTree};

/// One merge of the two least probable boxes into a bigger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeStep {
    pub step_index: usize,
    /// `(taken first, taken second)`; the first becomes the No branch.
    pub merged_masses: (Rational, Rational),
    pub result_mass: Rational,
}

struct Pending {
    mass: Rational,
    node: Node,
}

fn take_smallest(leaves: &mut VecDeque<Pending>, merged: &mut VecDeque<Pending>) -> Pending {
    let from_leaves = match (leaves.front(), merged.front()) {
        (Some(a), Some(b)) => a.mass <= b.mass,
        (Some(_), None) => true,
        (None, _) => false,
    };
    let queue = if from_leaves { leaves } else { merged };
    queue.pop_front().expect("caller checks that two items remain")
}

/// Builds the Huffman tree and the merge trace.
///
/// Leaves wait in one queue sorted by `(p, index)`, merged boxes in a second
/// queue in creation order; merged masses never decrease, so both fronts are
/// the minima. Ties between the queues go to the leaf queue. Of each merged
/// pair, the box taken first (the lighter one) becomes the No branch.
pub fn build_huffman(d: &Distribution) -> (QuestionTree, Vec<MergeStep>) {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d.p(a).cmp(d.p(b)).then(a.cmp(&b)));
    let mut leaves: VecDeque<Pending> =
        order.into_iter().map(|i| Pending { mass: d.p(i).clone(), node: Node::leaf(i) }).collect();
    let mut merged: VecDeque<Pending> = VecDeque::with_capacity(d.len());
    let mut trace = Vec::with_capacity(d.len().saturating_sub(1));

    while leaves.len() + merged.len() > 1 {
        let no = take_smallest(&mut leaves, &mut merged);
        let yes = take_smallest(&mut leaves, &mut merged);
        let mass = &no.mass + &yes.mass;
        trace.push(MergeStep {
            step_index: trace.len(),
            merged_masses: (no.mass, yes.mass),
            result_mass: mass.clone(),
        });
        merged.push_back(Pending { mass, node: Node::question(yes.node, no.node) });
    }

    let root = leaves.pop_front().or_else(|| merged.pop_front()).expect("non-empty distribution");
    (QuestionTree::new(root.node), trace)
}
