//! Interactive play-through of a question tree.
//!
//! The engine never knows the hidden outcome; it only follows answers.

use thiserror::Error;

use crate::distribution::Distribution;
use crate::tree::{Answer, Node, QuestionTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("the game is already complete")]
    AlreadyComplete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub yes_labels: Vec<String>,
    pub answer: Answer,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Prompt {
    Question { text: String, yes_labels: Vec<String> },
    Complete { outcome: usize, label: String, questions: usize, surprisal_bits: f64 },
}

#[derive(Debug, Clone)]
pub struct GameState<'a> {
    tree: &'a QuestionTree,
    distribution: &'a Distribution,
    current: &'a Node,
    transcript: Vec<Exchange>,
}

impl<'a> GameState<'a> {
    pub fn new(tree: &'a QuestionTree, distribution: &'a Distribution) -> Result<Self, TreeError> {
        tree.validate(distribution)?;
        Ok(GameState { tree, distribution, current: tree.root(), transcript: Vec::new() })
    }

    pub fn is_complete(&self) -> bool {
        self.current.is_leaf()
    }

    pub fn questions_asked(&self) -> usize {
        self.transcript.len()
    }

    pub fn transcript(&self) -> &[Exchange] {
        &self.transcript
    }

    fn yes_labels(&self) -> Vec<String> {
        match self.current {
            Node::Internal { yes_set, .. } => yes_set.iter().map(|&i| self.distribution.label(i).to_string()).collect(),
            Node::Leaf { .. } => Vec::new(),
        }
    }

    pub fn question(&self) -> Prompt {
        match self.current {
            Node::Leaf { outcome } => Prompt::Complete {
                outcome: *outcome,
                label: self.distribution.label(*outcome).to_string(),
                questions: self.questions_asked(),
                surprisal_bits: self
                    .tree
                    .path_surprisal_bits(self.distribution, *outcome)
                    .expect("tree validated at construction"),
            },
            Node::Internal { .. } => {
                let yes_labels = self.yes_labels();
                let text = format!("Is it one of {{{}}}?", yes_labels.join(", "));
                Prompt::Question { text, yes_labels }
            }
        }
    }

    pub fn answer(&mut self, answer: Answer) -> Result<(), GameError> {
        let next = self.current.child(answer).ok_or(GameError::AlreadyComplete)?;
        let yes_labels = self.yes_labels();
        self.transcript.push(Exchange { yes_labels, answer });
        self.current = next;
        Ok(())
    }
}
