//! Exhaustive minimax over the bounded game.
//!
//! A reduction is a proponent strategy that wins against every adversary
//! answer. Search is iterative deepening on plies, so the tree returned is
//! a shallowest one; ties go to the earliest move in [`GameState::legal_moves`]
//! order (lowest index, left before right, smallest witness).

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use super::state::{AnswerChoice, GameError, GameState, Move, Player};
use crate::ordinal::Ordinal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum StrategyNode {
    /// The board holds a true literal at `index`.
    Win {
        index: usize,
    },
    Proponent {
        mv: Move,
        child: Box<StrategyTree>,
    },
    /// One child per legal answer to the sentence at `pointed`.
    Adversary {
        pointed: usize,
        children: Vec<(AnswerChoice, StrategyTree)>,
    },
}

/// A strategy tree with an ordinal measure on every node.
///
/// The measure is the rank of the node in the finite tree: `0` at a win,
/// and one more than the largest child measure elsewhere, so it strictly
/// decreases along every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyTree {
    pub node: StrategyNode,
    pub measure: Ordinal,
}

impl StrategyTree {
    fn win(index: usize) -> Self {
        StrategyTree { node: StrategyNode::Win { index }, measure: Ordinal::zero() }
    }

    fn proponent(mv: Move, child: StrategyTree) -> Self {
        let measure = child.measure.successor();
        StrategyTree { node: StrategyNode::Proponent { mv, child: Box::new(child) }, measure }
    }

    fn adversary(pointed: usize, children: Vec<(AnswerChoice, StrategyTree)>) -> Self {
        let top = children.iter().map(|(_, c)| &c.measure).max().cloned().unwrap_or_default();
        StrategyTree { node: StrategyNode::Adversary { pointed, children }, measure: top.successor() }
    }

    /// Number of plies on the longest line.
    pub fn depth(&self) -> usize {
        match &self.node {
            StrategyNode::Win { .. } => 0,
            StrategyNode::Proponent { child, .. } => 1 + child.depth(),
            StrategyNode::Adversary { children, .. } => 1 + children.iter().map(|(_, c)| c.depth()).max().unwrap_or(0),
        }
    }

    /// Every sequence of adversary answers the tree accounts for.
    pub fn adversary_lines(&self) -> Vec<Vec<AnswerChoice>> {
        match &self.node {
            StrategyNode::Win { .. } => vec![Vec::new()],
            StrategyNode::Proponent { child, .. } => child.adversary_lines(),
            StrategyNode::Adversary { children, .. } => children
                .iter()
                .flat_map(|(choice, child)| {
                    child.adversary_lines().into_iter().map(move |mut line| {
                        line.insert(0, *choice);
                        line
                    })
                })
                .collect(),
        }
    }

    /// All (parent measure, child measure) pairs.
    pub fn edges(&self) -> Vec<(&Ordinal, &Ordinal)> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out
    }

    fn collect_edges<'a>(&'a self, out: &mut Vec<(&'a Ordinal, &'a Ordinal)>) {
        match &self.node {
            StrategyNode::Win { .. } => {}
            StrategyNode::Proponent { child, .. } => {
                out.push((&self.measure, &child.measure));
                child.collect_edges(out);
            }
            StrategyNode::Adversary { children, .. } => {
                for (_, c) in children {
                    out.push((&self.measure, &c.measure));
                    c.collect_edges(out);
                }
            }
        }
    }

    /// Check the tree against the game from `state`: win leaves name true
    /// literals, proponent moves are legal, adversary nodes cover every
    /// legal answer, and measures strictly decrease.
    pub fn verify(&self, state: &GameState) -> Result<(), TreeError> {
        match &self.node {
            StrategyNode::Win { index } => {
                if state.turn() == Player::Proponent && state.win_check().is_some_and(|w| w <= *index) {
                    let s = &state.board()[*index];
                    if s.is_literal() && crate::fol::eval_atomic(s).unwrap_or(false) {
                        return Ok(());
                    }
                }
                Err(TreeError::BadWin(*index))
            }
            StrategyNode::Proponent { mv, child } => {
                if state.turn() != Player::Proponent || !state.legal_moves().contains(mv) {
                    return Err(TreeError::IllegalMove(*mv));
                }
                if child.measure >= self.measure {
                    return Err(TreeError::MeasureNotDecreasing);
                }
                let next = state.apply_move(*mv).map_err(|_| TreeError::IllegalMove(*mv))?;
                child.verify(&next)
            }
            StrategyNode::Adversary { pointed, children } => {
                if state.turn() != Player::Adversary || state.pending() != Some(*pointed) {
                    return Err(TreeError::WrongTurn);
                }
                let answers: Vec<AnswerChoice> = state
                    .legal_moves()
                    .into_iter()
                    .filter_map(|m| match m {
                        Move::Answer { choice } => Some(choice),
                        _ => None,
                    })
                    .collect();
                let covered: Vec<AnswerChoice> = children.iter().map(|(c, _)| *c).collect();
                if covered != answers {
                    return Err(TreeError::MissingAnswers);
                }
                for (choice, child) in children {
                    if child.measure >= self.measure {
                        return Err(TreeError::MeasureNotDecreasing);
                    }
                    let mv = Move::Answer { choice: *choice };
                    let next = state.apply_move(mv).map_err(|_| TreeError::IllegalMove(mv))?;
                    child.verify(&next)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("win leaf at index {0} does not name the first true literal")]
    BadWin(usize),
    #[error("move {0} is not legal here")]
    IllegalMove(Move),
    #[error("node kind does not match whose turn it is")]
    WrongTurn,
    #[error("adversary node does not cover every legal answer")]
    MissingAnswers,
    #[error("measure does not strictly decrease along an edge")]
    MeasureNotDecreasing,
}

/// A ply budget that suffices for any single true sentence: two plies per
/// connective or quantifier, summed over the board.
pub fn default_depth(state: &GameState) -> usize {
    fn plies(f: &crate::fol::Formula) -> usize {
        use crate::fol::Formula::*;
        match f {
            Eq(..) | Gt(..) | Not(_) => 0,
            Or(a, b) | And(a, b) => 2 + plies(a) + plies(b),
            Quant(_, _, body) => 2 + plies(body),
        }
    }
    state.board().iter().map(|s| plies(s)).sum::<usize>().max(1)
}

/// Search for a reduction of `state` using at most `depth_budget` plies.
pub fn synthesize_reduction(state: &GameState, depth_budget: usize) -> Result<Option<StrategyTree>, GameError> {
    if depth_budget == 0 {
        return Err(GameError::ZeroBudget);
    }
    let mut search = Search::default();
    for depth in 0..=depth_budget {
        if let Some(tree) = search.solve(state, depth) {
            return Ok(Some(tree));
        }
    }
    Ok(None)
}

type Key = (Vec<String>, Option<String>, Player);

#[derive(Default)]
struct Search {
    /// Largest ply budget known to be insufficient for a position.
    failed: HashMap<Key, usize>,
}

impl Search {
    fn solve(&mut self, state: &GameState, depth: usize) -> Option<StrategyTree> {
        if state.turn() == Player::Proponent {
            if let Some(index) = state.win_check() {
                return Some(StrategyTree::win(index));
            }
        }
        if depth == 0 {
            return None;
        }
        let (board, pending) = state.set_key();
        let key = (board, pending, state.turn());
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return None;
        }
        let result = match state.turn() {
            Player::Proponent => self.proponent(state, depth),
            Player::Adversary => self.adversary(state, depth),
        };
        if result.is_none() {
            let entry = self.failed.entry(key).or_insert(0);
            *entry = (*entry).max(depth);
        }
        result
    }

    fn proponent(&mut self, state: &GameState, depth: usize) -> Option<StrategyTree> {
        for mv in state.legal_moves() {
            let next = state.apply_move(mv).expect("legal move applies");
            if next == *state {
                continue;
            }
            if let Some(child) = self.solve(&next, depth - 1) {
                return Some(StrategyTree::proponent(mv, child));
            }
        }
        None
    }

    fn adversary(&mut self, state: &GameState, depth: usize) -> Option<StrategyTree> {
        let pointed = state.pending().expect("adversary turn has a pending sentence");
        let mut children = Vec::new();
        for mv in state.legal_moves() {
            let Move::Answer { choice } = mv else { unreachable!() };
            let next = state.apply_move(mv).expect("legal move applies");
            children.push((choice, self.solve(&next, depth - 1)?));
        }
        Some(StrategyTree::adversary(pointed, children))
    }
}
