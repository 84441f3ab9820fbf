use serde::Serialize;

use super::state::{degree, AnswerChoice, GameState, Move, Player};
use super::synth::{default_depth, synthesize_reduction, StrategyNode, StrategyTree};

pub const TRACE_SCHEMA_VERSION: u32 = 1;

pub trait Strategy {
    fn choose(&mut self, state: &GameState) -> Option<Move>;

    /// Called after every move, by either player, with the state it was played in.
    fn observe(&mut self, _before: &GameState, _mv: &Move) {}
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    ProponentWin { index: usize },
    NoLegalMove { player: Player },
    BudgetExhausted,
    Forfeit { culprit: Player, reason: String },
}

impl Outcome {
    pub fn is_win(&self) -> bool {
        matches!(self, Outcome::ProponentWin { .. })
    }
}

/// A played game: `boards[i]` and `degrees[i]` describe the position
/// before `moves[i]`; the final position is the last entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub schema_version: u32,
    pub bound: u64,
    pub moves: Vec<String>,
    pub boards: Vec<Vec<String>>,
    pub degrees: Vec<Vec<String>>,
    pub outcome: Outcome,
}

fn snapshot(state: &GameState, trace: &mut Trace) {
    trace.boards.push(state.board().iter().map(ToString::to_string).collect());
    trace.degrees.push(state.board().iter().map(|s| degree(s).to_brackets()).collect());
}

pub fn play(
    start: &GameState,
    proponent: &mut dyn Strategy,
    adversary: &mut dyn Strategy,
    step_budget: usize,
) -> Trace {
    let mut trace = Trace {
        schema_version: TRACE_SCHEMA_VERSION,
        bound: start.bound(),
        moves: Vec::new(),
        boards: Vec::new(),
        degrees: Vec::new(),
        outcome: Outcome::BudgetExhausted,
    };
    let mut state = start.clone();
    loop {
        snapshot(&state, &mut trace);
        if state.turn() == Player::Proponent {
            if let Some(index) = state.win_check() {
                trace.outcome = Outcome::ProponentWin { index };
                return trace;
            }
        }
        if trace.moves.len() >= step_budget {
            trace.outcome = Outcome::BudgetExhausted;
            return trace;
        }
        let legal = state.legal_moves();
        if legal.is_empty() {
            trace.outcome = Outcome::NoLegalMove { player: state.turn() };
            return trace;
        }
        let player = state.turn();
        let chosen = match player {
            Player::Proponent => proponent.choose(&state),
            Player::Adversary => adversary.choose(&state),
        };
        let Some(mv) = chosen else {
            trace.outcome = Outcome::Forfeit { culprit: player, reason: "no move chosen".into() };
            return trace;
        };
        if !legal.contains(&mv) {
            trace.outcome = Outcome::Forfeit { culprit: player, reason: format!("illegal move {mv}") };
            return trace;
        }
        let next = state.apply_move(mv).expect("legal move applies");
        proponent.observe(&state, &mv);
        adversary.observe(&state, &mv);
        trace.moves.push(mv.to_string());
        state = next;
    }
}

/// Proponent that follows a synthesized strategy tree.
pub struct TreeStrategy {
    current: StrategyTree,
}

impl TreeStrategy {
    pub fn new(tree: StrategyTree) -> Self {
        TreeStrategy { current: tree }
    }
}

impl Strategy for TreeStrategy {
    fn choose(&mut self, _state: &GameState) -> Option<Move> {
        match &self.current.node {
            StrategyNode::Proponent { mv, .. } => Some(*mv),
            _ => None,
        }
    }

    fn observe(&mut self, _before: &GameState, mv: &Move) {
        let next = match (&self.current.node, mv) {
            (StrategyNode::Proponent { mv: planned, child }, played) if planned == played => Some((**child).clone()),
            (StrategyNode::Adversary { children, .. }, Move::Answer { choice }) => {
                children.iter().find(|(c, _)| c == choice).map(|(_, t)| t.clone())
            }
            _ => None,
        };
        if let Some(next) = next {
            self.current = next;
        }
    }
}

/// Adversary that plays a fixed sequence of answers, then the first legal one.
pub struct ScriptedAdversary {
    script: std::vec::IntoIter<AnswerChoice>,
}

impl ScriptedAdversary {
    pub fn new(script: Vec<AnswerChoice>) -> Self {
        ScriptedAdversary { script: script.into_iter() }
    }
}

impl Strategy for ScriptedAdversary {
    fn choose(&mut self, state: &GameState) -> Option<Move> {
        match self.script.next() {
            Some(choice) => Some(Move::Answer { choice }),
            None => state.legal_moves().into_iter().next(),
        }
    }
}

/// Plays the first legal move.
pub struct FirstLegal;

impl Strategy for FirstLegal {
    fn choose(&mut self, state: &GameState) -> Option<Move> {
        state.legal_moves().into_iter().next()
    }
}

/// Proponent that re-runs synthesis at every turn and plays the first move
/// of the reduction it finds, falling back to the first legal move.
pub struct SearchProponent;

impl Strategy for SearchProponent {
    fn choose(&mut self, state: &GameState) -> Option<Move> {
        let planned = synthesize_reduction(state, default_depth(state)).ok().flatten();
        match planned.map(|t| t.node) {
            Some(StrategyNode::Proponent { mv, .. }) => Some(mv),
            _ => state.legal_moves().into_iter().next(),
        }
    }
}

/// Adversary that answers so that the proponent has no reduction if such an
/// answer exists, and otherwise so that the proponent's shortest reduction
/// is as long as possible. Ties go to the first answer.
pub struct MinimaxAdversary;

pub fn adversary_reply(state: &GameState) -> Option<Move> {
    let mut best: Option<(usize, Move)> = None;
    for mv in state.legal_moves() {
        let next = state.apply_move(mv).ok()?;
        let cost = match synthesize_reduction(&next, default_depth(&next)).ok().flatten() {
            None => return Some(mv),
            Some(tree) => tree.depth(),
        };
        if best.is_none_or(|(c, _)| cost > c) {
            best = Some((cost, mv));
        }
    }
    best.map(|(_, mv)| mv)
}

impl Strategy for MinimaxAdversary {
    fn choose(&mut self, state: &GameState) -> Option<Move> {
        adversary_reply(state)
    }
}

/// Replay `tree` from `start` against every adversary line it covers.
pub fn replay_all(start: &GameState, tree: &StrategyTree, step_budget: usize) -> Vec<Trace> {
    tree.adversary_lines()
        .into_iter()
        .map(|line| {
            let mut pro = TreeStrategy::new(tree.clone());
            let mut adv = ScriptedAdversary::new(line);
            play(start, &mut pro, &mut adv, step_budget)
        })
        .collect()
}

/// What the engine recommends to the proponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "hint", rename_all = "snake_case")]
pub enum Hint {
    ClaimWin { index: usize },
    Play { mv: Move },
    NoReduction,
}

impl std::fmt::Display for Hint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Hint::ClaimWin { index } => write!(f, "claim win at index {index}"),
            Hint::Play { mv } => write!(f, "play {mv}"),
            Hint::NoReduction => f.write_str("no reduction"),
        }
    }
}

pub fn hint(state: &GameState, depth_budget: usize) -> Hint {
    if state.turn() == Player::Proponent {
        if let Some(index) = state.win_check() {
            return Hint::ClaimWin { index };
        }
    }
    match synthesize_reduction(state, depth_budget.max(1)).ok().flatten().map(|t| t.node) {
        Some(StrategyNode::Proponent { mv, .. }) => Hint::Play { mv },
        _ => Hint::NoReduction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_sentence;

    fn game(s: &str, bound: u64) -> GameState {
        GameState::new([parse_sentence(s).unwrap()], bound).unwrap()
    }

    #[test]
    fn true_atomic_wins_without_moves() {
        let t = play(&game("S0=S0", 1), &mut FirstLegal, &mut FirstLegal, 10);
        assert_eq!(t.outcome, Outcome::ProponentWin { index: 0 });
        assert!(t.moves.is_empty());
        assert_eq!(t.boards, vec![vec!["(S0 = S0)".to_string()]]);
        assert_eq!(t.degrees, vec![vec!["[]".to_string()]]);
    }

    #[test]
    fn false_atomic_never_wins() {
        let t = play(&game("0=S0", 1), &mut SearchProponent, &mut MinimaxAdversary, 10);
        assert!(!t.outcome.is_win());
        assert_eq!(t.outcome, Outcome::NoLegalMove { player: Player::Proponent });
    }

    #[test]
    fn false_sentence_with_moves_exhausts_budget() {
        let t = play(&game("exists x. x = S0 & x = 0", 1), &mut SearchProponent, &mut MinimaxAdversary, 10);
        assert!(!t.outcome.is_win());
    }

    #[test]
    fn replay_synthesized_tree() {
        let g = game("forall x. ((x = 0) | (x > 0))", 3);
        let tree = synthesize_reduction(&g, default_depth(&g)).unwrap().unwrap();
        let traces = replay_all(&g, &tree, 20);
        assert_eq!(traces.len(), 4);
        assert!(traces.iter().all(|t| t.outcome.is_win()));
    }

    #[test]
    fn illegal_strategy_forfeits() {
        struct Cheat;
        impl Strategy for Cheat {
            fn choose(&mut self, _: &GameState) -> Option<Move> {
                Some(Move::PickWitness { index: 0, witness: 99 })
            }
        }
        let t = play(&game("exists x. x = 0", 2), &mut Cheat, &mut FirstLegal, 5);
        assert!(matches!(t.outcome, Outcome::Forfeit { culprit: Player::Proponent, .. }));
    }

    #[test]
    fn hints() {
        assert_eq!(hint(&game("S0 = S0", 1), 4).to_string(), "claim win at index 0");
        assert_eq!(hint(&game("0 = S0", 1), 4), Hint::NoReduction);
        assert_eq!(
            hint(&game("exists x. x + x = SS0", 2), 4),
            Hint::Play { mv: Move::PickWitness { index: 0, witness: 1 } }
        );
    }

    #[test]
    fn adversary_refutes_when_it_can() {
        let g = game("forall x. x = 0", 2).apply_move(Move::PointAt { index: 0 }).unwrap();
        assert_eq!(adversary_reply(&g), Some(Move::Answer { choice: AnswerChoice::Instance(1) }));
    }
}
