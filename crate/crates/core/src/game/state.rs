use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fol::{eval_atomic, numeral, Formula, Quantifier, Sentence};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Proponent,
    Adversary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerChoice {
    Left,
    Right,
    Instance(u64),
}

impl fmt::Display for AnswerChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerChoice::Left => f.write_str("left"),
            AnswerChoice::Right => f.write_str("right"),
            AnswerChoice::Instance(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    PickOrLeft {
        index: usize,
    },
    PickOrRight {
        index: usize,
    },
    PickWitness {
        index: usize,
        witness: u64,
    },
    /// Proponent points at a `&` or `forall` sentence; the adversary answers.
    PointAt {
        index: usize,
    },
    Answer {
        choice: AnswerChoice,
    },
}

impl Move {
    pub fn player(&self) -> Player {
        match self {
            Move::Answer { .. } => Player::Adversary,
            _ => Player::Proponent,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::PickOrLeft { index } => write!(f, "or-left {index}"),
            Move::PickOrRight { index } => write!(f, "or-right {index}"),
            Move::PickWitness { index, witness } => write!(f, "witness {index} {witness}"),
            Move::PointAt { index } => write!(f, "point {index}"),
            Move::Answer { choice } => write!(f, "answer {choice}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: String },
    #[error("the board must hold at least one sentence")]
    EmptyBoard,
    #[error("depth budget must be at least 1")]
    ZeroBudget,
}

/// A board of closed NNF sentences, the numeral bound, and whose turn it is.
///
/// The board is an ordered sequence without duplicates: adding a sentence
/// that is already present leaves the board unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    board: Vec<Sentence>,
    bound: u64,
    turn: Player,
    pending: Option<usize>,
}

impl GameState {
    /// Start a game with the proponent to move. Sentences are put into
    /// negation normal form.
    pub fn new(sentences: impl IntoIterator<Item = Sentence>, bound: u64) -> Result<Self, GameError> {
        let mut state = GameState { board: Vec::new(), bound, turn: Player::Proponent, pending: None };
        for s in sentences {
            state.add(s.nnf());
        }
        if state.board.is_empty() {
            return Err(GameError::EmptyBoard);
        }
        Ok(state)
    }

    pub fn board(&self) -> &[Sentence] {
        &self.board
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn turn(&self) -> Player {
        self.turn
    }

    pub fn pending(&self) -> Option<usize> {
        self.pending
    }

    fn add(&mut self, s: Sentence) {
        if !self.board.contains(&s) {
            self.board.push(s);
        }
    }

    /// Index of the first true literal on the board.
    pub fn win_check(&self) -> Option<usize> {
        self.board.iter().position(|s| s.is_literal() && eval_atomic(s).unwrap_or(false))
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        match (self.turn, self.pending) {
            (Player::Adversary, Some(p)) => match self.board[p].formula() {
                Formula::And(..) => {
                    moves.push(Move::Answer { choice: AnswerChoice::Left });
                    moves.push(Move::Answer { choice: AnswerChoice::Right });
                }
                Formula::Quant(Quantifier::Forall, ..) => {
                    moves.extend((0..=self.bound).map(|n| Move::Answer { choice: AnswerChoice::Instance(n) }));
                }
                _ => unreachable!("pending always indexes a & or forall sentence"),
            },
            (Player::Adversary, None) => unreachable!("adversary moves only with a pending sentence"),
            (Player::Proponent, _) => {
                for (index, s) in self.board.iter().enumerate() {
                    match s.formula() {
                        Formula::Or(..) => {
                            moves.push(Move::PickOrLeft { index });
                            moves.push(Move::PickOrRight { index });
                        }
                        Formula::Quant(Quantifier::Exists, ..) => {
                            moves.extend((0..=self.bound).map(|witness| Move::PickWitness { index, witness }));
                        }
                        Formula::And(..) | Formula::Quant(Quantifier::Forall, ..) => {
                            moves.push(Move::PointAt { index });
                        }
                        _ => {}
                    }
                }
            }
        }
        moves
    }

    pub fn apply_move(&self, mv: Move) -> Result<GameState, GameError> {
        let illegal = |reason: String| GameError::IllegalMove { mv, reason };
        if mv.player() != self.turn {
            return Err(illegal(format!("it is the {:?}'s turn", self.turn).to_lowercase()));
        }
        let sentence_at =
            |index: usize| self.board.get(index).ok_or_else(|| illegal(format!("no sentence at index {index}")));
        let mut next = self.clone();
        match mv {
            Move::PickOrLeft { index } | Move::PickOrRight { index } => {
                let Formula::Or(l, r) = sentence_at(index)?.formula() else {
                    return Err(illegal(format!("sentence {index} is not a disjunction")));
                };
                let part = if matches!(mv, Move::PickOrLeft { .. }) { l } else { r };
                next.add(closed(part));
            }
            Move::PickWitness { index, witness } => {
                let Formula::Quant(Quantifier::Exists, v, body) = sentence_at(index)?.formula() else {
                    return Err(illegal(format!("sentence {index} is not existential")));
                };
                if witness > self.bound {
                    return Err(illegal(format!("witness {witness} exceeds the bound {}", self.bound)));
                }
                next.add(instance(body, v, witness));
            }
            Move::PointAt { index } => match sentence_at(index)?.formula() {
                Formula::And(..) | Formula::Quant(Quantifier::Forall, ..) => {
                    next.turn = Player::Adversary;
                    next.pending = Some(index);
                }
                _ => return Err(illegal(format!("sentence {index} is not a conjunction or universal"))),
            },
            Move::Answer { choice } => {
                let p = self.pending.expect("adversary turn has a pending sentence");
                let component = match (self.board[p].formula(), choice) {
                    (Formula::And(l, _), AnswerChoice::Left) => closed(l),
                    (Formula::And(_, r), AnswerChoice::Right) => closed(r),
                    (Formula::Quant(Quantifier::Forall, v, body), AnswerChoice::Instance(n)) => {
                        if n > self.bound {
                            return Err(illegal(format!("instance {n} exceeds the bound {}", self.bound)));
                        }
                        instance(body, v, n)
                    }
                    _ => return Err(illegal(format!("answer {choice} does not fit sentence {p}"))),
                };
                next.board.remove(p);
                next.add(component);
                next.turn = Player::Proponent;
                next.pending = None;
            }
        }
        Ok(next)
    }

    /// Board sentences as canonical strings, sorted; identifies the board as a set.
    pub(crate) fn set_key(&self) -> (Vec<String>, Option<String>) {
        let mut board: Vec<String> = self.board.iter().map(ToString::to_string).collect();
        board.sort();
        (board, self.pending.map(|p| self.board[p].to_string()))
    }
}

fn closed(part: &Formula) -> Sentence {
    Sentence::try_from(part.clone()).expect("component of a sentence is closed")
}

fn instance(body: &Formula, var: &str, n: u64) -> Sentence {
    let f = body.substitute(var, &numeral(n)).expect("numerals are closed");
    Sentence::try_from(f).expect("instance of a sentence body is closed")
}

/// Structural measure of a sentence in negation normal form: literals get
/// `0`, a binary connective gets `(deg a # deg b) + 1`, and a quantifier
/// gets `ω^(deg body)`. Every component of a sentence has smaller degree.
pub fn degree(f: &Formula) -> Ordinal {
    match f {
        Formula::Eq(..) | Formula::Gt(..) => Ordinal::zero(),
        Formula::Not(inner) if inner.is_atomic() => Ordinal::zero(),
        Formula::Not(inner) => degree(inner),
        Formula::Or(a, b) | Formula::And(a, b) => degree(a).natural_sum(&degree(b)).successor(),
        Formula::Quant(_, _, body) => degree(body).omega_power(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_sentence;

    fn game(sentences: &[&str], bound: u64) -> GameState {
        GameState::new(sentences.iter().map(|s| parse_sentence(s).unwrap()), bound).unwrap()
    }

    fn texts(s: &GameState) -> Vec<String> {
        s.board().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn win_check_examples() {
        assert_eq!(game(&["0 = S0"], 1).win_check(), None);
        assert_eq!(game(&["0 = S0", "S0 = S0"], 1).win_check(), Some(1));
        assert_eq!(game(&["forall x. x = x"], 1).win_check(), None);
        assert_eq!(game(&["!(0 = S0)"], 1).win_check(), Some(0));
    }

    #[test]
    fn legal_move_examples() {
        let g = game(&["exists x. x + x = SS0"], 2);
        assert_eq!(g.legal_moves(), (0..=2).map(|w| Move::PickWitness { index: 0, witness: w }).collect::<Vec<_>>());
        assert_eq!(game(&["(0=0) & (S0=S0)"], 2).legal_moves(), vec![Move::PointAt { index: 0 }]);
        let pointed = game(&["forall x. x=x"], 1).apply_move(Move::PointAt { index: 0 }).unwrap();
        assert_eq!(pointed.turn(), Player::Adversary);
        assert_eq!(
            pointed.legal_moves(),
            vec![
                Move::Answer { choice: AnswerChoice::Instance(0) },
                Move::Answer { choice: AnswerChoice::Instance(1) }
            ]
        );
    }

    #[test]
    fn or_pick_keeps_the_disjunction() {
        let g = game(&["0 = S0 | S0 = 0"], 1);
        let next = g.apply_move(Move::PickOrLeft { index: 0 }).unwrap();
        assert_eq!(texts(&next), vec!["((0 = S0) | (S0 = 0))", "(0 = S0)"]);
        assert_eq!(next.turn(), Player::Proponent);
        // picking the same component again is a no-op
        assert_eq!(next.apply_move(Move::PickOrLeft { index: 0 }).unwrap(), next);
    }

    #[test]
    fn answer_removes_the_pointed_sentence() {
        let g = game(&["0 = S0 & S0 = 0"], 1);
        let pointed = g.apply_move(Move::PointAt { index: 0 }).unwrap();
        let answered = pointed.apply_move(Move::Answer { choice: AnswerChoice::Left }).unwrap();
        assert_eq!(texts(&answered), vec!["(0 = S0)"]);
        assert_eq!(answered.turn(), Player::Proponent);
        assert_eq!(answered.pending(), None);
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let g = game(&["exists x. x = 0"], 2);
        let err = g.apply_move(Move::PickWitness { index: 0, witness: 5 }).unwrap_err();
        assert!(matches!(err, GameError::IllegalMove { ref reason, .. } if reason.contains("exceeds")));
        assert!(g.apply_move(Move::PointAt { index: 0 }).is_err());
        assert!(g.apply_move(Move::PickOrLeft { index: 3 }).is_err());
        assert!(g.apply_move(Move::Answer { choice: AnswerChoice::Left }).is_err());
    }

    #[test]
    fn degrees() {
        let d = |s: &str| degree(parse_sentence(s).unwrap().formula());
        assert_eq!(d("0 = S0"), Ordinal::zero());
        assert_eq!(d("forall x. x = x"), "[[]]".parse().unwrap());
        assert_eq!(d("forall x. exists y. x = y"), "[[[]]]".parse().unwrap());
        assert_eq!(d("0 = 0 | forall x. x = x"), "[[],[]]".parse().unwrap());
    }

    #[test]
    fn board_is_normalized() {
        let g = game(&["!(forall x. x = 0)", "!(forall x. x = 0)"], 1);
        assert_eq!(texts(&g), vec!["exists x. !(x = 0)"]);
        assert!(matches!(GameState::new(Vec::new(), 1), Err(GameError::EmptyBoard)));
    }
}
