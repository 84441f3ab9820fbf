//! The reduction game on boards of arithmetic sentences.
//!
//! The proponent wins once the board holds a true literal. On a `|` or
//! `exists` sentence the proponent adds a component (keeping the sentence)
//! and moves again; pointing at a `&` or `forall` sentence hands the turn to
//! the adversary, who replaces it with a component of their choice.
//!
//! Numerals chosen by either player range over `0..=bound`, which makes the
//! game finite: the adversary cannot answer `forall` with arbitrary numbers
//! as in the unbounded game.

mod play;
mod state;
mod synth;

pub use play::{
    adversary_reply, hint, play, replay_all, FirstLegal, Hint, MinimaxAdversary, Outcome, ScriptedAdversary,
    SearchProponent, Strategy, Trace, TreeStrategy, TRACE_SCHEMA_VERSION,
};
pub use state::{degree, AnswerChoice, GameError, GameState, Move, Player};
pub use synth::{default_depth, synthesize_reduction, StrategyNode, StrategyTree, TreeError};
