use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::syntax::{Formula, Quantifier, Term};
use super::Sentence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("term is not closed: variable {0} has no value")]
    Unbound(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("expected an atomic or negated atomic sentence, got {0}")]
    NotAtomic(String),
}

/// Bounded three-valued verdict. The bound is kept for auditability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "verdict", content = "bound", rename_all = "snake_case")]
pub enum TruthB {
    TrueAt(u64),
    FalseAt(u64),
    /// Some intermediate value overflowed `u64`.
    Unknown,
}

impl TruthB {
    pub fn is_true(self) -> bool {
        matches!(self, TruthB::TrueAt(_))
    }
}

impl fmt::Display for TruthB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthB::TrueAt(b) => write!(f, "TRUE@{b}"),
            TruthB::FalseAt(b) => write!(f, "FALSE@{b}"),
            TruthB::Unknown => f.write_str("UNKNOWN"),
        }
    }
}

/// Variable assignment; later entries shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct Env(Vec<(String, u64)>);

impl Env {
    pub fn new() -> Self {
        Env(Vec::new())
    }

    pub fn with(mut self, name: impl Into<String>, value: u64) -> Self {
        self.0.push((name.into(), value));
        self
    }

    fn lookup(&self, name: &str) -> Option<u64> {
        self.0.iter().rev().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

pub fn eval_term(t: &Term, env: &Env) -> Result<u64, EvalError> {
    match t {
        Term::Zero => Ok(0),
        Term::Var(v) => env.lookup(v).ok_or_else(|| EvalError::Unbound(v.clone())),
        Term::Succ(t) => eval_term(t, env)?.checked_add(1).ok_or(EvalError::Overflow),
        Term::Plus(a, b) => eval_term(a, env)?.checked_add(eval_term(b, env)?).ok_or(EvalError::Overflow),
        Term::Times(a, b) => eval_term(a, env)?.checked_mul(eval_term(b, env)?).ok_or(EvalError::Overflow),
    }
}

pub fn eval_closed_term(t: &Term) -> Result<u64, EvalError> {
    eval_term(t, &Env::new())
}

/// Truth of an atomic sentence or the negation of one, by calculation.
pub fn eval_atomic(f: &Formula) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(a, b) => Ok(eval_closed_term(a)? == eval_closed_term(b)?),
        Formula::Gt(a, b) => Ok(eval_closed_term(a)? > eval_closed_term(b)?),
        Formula::Not(inner) if inner.is_atomic() => Ok(!eval_atomic(inner)?),
        other => Err(EvalError::NotAtomic(other.to_string())),
    }
}

/// Evaluate with every quantifier ranging over `0..=bound`.
///
/// This is exact truth over the naturals when each quantifier is
/// semantically bounded by `bound`; otherwise it is the verdict of the
/// finite structure `{0..bound}` with terms computed in the naturals.
pub fn eval_bounded(s: &Sentence, bound: u64) -> TruthB {
    match eval_bounded_in(s.formula(), &Env::new(), bound) {
        Ok(true) => TruthB::TrueAt(bound),
        Ok(false) => TruthB::FalseAt(bound),
        Err(_) => TruthB::Unknown,
    }
}

pub fn eval_bounded_in(f: &Formula, env: &Env, bound: u64) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(a, b) => Ok(eval_term(a, env)? == eval_term(b, env)?),
        Formula::Gt(a, b) => Ok(eval_term(a, env)? > eval_term(b, env)?),
        Formula::Not(inner) => Ok(!eval_bounded_in(inner, env, bound)?),
        Formula::Or(a, b) => Ok(eval_bounded_in(a, env, bound)? || eval_bounded_in(b, env, bound)?),
        Formula::And(a, b) => Ok(eval_bounded_in(a, env, bound)? && eval_bounded_in(b, env, bound)?),
        Formula::Quant(q, v, body) => {
            for n in 0..=bound {
                let inner = env.clone().with(v.clone(), n);
                let holds = eval_bounded_in(body, &inner, bound)?;
                match q {
                    Quantifier::Forall if !holds => return Ok(false),
                    Quantifier::Exists if holds => return Ok(true),
                    _ => {}
                }
            }
            Ok(*q == Quantifier::Forall)
        }
    }
}
