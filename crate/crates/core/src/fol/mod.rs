//! The first-order language of arithmetic: syntax, parsing, canonical
//! printing, substitution, negation normal form, bounded evaluation, and
//! the Peano axioms.

mod eval;
mod parser;
mod peano;
mod syntax;

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

pub use eval::{eval_atomic, eval_bounded, eval_bounded_in, eval_closed_term, eval_term, Env, EvalError, TruthB};
pub use parser::{parse_formula, parse_term, SyntaxError, MAX_LITERAL};
pub use peano::{induction_instance, pa_axioms, InductionError, PA_AXIOMS};
pub use syntax::{numeral, Formula, Quantifier, SubstError, Term};

/// A formula with no free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence(Formula);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SentenceError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("not a sentence: free variables {0:?}")]
    FreeVariables(Vec<String>),
}

impl Sentence {
    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    pub fn nnf(&self) -> Sentence {
        Sentence(self.0.nnf())
    }
}

impl TryFrom<Formula> for Sentence {
    type Error = SentenceError;

    fn try_from(f: Formula) -> Result<Self, Self::Error> {
        let free = f.free_vars();
        if free.is_empty() {
            Ok(Sentence(f))
        } else {
            Err(SentenceError::FreeVariables(free.into_iter().collect()))
        }
    }
}

impl Deref for Sentence {
    type Target = Formula;

    fn deref(&self) -> &Formula {
        &self.0
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn parse_sentence(text: &str) -> Result<Sentence, SentenceError> {
    Sentence::try_from(parse_formula(text)?)
}
