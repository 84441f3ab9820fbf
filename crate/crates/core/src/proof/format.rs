//! Line-oriented proof files.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 1. forall x. ((x + 0) = x) ; pa 3
//! 2. (!(forall x. ((x + 0) = x)) | ((0 + 0) = 0)) ; ax inst
//! 3. ((0 + 0) = 0) ; mp 1 2
//! ```
//!
//! Each step is `<n>. <formula> ; <justification>`, numbered from 1 without
//! gaps. Justifications are `ax <schema>`, `pa <n>`, `ind <x> <params...>`,
//! `mp <minor> <major>` and `gen <premise> <x>`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::kernel::{Justification, Proof, Step};
use crate::fol::{parse_formula, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error("line {line}: expected `<n>. <formula> ; <justification>`")]
    Layout { line: usize },
    #[error("line {line}: expected step number {expected}")]
    Numbering { line: usize, expected: usize },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: SyntaxError },
    #[error("line {line}: bad justification `{text}`: {reason}")]
    Justification { line: usize, text: String, reason: String },
}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let number = |w: &str| w.parse::<usize>().map_err(|_| format!("`{w}` is not a step number"));
        let var = |w: &str| {
            if !w.is_empty() && w.chars().all(|c| c.is_ascii_lowercase()) {
                Ok(w.to_string())
            } else {
                Err(format!("`{w}` is not a variable"))
            }
        };
        match words.as_slice() {
            ["ax", schema] => schema.parse().map(Justification::Axiom).map_err(|e| e.to_string()),
            ["pa", n] => number(n).map(Justification::Theory),
            ["ind", x, params @ ..] => Ok(Justification::Induction {
                var: var(x)?,
                params: params.iter().map(|p| var(p)).collect::<Result<_, _>>()?,
            }),
            ["mp", a, b] => Ok(Justification::ModusPonens { minor: number(a)?, major: number(b)? }),
            ["gen", a, x] => Ok(Justification::Generalization { premise: number(a)?, var: var(x)? }),
            _ => Err("unknown rule or wrong number of arguments".to_string()),
        }
    }
}

pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (head, rest) = trimmed.split_once('.').ok_or(ProofParseError::Layout { line })?;
        let expected = steps.len() + 1;
        if head.trim().parse::<usize>().ok() != Some(expected) {
            return Err(ProofParseError::Numbering { line, expected });
        }
        let (formula, just) = rest.split_once(';').ok_or(ProofParseError::Layout { line })?;
        let formula = parse_formula(formula.trim()).map_err(|source| ProofParseError::Formula { line, source })?;
        let justification = just.trim().parse().map_err(|reason| ProofParseError::Justification {
            line,
            text: just.trim().to_string(),
            reason,
        })?;
        steps.push(Step { formula, justification });
    }
    Ok(Proof::new(steps))
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, step.formula, step.justification)?;
        }
        Ok(())
    }
}

impl FromStr for Proof {
    type Err = ProofParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_proof(s)
    }
}
