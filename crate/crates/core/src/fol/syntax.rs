use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Terms over `0`, `S`, `+`, `*` and variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    Var(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(t) => t.is_closed(),
            Term::Plus(a, b) | Term::Times(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(v) => v == name,
            Term::Succ(t) => t.contains_var(name),
            Term::Plus(a, b) | Term::Times(a, b) => a.contains_var(name) || b.contains_var(name),
        }
    }

    pub fn replace(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(v) if v == name => by.clone(),
            Term::Var(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.replace(name, by)),
            Term::Plus(a, b) => Term::plus(a.replace(name, by), b.replace(name, by)),
            Term::Times(a, b) => Term::times(a.replace(name, by), b.replace(name, by)),
        }
    }

    /// Symbol count in the canonical printing.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Plus(a, b) | Term::Times(a, b) => 3 + a.size() + b.size(),
        }
    }
}

/// `S...S0` with `n` successors.
pub fn numeral(n: u64) -> Term {
    (0..n).fold(Term::Zero, |t, _| Term::succ(t))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(v) => f.write_str(v),
            Term::Succ(t) => write!(f, "S{t}"),
            Term::Plus(a, b) => write!(f, "({a} + {b})"),
            Term::Times(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }

    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

/// Formulas of first-order arithmetic. Implication is not a constructor:
/// `A -> B` is read as `!A | B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Gt(Term, Term),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Forall, v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Exists, v.into(), Box::new(body))
    }

    /// `(A, B)` when `self` is `!A | B`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(l, r) => match &**l {
                Formula::Not(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Gt(..))
    }

    /// Atomic, or a negation directly above an atomic formula.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Not(inner) => inner.is_atomic(),
            other => other.is_atomic(),
        }
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Quant(..))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Gt(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Formula::Eq(a, b) | Formula::Gt(a, b) => a.contains_var(name) || b.contains_var(name),
            Formula::Not(f) => f.has_free(name),
            Formula::Or(a, b) | Formula::And(a, b) => a.has_free(name) || b.has_free(name),
            Formula::Quant(_, v, body) => v != name && body.has_free(name),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replace free occurrences of `name` by `by`, refusing when a variable
    /// of `by` would be captured by a quantifier.
    pub fn substitute_open(&self, name: &str, by: &Term) -> Result<Formula, SubstError> {
        Ok(match self {
            Formula::Eq(a, b) => Formula::Eq(a.replace(name, by), b.replace(name, by)),
            Formula::Gt(a, b) => Formula::Gt(a.replace(name, by), b.replace(name, by)),
            Formula::Not(f) => Formula::not(f.substitute_open(name, by)?),
            Formula::Or(a, b) => Formula::or(a.substitute_open(name, by)?, b.substitute_open(name, by)?),
            Formula::And(a, b) => Formula::and(a.substitute_open(name, by)?, b.substitute_open(name, by)?),
            Formula::Quant(q, v, body) => {
                if v == name || !body.has_free(name) {
                    self.clone()
                } else if by.contains_var(v) {
                    return Err(SubstError::Capture { var: v.clone() });
                } else {
                    Formula::Quant(*q, v.clone(), Box::new(body.substitute_open(name, by)?))
                }
            }
        })
    }

    /// Substitute a closed term for the free occurrences of `name`.
    pub fn substitute(&self, name: &str, by: &Term) -> Result<Formula, SubstError> {
        if !by.is_closed() {
            return Err(SubstError::OpenTerm(by.to_string()));
        }
        self.substitute_open(name, by)
    }

    /// Negation normal form: negations only directly above atomic formulas.
    pub fn nnf(&self) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Gt(..) => self.clone(),
            Formula::Or(a, b) => Formula::or(a.nnf(), b.nnf()),
            Formula::And(a, b) => Formula::and(a.nnf(), b.nnf()),
            Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(body.nnf())),
            Formula::Not(inner) => match &**inner {
                Formula::Eq(..) | Formula::Gt(..) => self.clone(),
                Formula::Not(f) => f.nnf(),
                Formula::Or(a, b) => Formula::and(Formula::not((**a).clone()).nnf(), Formula::not((**b).clone()).nnf()),
                Formula::And(a, b) => Formula::or(Formula::not((**a).clone()).nnf(), Formula::not((**b).clone()).nnf()),
                Formula::Quant(q, v, body) => {
                    Formula::Quant(q.dual(), v.clone(), Box::new(Formula::not((**body).clone()).nnf()))
                }
            },
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Gt(..) => true,
            Formula::Not(inner) => inner.is_atomic(),
            Formula::Or(a, b) | Formula::And(a, b) => a.is_nnf() && b.is_nnf(),
            Formula::Quant(_, _, body) => body.is_nnf(),
        }
    }

    /// Symbol count of the canonical printing (the proof length metric).
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) | Formula::Gt(a, b) => 3 + a.size() + b.size(),
            Formula::Not(f) => 1 + f.wrapped_size(),
            Formula::Or(a, b) | Formula::And(a, b) => 3 + a.wrapped_size() + b.wrapped_size(),
            Formula::Quant(_, _, body) => 3 + body.size(),
        }
    }

    /// Size when printed as an operand of `!`, `&` or `|`.
    pub fn wrapped_size(&self) -> usize {
        self.size() + if self.is_quantifier() { 2 } else { 0 }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_quantifier() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical printing: atoms and binary connectives are always
/// parenthesized, and a quantifier is parenthesized whenever it is an
/// operand of `!`, `&` or `|`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "({a} = {b})"),
            Formula::Gt(a, b) => write!(f, "({a} > {b})"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.fmt_operand(f)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let op = if matches!(self, Formula::Or(..)) { "|" } else { "&" };
                f.write_str("(")?;
                a.fmt_operand(f)?;
                write!(f, " {op} ")?;
                b.fmt_operand(f)?;
                f.write_str(")")
            }
            Formula::Quant(q, v, body) => write!(f, "{} {v}. {body}", q.keyword()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("only closed terms may be substituted, got {0}")]
    OpenTerm(String),
    #[error("substitution would capture variable {var}")]
    Capture { var: String },
}
