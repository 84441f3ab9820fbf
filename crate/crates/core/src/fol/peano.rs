use std::collections::BTreeSet;

use thiserror::Error;

use super::syntax::{Formula, Term};
use super::{parse_sentence, Sentence};

/// The non-induction axioms of PA used throughout the crate, in order.
/// Proof files cite them by 1-based position (`pa 3` is `x + 0 = x`).
///
/// `>` is primitive in the language; axioms 7 and 8 define it by
/// `x > y <-> exists z. x = y + Sz`.
pub const PA_AXIOMS: [&str; 8] = [
    "forall x. !(Sx = 0)",
    "forall x. forall y. (Sx = Sy -> x = y)",
    "forall x. x + 0 = x",
    "forall x. forall y. x + Sy = S(x + y)",
    "forall x. x * 0 = 0",
    "forall x. forall y. x * Sy = x * y + x",
    "forall x. forall y. (x > y -> exists z. x = y + Sz)",
    "forall x. forall y. forall z. (x = y + Sz -> x > y)",
];

pub fn pa_axioms() -> Vec<Sentence> {
    PA_AXIOMS.iter().map(|text| parse_sentence(text).expect("built-in axiom parses")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InductionError {
    #[error("formula has free variables {0:?} outside the induction variable and parameters")]
    UnlistedVariables(Vec<String>),
    #[error("parameter list repeats or contains the induction variable {0}")]
    BadParameters(String),
}

/// The induction axiom for `phi` on `var` with parameters `params`:
///
/// `forall params. (!(phi(0) & forall var. (!phi(var) | phi(S var))) | forall var. phi(var))`
///
/// with the two implications already written as disjunctions. The first
/// parameter is the outermost quantifier.
pub fn induction_instance(phi: &Formula, var: &str, params: &[String]) -> Result<Sentence, InductionError> {
    let mut allowed: BTreeSet<&str> = BTreeSet::new();
    allowed.insert(var);
    for p in params {
        if !allowed.insert(p.as_str()) {
            return Err(InductionError::BadParameters(p.clone()));
        }
    }
    let stray: Vec<String> = phi.free_vars().into_iter().filter(|v| !allowed.contains(v.as_str())).collect();
    if !stray.is_empty() {
        return Err(InductionError::UnlistedVariables(stray));
    }

    let at_zero = phi.substitute_open(var, &Term::Zero).expect("closed term cannot be captured");
    // S var only mentions var, and a binder of var hides every free occurrence
    let at_succ = phi
        .substitute_open(var, &Term::succ(Term::var(var)))
        .expect("successor of the induction variable cannot be captured");
    let step = Formula::forall(var, Formula::implies(phi.clone(), at_succ));
    let body = Formula::implies(Formula::and(at_zero, step), Formula::forall(var, phi.clone()));
    let closed = params.iter().rev().fold(body, |acc, p| Formula::forall(p.clone(), acc));
    Ok(Sentence::try_from(closed).expect("all free variables were bound"))
}
