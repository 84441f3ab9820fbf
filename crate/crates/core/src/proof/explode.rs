use thiserror::Error;

use super::kernel::{check_proof, contradiction_part, Justification, Proof, ProofError, Theory};
use super::schema::Schema;
use crate::fol::{Formula, Sentence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplodeError {
    #[error("input proof does not check: {0}")]
    Invalid(#[from] ProofError),
    #[error("input proof does not conclude a formula of the form `P & !P`")]
    NotContradiction,
}

/// Turn a proof of `P & !P` into a proof of `target`.
///
/// With `C = P & !P` at step `n`, the appended steps are
///
/// ```text
/// n+1. C -> P                    ax and-e1
/// n+2. P                         mp n n+1
/// n+3. C -> !P                   ax and-e2
/// n+4. !P                        mp n n+3
/// n+5. !P -> (P -> target)       ax efq
/// n+6. P -> target               mp n+4 n+5
/// n+7. target                    mp n+2 n+6
/// ```
///
/// When `target` is `C` itself the proof is returned unchanged.
pub fn explode(theory: &Theory, proof: &Proof, target: &Sentence) -> Result<Proof, ExplodeError> {
    check_proof(theory, proof)?;
    let c = proof.conclusion().ok_or(ExplodeError::NotContradiction)?.clone();
    let p = contradiction_part(&c).ok_or(ExplodeError::NotContradiction)?.clone();
    let target: &Formula = target.formula();
    if *target == c {
        return Ok(proof.clone());
    }
    let not_p = Formula::not(p.clone());
    let mut out = proof.clone();
    let n = out.len();
    let e1 = out.push(Formula::implies(c.clone(), p.clone()), Justification::Axiom(Schema::AndE1));
    let got_p = out.push(p.clone(), Justification::ModusPonens { minor: n, major: e1 });
    let e2 = out.push(Formula::implies(c, not_p.clone()), Justification::Axiom(Schema::AndE2));
    let got_not_p = out.push(not_p.clone(), Justification::ModusPonens { minor: n, major: e2 });
    let p_to_target = Formula::implies(p, target.clone());
    let efq = out.push(Formula::implies(not_p, p_to_target.clone()), Justification::Axiom(Schema::Efq));
    let step = out.push(p_to_target, Justification::ModusPonens { minor: got_not_p, major: efq });
    out.push(target.clone(), Justification::ModusPonens { minor: got_p, major: step });
    Ok(out)
}
