use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::schema::{Schema, SchemaError};
use crate::fol::{induction_instance, pa_axioms, Formula, Quantifier, Sentence};

/// Why a step is in the proof. Step numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// An instance of a logical axiom schema; the instantiation is
    /// recovered from the formula by matching.
    Axiom(Schema),
    /// The n-th non-logical axiom of the theory.
    Theory(usize),
    /// The induction axiom on `var` for the formula it is read off from,
    /// closed over `params` (outermost first).
    Induction { var: String, params: Vec<String> },
    /// From step `minor` = `A` and step `major` = `!A | B`, infer `B`.
    ModusPonens { minor: usize, major: usize },
    /// From step `premise` = `A`, infer `forall var. A`.
    Generalization { premise: usize, var: String },
}

impl Justification {
    /// Earlier steps this justification depends on.
    pub fn cites(&self) -> Vec<usize> {
        match self {
            Justification::ModusPonens { minor, major } => vec![*minor, *major],
            Justification::Generalization { premise, .. } => vec![*premise],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(s) => write!(f, "ax {s}"),
            Justification::Theory(n) => write!(f, "pa {n}"),
            Justification::Induction { var, params } => {
                write!(f, "ind {var}")?;
                for p in params {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            Justification::ModusPonens { minor, major } => write!(f, "mp {minor} {major}"),
            Justification::Generalization { premise, var } => write!(f, "gen {premise} {var}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(steps: Vec<Step>) -> Self {
        Proof { steps }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(Step { formula, justification });
        self.steps.len()
    }
}

/// The non-logical part of a calculus: numbered axioms and whether
/// induction instances may be cited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    axioms: Vec<Sentence>,
    induction: bool,
}

impl Theory {
    pub fn new(axioms: Vec<Sentence>, induction: bool) -> Self {
        Theory { axioms, induction }
    }

    /// Peano arithmetic: the eight basic axioms and the induction schema.
    pub fn pa() -> Self {
        Theory::new(pa_axioms(), true)
    }

    /// The same theory with one more axiom, cited as the next number.
    pub fn with_axiom(mut self, axiom: Sentence) -> Self {
        self.axioms.push(axiom);
        self
    }

    pub fn axioms(&self) -> &[Sentence] {
        &self.axioms
    }

    pub fn has_induction(&self) -> bool {
        self.induction
    }

    /// The number by which `f` is cited, if it is an axiom.
    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.axioms.iter().position(|a| a.formula() == f).map(|i| i + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("theory has no axiom {0}")]
    UnknownAxiom(usize),
    #[error("formula is not axiom {0} of the theory")]
    WrongAxiom(usize),
    #[error("theory has no induction schema")]
    NoInduction,
    #[error("formula is not the induction instance it cites")]
    NotInduction,
    #[error("step cites {cited}, which does not precede it")]
    Dangling { cited: usize },
    #[error("step {major} is not `!(step {minor}) | this formula`")]
    MpShape { minor: usize, major: usize },
    #[error("formula is not `forall {var}.` applied to step {premise}")]
    GenShape { premise: usize, var: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: StepError },
    #[error("proof concludes {found}, expected {expected}")]
    Conclusion { expected: String, found: String },
}

impl ProofError {
    pub fn step(&self) -> Option<usize> {
        match self {
            ProofError::Step { step, .. } => Some(*step),
            ProofError::Conclusion { .. } => None,
        }
    }
}

/// Check one step against the formulas of the steps before it.
pub fn check_step(
    theory: &Theory,
    earlier: &[&Formula],
    formula: &Formula,
    justification: &Justification,
) -> Result<(), StepError> {
    let cite = |i: usize| -> Result<&Formula, StepError> {
        if i == 0 || i > earlier.len() {
            Err(StepError::Dangling { cited: i })
        } else {
            Ok(earlier[i - 1])
        }
    };
    match justification {
        Justification::Axiom(schema) => Ok(schema.check(formula)?),
        Justification::Theory(n) => {
            let axiom = n.checked_sub(1).and_then(|i| theory.axioms.get(i)).ok_or(StepError::UnknownAxiom(*n))?;
            if axiom.formula() == formula {
                Ok(())
            } else {
                Err(StepError::WrongAxiom(*n))
            }
        }
        Justification::Induction { var, params } => {
            if !theory.induction {
                return Err(StepError::NoInduction);
            }
            if is_induction_instance(formula, var, params) {
                Ok(())
            } else {
                Err(StepError::NotInduction)
            }
        }
        Justification::ModusPonens { minor, major } => {
            let a = cite(*minor)?;
            let m = cite(*major)?;
            match m.as_implication() {
                Some((ante, cons)) if ante == a && cons == formula => Ok(()),
                _ => Err(StepError::MpShape { minor: *minor, major: *major }),
            }
        }
        Justification::Generalization { premise, var } => {
            let p = cite(*premise)?;
            match formula {
                Formula::Quant(Quantifier::Forall, v, body) if v == var && **body == *p => Ok(()),
                _ => Err(StepError::GenShape { premise: *premise, var: var.clone() }),
            }
        }
    }
}

/// Read the induction formula off a candidate instance and rebuild it.
fn is_induction_instance(f: &Formula, var: &str, params: &[String]) -> bool {
    let mut body = f;
    for p in params {
        match body {
            Formula::Quant(Quantifier::Forall, v, inner) if v == p => body = inner,
            _ => return false,
        }
    }
    let Some((_, Formula::Quant(Quantifier::Forall, v, phi))) = body.as_implication() else {
        return false;
    };
    if v != var {
        return false;
    }
    induction_instance(phi, var, params).is_ok_and(|inst| inst.formula() == f)
}

/// Check every step; on success the last formula is what the proof proves.
pub fn check_proof(theory: &Theory, proof: &Proof) -> Result<(), ProofError> {
    let mut earlier: Vec<&Formula> = Vec::with_capacity(proof.steps.len());
    for (i, step) in proof.steps.iter().enumerate() {
        check_step(theory, &earlier, &step.formula, &step.justification)
            .map_err(|reason| ProofError::Step { step: i + 1, reason })?;
        earlier.push(&step.formula);
    }
    Ok(())
}

/// Check the proof and that it ends with `goal`.
pub fn check_proof_of(theory: &Theory, proof: &Proof, goal: &Formula) -> Result<(), ProofError> {
    check_proof(theory, proof)?;
    match proof.conclusion() {
        Some(c) if c == goal => Ok(()),
        found => Err(ProofError::Conclusion {
            expected: goal.to_string(),
            found: found.map_or_else(|| "nothing".to_string(), ToString::to_string),
        }),
    }
}

/// How proof length is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthMetric {
    /// Total symbols in the canonical printing of every step formula.
    #[default]
    Symbols,
    /// Number of steps.
    Steps,
}

impl std::str::FromStr for LengthMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbols" => Ok(LengthMetric::Symbols),
            "steps" => Ok(LengthMetric::Steps),
            other => Err(format!("unknown length metric `{other}` (expected symbols or steps)")),
        }
    }
}

pub fn proof_length(proof: &Proof, metric: LengthMetric) -> usize {
    match metric {
        LengthMetric::Symbols => proof.steps.iter().map(|s| s.formula.size()).sum(),
        LengthMetric::Steps => proof.steps.len(),
    }
}

/// `P` when `f` is `P & !P`.
pub fn contradiction_part(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::And(p, q) => match &**q {
            Formula::Not(inner) if inner == p => Some(p),
            _ => None,
        },
        _ => None,
    }
}

pub fn is_contradiction(f: &Formula) -> bool {
    contradiction_part(f).is_some()
}
