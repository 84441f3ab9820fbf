//! Running weakly decreasing ordinal sequence generators and checking that
//! they stabilize.
//!
//! A [`SequenceProgram`] is a deterministic state machine: each state emits
//! one ordinal and names its successor state. [`monitor`] steps a program,
//! checks weak decrease at every adjacent pair, and reports stabilization in
//! one of two strengths:
//!
//! * [`Certificate::StateCycle`]: the program revisited a state and the
//!   outputs over the cycle are constant, so the output is constant forever.
//! * [`Certificate::BudgetWindow`]: the budget ran out while the last `k`
//!   outputs were equal. This is an observation only, not a proof.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError};

pub const DEFAULT_WINDOW: usize = 8;

pub trait SequenceProgram {
    type State: Clone + Eq + Hash;

    fn initial_state(&self) -> Self::State;

    /// Output of `state` and the state that follows it.
    fn step(&self, state: &Self::State) -> (Ordinal, Self::State);

    /// Number of distinct states, when the program is known to be finite-state.
    fn state_space_bound(&self) -> Option<u64> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    StateCycle,
    BudgetWindow,
}

impl Certificate {
    pub fn is_sound(self) -> bool {
        matches!(self, Certificate::StateCycle)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::StateCycle => "state-cycle",
            Certificate::BudgetWindow => "budget-window",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// 1-based index `i0` with `a_i = a_i0` for all later `i`.
    pub index: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub inspected: usize,
    pub strict_decreases: usize,
    /// 1-based index `i` with `a_i < a_(i+1)`.
    pub violation: Option<usize>,
    pub stabilized_at: Option<Stabilization>,
    pub final_value: Ordinal,
}

impl DescentReport {
    /// One-line `key=value` record.
    pub fn to_record(&self) -> String {
        let violation = self.violation.map_or("-".to_string(), |v| v.to_string());
        let (stab, cert) = match &self.stabilized_at {
            Some(s) => (s.index.to_string(), s.certificate.as_str()),
            None => ("-".to_string(), "-"),
        };
        format!(
            "inspected={} strict_decreases={} violation={} stabilized_at={} certificate={} final={}",
            self.inspected, self.strict_decreases, violation, stab, cert, self.final_value
        )
    }
}

impl fmt::Display for DescentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonitorError {
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("window must be at least 1")]
    ZeroWindow,
}

pub fn monitor<P: SequenceProgram>(program: &P, budget: usize) -> Result<DescentReport, MonitorError> {
    monitor_with_window(program, budget, DEFAULT_WINDOW)
}

pub fn monitor_with_window<P: SequenceProgram>(
    program: &P,
    budget: usize,
    window: usize,
) -> Result<DescentReport, MonitorError> {
    if budget == 0 {
        return Err(MonitorError::ZeroBudget);
    }
    if window == 0 {
        return Err(MonitorError::ZeroWindow);
    }

    // state -> 1-based index of the term it emits
    let mut seen: HashMap<P::State, usize> = HashMap::new();
    let mut outputs: Vec<Ordinal> = Vec::new();
    let mut strict_decreases = 0;
    let mut state = program.initial_state();

    for index in 1..=budget {
        if let Some(&start) = seen.get(&state) {
            // terms start..index-1 repeat forever from here on
            let cycle = &outputs[start - 1..];
            if cycle.iter().all(|a| *a == cycle[0]) {
                return Ok(DescentReport {
                    inspected: outputs.len(),
                    strict_decreases,
                    violation: None,
                    stabilized_at: Some(Stabilization {
                        index: first_of_constant_run(&outputs, start),
                        certificate: Certificate::StateCycle,
                    }),
                    final_value: outputs.last().cloned().unwrap_or_default(),
                });
            }
            // a non-constant cycle must contain an increase, which the
            // adjacent-pair check below reports on its next pass
        }
        seen.insert(state.clone(), index);
        let (value, next) = program.step(&state);
        if let Some(prev) = outputs.last() {
            if *prev < value {
                let len = outputs.len();
                outputs.push(value);
                return Ok(DescentReport {
                    inspected: outputs.len(),
                    strict_decreases,
                    violation: Some(len),
                    stabilized_at: None,
                    final_value: outputs.last().cloned().unwrap_or_default(),
                });
            }
            if *prev > value {
                strict_decreases += 1;
            }
        }
        outputs.push(value);
        state = next;
    }

    let last = outputs.last().cloned().unwrap_or_default();
    let run_start = first_of_constant_run(&outputs, outputs.len());
    let stabilized_at = (outputs.len() - run_start + 1 >= window)
        .then_some(Stabilization { index: run_start, certificate: Certificate::BudgetWindow });
    Ok(DescentReport { inspected: outputs.len(), strict_decreases, violation: None, stabilized_at, final_value: last })
}

/// Walk back from 1-based `index` while the previous term is equal.
fn first_of_constant_run(outputs: &[Ordinal], index: usize) -> usize {
    let mut i = index;
    while i > 1 && outputs[i - 2] == outputs[index - 1] {
        i -= 1;
    }
    i
}

/// The canonical descent from `start`: drop a trailing `ω^0` term, or
/// replace the last term `ω^c` by `seed` copies of `ω^c'` where `c'` is `c`
/// with its own last term removed. Once `[]` is reached it stays there.
#[derive(Clone, Debug)]
pub struct CanonicalDescent {
    pub start: Ordinal,
    pub seed: usize,
}

pub fn canonical_descent(start: Ordinal, seed: usize) -> CanonicalDescent {
    CanonicalDescent { start, seed }
}

/// One step of the canonical descent rule. Returns `a` unchanged when `a` is zero.
pub fn descend_once(a: &Ordinal, seed: usize) -> Ordinal {
    let mut items: Vec<Ordinal> = a.terms().cloned().collect();
    let Some(last) = items.pop() else {
        return Ordinal::zero();
    };
    if !last.is_zero() {
        let mut exponent: Vec<Ordinal> = last.terms().cloned().collect();
        exponent.pop();
        let smaller = ordinal_from_terms(exponent);
        items.extend(std::iter::repeat_n(smaller, seed));
    }
    ordinal_from_terms(items)
}

fn ordinal_from_terms(terms: Vec<Ordinal>) -> Ordinal {
    let list = crate::ordinal::List::new(terms.into_iter().map(Ordinal::into_list).collect());
    Ordinal::try_from(list).expect("descent keeps terms weakly decreasing")
}

impl SequenceProgram for CanonicalDescent {
    type State = Ordinal;

    fn initial_state(&self) -> Ordinal {
        self.start.clone()
    }

    fn step(&self, state: &Ordinal) -> (Ordinal, Ordinal) {
        (state.clone(), descend_once(state, self.seed))
    }
}

/// Emits `n, n-1, ..., 1, 0, 0, ...` as finite ordinals.
#[derive(Clone, Debug)]
pub struct Countdown(pub usize);

impl SequenceProgram for Countdown {
    type State = usize;

    fn initial_state(&self) -> usize {
        self.0
    }

    fn step(&self, state: &usize) -> (Ordinal, usize) {
        (Ordinal::from_nat(*state), state.saturating_sub(1))
    }

    fn state_space_bound(&self) -> Option<u64> {
        Some(self.0 as u64 + 1)
    }
}

/// Emits the listed ordinals in order, then repeats the last one forever.
#[derive(Clone, Debug)]
pub struct Listed(pub Vec<Ordinal>);

impl SequenceProgram for Listed {
    type State = usize;

    fn initial_state(&self) -> usize {
        0
    }

    fn step(&self, state: &usize) -> (Ordinal, usize) {
        let last = self.0.len().saturating_sub(1);
        let value = self.0.get(*state).cloned().unwrap_or_default();
        (value, (*state + 1).min(last))
    }

    fn state_space_bound(&self) -> Option<u64> {
        Some(self.0.len().max(1) as u64)
    }
}

/// Textual program specification used by the command line.
///
/// * `descent:<ordinal>:<seed>`
/// * `countdown:<n>`
/// * `const:<ordinal>`
/// * `list:<ordinal>;<ordinal>;...` (the last one repeats)
#[derive(Clone, Debug)]
pub enum ProgramSpec {
    Descent(CanonicalDescent),
    Countdown(Countdown),
    Listed(Listed),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramSpecError {
    #[error("unknown program kind {0:?} (expected descent, countdown, const or list)")]
    UnknownKind(String),
    #[error("malformed program spec: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

impl FromStr for ProgramSpec {
    type Err = ProgramSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| ProgramSpecError::Malformed(s.to_string()))?;
        let number = |t: &str| {
            t.trim().parse::<usize>().map_err(|_| ProgramSpecError::Malformed(format!("not a number: {t:?}")))
        };
        match kind.trim() {
            "descent" => {
                let (ord, seed) = rest.rsplit_once(':').ok_or_else(|| ProgramSpecError::Malformed(s.to_string()))?;
                Ok(ProgramSpec::Descent(canonical_descent(ord.parse()?, number(seed)?)))
            }
            "countdown" => Ok(ProgramSpec::Countdown(Countdown(number(rest)?))),
            "const" => Ok(ProgramSpec::Listed(Listed(vec![rest.parse()?]))),
            "list" => {
                let values = rest.split(';').map(str::parse).collect::<Result<Vec<Ordinal>, _>>()?;
                Ok(ProgramSpec::Listed(Listed(values)))
            }
            other => Err(ProgramSpecError::UnknownKind(other.to_string())),
        }
    }
}

impl ProgramSpec {
    pub fn monitor(&self, budget: usize, window: usize) -> Result<DescentReport, MonitorError> {
        match self {
            ProgramSpec::Descent(p) => monitor_with_window(p, budget, window),
            ProgramSpec::Countdown(p) => monitor_with_window(p, budget, window),
            ProgramSpec::Listed(p) => monitor_with_window(p, budget, window),
        }
    }
}
