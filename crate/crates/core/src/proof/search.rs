//! Exhaustive search for short proofs of `P & !P`.
//!
//! Duplicate steps never help, so a proof is determined up to reordering by
//! its set of formulas. Every set that can be ordered into a valid proof has
//! exactly one *canonical* ordering: repeatedly take the smallest formula,
//! by (size, printed text), that is justified by the formulas already taken.
//! The search grows canonical orderings one formula at a time, so each set
//! is visited once. A formula `X` may follow the prefix `s1..sk` when it is
//! justified by it, and every `sj` placed after `X` first became justifiable
//! is smaller than `X`.
//!
//! Only variables from a fixed alphabet (default `x`, `y`, `z`) appear in
//! candidate formulas, so "absent" means no proof of a contradiction below
//! the length limit exists *that uses only those variable names*.
//!
//! Pruning uses a lower bound on the symbols any completion still needs. A
//! contradiction `C` has at least 14 symbols and is not an instance of any
//! schema, so it comes from a theory axiom or by modus ponens from some
//! `!A | C` (at least 23 symbols) together with `A`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::kernel::{contradiction_part, is_contradiction, Justification, LengthMetric, Proof, Step, Theory};
use super::schema::{all_instances, Schema, Tables};
use crate::fol::{induction_instance, Formula, Quantifier};

pub const DEFAULT_ALPHABET: [&str; 3] = ["x", "y", "z"];

/// Largest `max_length` accepted by [`search_contradiction`]. The full PA
/// search at this limit expands about 880k sets in roughly 30 seconds in an
/// optimized build.
///
/// It must stay at or below [`STATIC_MAJOR_LIMIT`].
pub const FEASIBILITY_CEILING: usize = 64;

/// Any proof in which a logical axiom instance serves as the major premise
/// `!A | C` of a contradiction `C` is at least this long: the cheapest is
/// `!!!C | C` (34 symbols) with `!!C` (16) and `C` (14). Below this limit
/// the search only needs axiom instances up to `limit - 38` symbols.
pub const STATIC_MAJOR_LIMIT: usize = 64;

/// Smallest contradiction (14) plus smallest major premise for it (23).
const NEW_MAJOR_BOUND: usize = 37;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max length {requested} is above the feasibility ceiling {ceiling}")]
    AboveCeiling { requested: usize, ceiling: usize },
    #[error("exhaustive search counts symbols; with the steps metric the candidate space is infinite")]
    StepsMetric,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub theory: Theory,
    pub alphabet: Vec<String>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { theory: Theory::pa(), alphabet: DEFAULT_ALPHABET.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub max_length: usize,
    pub ceiling: usize,
    pub alphabet: Vec<String>,
    /// Sets of formulas expanded, over all deepening rounds.
    pub nodes: u64,
    pub elapsed_ms: u128,
    #[serde(serialize_with = "serialize_proof")]
    pub proof: Option<Proof>,
}

fn serialize_proof<S: serde::Serializer>(p: &Option<Proof>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl SearchReport {
    pub fn is_consistent(&self) -> bool {
        self.proof.is_none()
    }
}

/// Look for a proof of some `P & !P` in PA of fewer than `max_length` symbols.
pub fn search_contradiction(max_length: usize, metric: LengthMetric) -> Result<SearchReport, SearchError> {
    search_contradiction_with(&SearchConfig::default(), max_length, metric)
}

/// As [`search_contradiction`] for any theory and alphabet. The proof found,
/// if any, is a shortest one.
pub fn search_contradiction_with(
    config: &SearchConfig,
    max_length: usize,
    metric: LengthMetric,
) -> Result<SearchReport, SearchError> {
    if metric == LengthMetric::Steps {
        return Err(SearchError::StepsMetric);
    }
    if max_length > FEASIBILITY_CEILING {
        return Err(SearchError::AboveCeiling { requested: max_length, ceiling: FEASIBILITY_CEILING });
    }
    let started = Instant::now();
    let base = theory_bound(&config.theory);
    let mut report = SearchReport {
        max_length,
        ceiling: FEASIBILITY_CEILING,
        alphabet: config.alphabet.clone(),
        nodes: 0,
        elapsed_ms: 0,
        proof: None,
    };
    if max_length > base + 1 {
        let statics = Statics::new(config, max_length - 1 - base);
        for limit in base + 1..=max_length {
            let mut search = Search::new(config, &statics, limit, true);
            let found = search.run();
            report.nodes += search.nodes;
            if found.is_some() {
                report.proof = found;
                break;
            }
        }
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Number of distinct formula sets of total size below `limit` that can be
/// ordered into a valid proof, counted by the canonical enumeration with no
/// pruning.
pub fn count_proof_sets(config: &SearchConfig, limit: usize) -> u64 {
    if limit <= 1 {
        return 0;
    }
    let statics = Statics::new(config, limit - 1);
    let mut search = Search::new(config, &statics, limit, false);
    search.run();
    search.nodes - 1
}

/// The cheapest way to reach a contradiction from nothing.
fn theory_bound(theory: &Theory) -> usize {
    theory.axioms().iter().filter(|a| is_contradiction(a.formula())).map(|a| a.size()).fold(NEW_MAJOR_BOUND, usize::min)
}

type Key = (usize, String);

fn key(f: &Formula) -> Key {
    (f.size(), f.to_string())
}

/// A justification that cites no earlier step.
fn static_justification(theory: &Theory, f: &Formula) -> Option<Justification> {
    if let Some(s) = Schema::ALL.into_iter().find(|s| s.matches(f)) {
        return Some(Justification::Axiom(s));
    }
    if let Some(n) = theory.position(f) {
        return Some(Justification::Theory(n));
    }
    if theory.has_induction() {
        let mut params = Vec::new();
        let mut body = f;
        loop {
            if let Some((_, Formula::Quant(Quantifier::Forall, var, _))) = body.as_implication() {
                let j = Justification::Induction { var: var.clone(), params: params.clone() };
                if super::kernel::check_step(theory, &[], f, &j).is_ok() {
                    return Some(j);
                }
            }
            match body {
                Formula::Quant(Quantifier::Forall, v, inner) => {
                    params.push(v.clone());
                    body = inner;
                }
                _ => break,
            }
        }
    }
    None
}

/// Formulas justified without premises, sorted by key.
struct Statics {
    items: Vec<(Key, Formula, Justification)>,
    /// Theory axioms are always offered, whatever their size.
    theory: Vec<(Key, Formula, Justification)>,
}

impl Statics {
    fn new(config: &SearchConfig, cap: usize) -> Self {
        let tables = Tables::for_cap(&config.alphabet, cap);
        let mut formulas = all_instances(cap, &tables);
        if config.theory.has_induction() {
            induction_instances(&tables, cap, &mut formulas);
        }
        let mut items: Vec<_> = formulas
            .into_iter()
            .map(|f| {
                let j = static_justification(&config.theory, &f).expect("generated formulas are axioms");
                (key(&f), f, j)
            })
            .collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let theory = config
            .theory
            .axioms()
            .iter()
            .enumerate()
            .map(|(i, a)| (key(a.formula()), a.formula().clone(), Justification::Theory(i + 1)))
            .collect();
        Statics { items, theory }
    }
}

fn induction_instances(tables: &Tables, cap: usize, out: &mut std::collections::BTreeSet<Formula>) {
    // at least 21 symbols around four copies of the formula
    let Some(room) = cap.checked_sub(21) else { return };
    for phi in tables.formulas_up_to(room / 4) {
        for var in &tables.alphabet {
            let others: Vec<&String> = tables.alphabet.iter().filter(|v| *v != var).collect();
            for params in arrangements(&others) {
                let params: Vec<String> = params.into_iter().cloned().collect();
                if let Ok(inst) = induction_instance(phi, var, &params) {
                    if inst.size() <= cap {
                        out.insert(inst.into_formula());
                    }
                }
            }
        }
    }
}

/// Every ordered selection of distinct items, including the empty one.
fn arrangements<'a, T>(items: &[&'a T]) -> Vec<Vec<&'a T>> {
    let mut out = vec![Vec::new()];
    for (i, item) in items.iter().enumerate() {
        let mut rest: Vec<&T> = items.to_vec();
        rest.remove(i);
        for mut tail in arrangements(&rest) {
            tail.insert(0, *item);
            out.push(tail);
        }
    }
    out
}

struct Node {
    formula: Formula,
    key: Key,
    justification: Justification,
}

struct Search<'a> {
    config: &'a SearchConfig,
    statics: &'a Statics,
    limit: usize,
    prune: bool,
    base: usize,
    stack: Vec<Node>,
    total: usize,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(config: &'a SearchConfig, statics: &'a Statics, limit: usize, prune: bool) -> Self {
        Search {
            config,
            statics,
            limit,
            prune,
            base: theory_bound(&config.theory),
            stack: Vec::new(),
            total: 0,
            nodes: 0,
        }
    }

    fn run(&mut self) -> Option<Proof> {
        if self.dfs() {
            Some(Proof::new(
                self.stack
                    .iter()
                    .map(|n| Step { formula: n.formula.clone(), justification: n.justification.clone() })
                    .collect(),
            ))
        } else {
            None
        }
    }

    fn contains(&self, f: &Formula) -> bool {
        self.stack.iter().any(|n| n.formula == *f)
    }

    /// Lower bound on the symbols still needed after adding `extra`.
    fn bound_with(&self, extra: &Formula) -> usize {
        let in_set = |f: &Formula| f == extra || self.contains(f);
        let mut best = self.base;
        for f in self.stack.iter().map(|n| &n.formula).chain(std::iter::once(extra)) {
            if is_contradiction(f) {
                return 0;
            }
            if let Some((a, c)) = f.as_implication() {
                if is_contradiction(c) {
                    let need = c.size() + if in_set(a) { 0 } else { a.size() };
                    best = best.min(need);
                }
            }
        }
        best
    }

    fn bound(&self) -> usize {
        let mut best = self.base;
        for n in &self.stack {
            if let Some((a, c)) = n.formula.as_implication() {
                if is_contradiction(c) {
                    best = best.min(c.size() + if self.contains(a) { 0 } else { a.size() });
                }
            }
        }
        best
    }

    /// Earliest prefix length after which `f` is justified, with a witness.
    fn availability(&self, f: &Formula) -> Option<(usize, Justification)> {
        if let Some(j) = static_justification(&self.config.theory, f) {
            return Some((0, j));
        }
        let mut best: Option<(usize, Justification)> = None;
        for (jdx, major) in self.stack.iter().enumerate() {
            let Some((ante, cons)) = major.formula.as_implication() else { continue };
            if cons != f {
                continue;
            }
            for (idx, minor) in self.stack.iter().enumerate() {
                if minor.formula == *ante {
                    let at = idx.max(jdx) + 1;
                    if best.as_ref().is_none_or(|(b, _)| at < *b) {
                        best = Some((at, Justification::ModusPonens { minor: idx + 1, major: jdx + 1 }));
                    }
                }
            }
        }
        if let Formula::Quant(Quantifier::Forall, v, body) = f {
            if let Some(idx) = self.stack.iter().position(|n| n.formula == **body) {
                let at = idx + 1;
                if best.as_ref().is_none_or(|(b, _)| at < *b) {
                    best = Some((at, Justification::Generalization { premise: at, var: v.clone() }));
                }
            }
        }
        best
    }

    fn candidates(&self) -> BTreeMap<Key, (Formula, usize, Justification)> {
        let mut out: BTreeMap<Key, (Formula, usize, Justification)> = BTreeMap::new();
        let offer = |f: Formula, out: &mut BTreeMap<Key, (Formula, usize, Justification)>| {
            if self.contains(&f) {
                return;
            }
            let k = key(&f);
            if out.contains_key(&k) {
                return;
            }
            if let Some((at, j)) = self.availability(&f) {
                out.insert(k, (f, at, j));
            }
        };
        for major in &self.stack {
            let Some((ante, cons)) = major.formula.as_implication() else { continue };
            if self.contains(ante) {
                offer(cons.clone(), &mut out);
            } else if self.prune && is_contradiction(cons) {
                offer(ante.clone(), &mut out);
            }
        }
        for n in &self.stack {
            for v in &self.config.alphabet {
                offer(Formula::forall(v.clone(), n.formula.clone()), &mut out);
            }
        }
        for (k, f, j) in &self.statics.theory {
            if !out.contains_key(k) && !self.contains(f) {
                out.insert(k.clone(), (f.clone(), 0, j.clone()));
            }
        }
        let room = self.limit - 1 - self.total;
        let cap = if self.prune { room.saturating_sub(self.bound()) } else { room };
        let top = self.stack.iter().map(|n| &n.key).max();
        let start = top.map_or(0, |t| self.statics.items.partition_point(|(k, _, _)| k <= t));
        for (k, f, j) in &self.statics.items[start..] {
            if k.0 > cap {
                break;
            }
            out.entry(k.clone()).or_insert_with(|| (f.clone(), 0, j.clone()));
        }
        out
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        for (k, (f, at, j)) in self.candidates() {
            if self.total + k.0 >= self.limit {
                continue;
            }
            if self.stack[at..].iter().any(|n| n.key > k) {
                continue;
            }
            let contradiction = contradiction_part(&f).is_some();
            if self.prune && !contradiction && self.total + k.0 + self.bound_with(&f) >= self.limit {
                continue;
            }
            self.total += k.0;
            self.stack.push(Node { formula: f, key: k, justification: j });
            if self.prune && contradiction {
                return true;
            }
            if self.dfs() {
                return true;
            }
            let n = self.stack.pop().expect("pushed above");
            self.total -= n.key.0;
        }
        false
    }
}
