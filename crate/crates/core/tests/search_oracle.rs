//! The canonical-order enumeration counted against a plain breadth-first
//! closure over formula sets.

use std::collections::{BTreeSet, HashSet};

use gentzen_core::fol::{parse_sentence, Formula, Quantifier, Term};
use gentzen_core::proof::{check_step, count_proof_sets, Justification, Schema, SearchConfig, Theory};

/// Every term and formula over `vars` with at most `max` symbols, built
/// bottom-up and bucketed by the reported size.
fn formulas_up_to(vars: &[&str], max: usize) -> Vec<Formula> {
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); max + 1];
    terms[1].push(Term::Zero);
    terms[1].extend(vars.iter().map(|v| Term::var(*v)));
    for size in 2..=max {
        let mut new = Vec::new();
        for t in &terms[size - 1] {
            new.push(Term::succ(t.clone()));
        }
        for a in 1..size {
            for b in 1..size - a {
                for l in &terms[a] {
                    for r in &terms[b] {
                        new.push(Term::plus(l.clone(), r.clone()));
                        new.push(Term::times(l.clone(), r.clone()));
                    }
                }
            }
        }
        for t in new {
            let s = t.size();
            if s <= max {
                terms[s].push(t);
            }
        }
        terms[size].sort_by_key(ToString::to_string);
        terms[size].dedup();
    }

    let mut forms: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    for size in 1..=max {
        let mut new = Vec::new();
        for a in 1..size {
            for b in 1..size - a {
                for l in &terms[a] {
                    for r in &terms[b] {
                        new.push(Formula::Eq(l.clone(), r.clone()));
                        new.push(Formula::Gt(l.clone(), r.clone()));
                    }
                }
                for l in &forms[a] {
                    for r in &forms[b] {
                        new.push(Formula::or(l.clone(), r.clone()));
                        new.push(Formula::and(l.clone(), r.clone()));
                    }
                }
            }
            if a == size - 1 {
                for f in &forms[a] {
                    new.push(Formula::not(f.clone()));
                }
            }
            for f in &forms[a] {
                for v in vars {
                    new.push(Formula::Quant(Quantifier::Forall, v.to_string(), Box::new(f.clone())));
                    new.push(Formula::Quant(Quantifier::Exists, v.to_string(), Box::new(f.clone())));
                }
            }
        }
        for f in new {
            let s = f.size();
            if s <= max {
                forms[s].push(f);
            }
        }
        forms[size].sort_by_key(ToString::to_string);
        forms[size].dedup();
    }
    forms.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect()
}

fn premise_free(theory: &Theory, f: &Formula) -> bool {
    let mut options: Vec<Justification> = Schema::ALL.iter().map(|s| Justification::Axiom(*s)).collect();
    options.extend((1..=theory.axioms().len()).map(Justification::Theory));
    options.iter().any(|j| check_step(theory, &[], f, j).is_ok())
}

fn total(set: &BTreeSet<Formula>) -> usize {
    set.iter().map(Formula::size).sum()
}

/// Nonempty formula sets of total size below `limit` whose members can be
/// ordered into a valid proof, found by growing sets one justified formula
/// at a time and removing duplicates.
fn brute_force(theory: &Theory, vars: &[&str], limit: usize) -> u64 {
    if limit <= 1 {
        return 0;
    }
    let statics: Vec<Formula> =
        formulas_up_to(vars, limit - 1).into_iter().filter(|f| premise_free(theory, f)).collect();
    let mut seen: HashSet<BTreeSet<Formula>> = HashSet::new();
    let mut frontier = vec![BTreeSet::new()];
    while let Some(set) = frontier.pop() {
        let used = total(&set);
        let mut next: Vec<Formula> = statics.clone();
        for major in &set {
            if let Some((a, c)) = major.as_implication() {
                if set.contains(a) {
                    next.push(c.clone());
                }
            }
            for v in vars {
                let g = Formula::forall(*v, major.clone());
                let earlier: Vec<&Formula> = set.iter().collect();
                let premise = earlier.iter().position(|f| *f == major).unwrap() + 1;
                let j = Justification::Generalization { premise, var: v.to_string() };
                if check_step(theory, &earlier, &g, &j).is_ok() {
                    next.push(g);
                }
            }
        }
        for f in next {
            if set.contains(&f) || used + f.size() >= limit {
                continue;
            }
            let mut grown = set.clone();
            grown.insert(f);
            if seen.insert(grown.clone()) {
                frontier.push(grown);
            }
        }
    }
    seen.len() as u64
}

fn config(theory: Theory, vars: &[&str]) -> SearchConfig {
    SearchConfig { theory, alphabet: vars.iter().map(|v| v.to_string()).collect() }
}

#[test]
fn pure_logic_one_variable() {
    let theory = Theory::new(Vec::new(), false);
    for limit in [1, 6, 10, 12, 14] {
        let expected = brute_force(&theory, &["x"], limit);
        assert_eq!(count_proof_sets(&config(theory.clone(), &["x"]), limit), expected, "limit {limit}");
    }
}

#[test]
fn small_axiom_two_variables() {
    let theory = Theory::new(vec![parse_sentence("0 = S0").unwrap()], false);
    for limit in [7, 11, 13] {
        let expected = brute_force(&theory, &["x", "y"], limit);
        assert_eq!(count_proof_sets(&config(theory.clone(), &["x", "y"]), limit), expected, "limit {limit}");
    }
}
