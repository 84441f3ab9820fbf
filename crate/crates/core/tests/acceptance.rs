//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::cmp::Ordering;
use std::time::Instant;

use common::{components, SentenceGen};
use gentzen_core::fol::{
    eval_bounded, induction_instance, numeral, parse_formula, parse_sentence, Formula, Sentence, TruthB,
};
use gentzen_core::game::{default_depth, degree, replay_all, synthesize_reduction, GameState};
use gentzen_core::ordinal::{enumerate, parse_list};
use gentzen_core::proof::{
    check_proof, check_proof_of, explode, parse_proof, search_contradiction, search_contradiction_with, Justification,
    LengthMetric, Proof, SearchConfig, Step, Theory, FEASIBILITY_CEILING,
};
use gentzen_core::stabilization::{canonical_descent, monitor};
use gentzen_core::Ordinal;

type Verdict = Result<String, String>;
type Check = (&'static str, fn() -> Verdict);

fn main() {
    let checks: [Check; 11] = [
        ("order-laws", order_laws),
        ("order-facts", order_facts),
        ("height-law", height_law),
        ("inflation-and-successor", inflation_and_successor),
        ("descent-suite", descent_suite),
        ("nnf-equivalence", nnf_equivalence),
        ("prime-formula", prime_formula),
        ("game-oracle", game_oracle),
        ("component-descent", component_descent),
        ("proof-kernel", proof_kernel),
        ("induction-template", induction_template),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let started = Instant::now();
        let verdict = check();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {name} ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s) {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus(max_nodes: usize) -> Vec<Ordinal> {
    enumerate(max_nodes)
}

fn order_laws() -> Verdict {
    let all = corpus(8);
    let n = all.len();
    for a in &all {
        ensure(a.cmp(a) == Ordering::Equal, || format!("{a} not equal to itself"))?;
        for b in &all {
            let ab = a.cmp(b);
            ensure(ab == b.cmp(a).reverse(), || format!("antisymmetry fails on {a}, {b}"))?;
            ensure((ab == Ordering::Equal) == (a == b), || format!("trichotomy fails on {a}, {b}"))?;
        }
    }
    let mut triples = 0u64;
    for a in &all {
        for b in all.iter().filter(|b| a < *b) {
            for c in all.iter().filter(|c| b < *c) {
                triples += 1;
                ensure(a < c, || format!("transitivity fails on {a} < {b} < {c}"))?;
            }
        }
    }
    ensure(n.pow(3) <= 10_000_000, || format!("triple product {} too large", n.pow(3)))?;
    Ok(format!("ordinals={n} pairs={} chained-triples={triples}", n * n))
}

fn order_facts() -> Verdict {
    let chain = ["[]", "[[]]", "[[],[]]", "[[],[],[]]", "[[],[],[],[]]", "[[[]]]"];
    let lists: Vec<_> = chain.iter().map(|s| parse_list(s).unwrap()).collect();
    for w in lists.windows(2) {
        ensure(w[0].compare(&w[1]) == Ordering::Less, || {
            format!("{} < {} fails", w[0].to_brackets(), w[1].to_brackets())
        })?;
    }
    let (a, b) = (parse_list("[[[],[]]]").unwrap(), parse_list("[[[]],[[]]]").unwrap());
    ensure(a.compare(&b) == Ordering::Greater, || "[[[],[]]] > [[[]],[[]]] fails".into())?;
    Ok(format!("{} chain links and 1 pair exact", chain.len() - 1))
}

fn height_law() -> Verdict {
    let all = corpus(8);
    let mut pairs = 0u64;
    for a in &all {
        for b in all.iter().filter(|b| a <= *b) {
            pairs += 1;
            ensure(a.height() <= b.height(), || format!("height({a}) > height({b})"))?;
        }
    }
    Ok(format!("ordered pairs={pairs}"))
}

fn inflation_and_successor() -> Verdict {
    let all = corpus(8);
    for a in &all {
        ensure(*a < a.omega_power(), || format!("{a} not below omega^{a}"))?;
        let s = a.successor();
        ensure(*a < s, || format!("{a} not below its successor"))?;
        for b in &all {
            ensure(!(a < b && *b < s), || format!("{b} lies between {a} and its successor"))?;
        }
    }
    Ok(format!("ordinals={}", all.len()))
}

fn descent_suite() -> Verdict {
    let starts = corpus(7);
    let (mut sound, mut to_zero) = (0, 0);
    for start in &starts {
        for seed in 0..=3 {
            let program = canonical_descent(start.clone(), seed);
            let report = monitor(&program, 100_000).map_err(|e| e.to_string())?;
            ensure(report.violation.is_none(), || format!("{start} seed {seed}: weak-decrease violation"))?;
            let certified = report.stabilized_at.as_ref().is_some_and(|s| s.certificate.is_sound());
            ensure(certified || report.final_value.is_zero(), || format!("{start} seed {seed}: {report}"))?;
            if certified {
                sound += 1;
            } else {
                to_zero += 1;
            }
        }
    }
    Ok(format!("programs={} sound-certificates={sound} reached-zero-only={to_zero}", starts.len() * 4))
}

fn nnf_corpus() -> Vec<Sentence> {
    let mut generator = SentenceGen::new(0x5eed);
    (0..500).map(|i| generator.sentence(i % 5)).collect()
}

fn nnf_equivalence() -> Verdict {
    let corpus = nnf_corpus();
    let mut unknown = 0;
    for s in &corpus {
        let n = s.nnf();
        ensure(n.nnf() == n, || format!("nnf not idempotent on {s}"))?;
        ensure(n.is_nnf(), || format!("nnf of {s} is not in negation normal form"))?;
        for bound in 0..=3 {
            let (before, after) = (eval_bounded(s, bound), eval_bounded(&n, bound));
            ensure(before == after, || format!("{s} at {bound}: {before} vs {after}"))?;
            unknown += usize::from(before == TruthB::Unknown);
        }
    }
    Ok(format!("sentences={} evaluations={} unknown={unknown}", corpus.len(), corpus.len() * 4))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
}

fn prime_formula() -> Verdict {
    let open = parse_formula("(z > S0) & forall x. forall y. (!(x*y = z) | (x = S0) | (y = S0))").unwrap();
    for z in 2..=12 {
        let s = Sentence::try_from(open.substitute("z", &numeral(z)).unwrap()).unwrap();
        let got = eval_bounded(&s, 12);
        let want = if is_prime(z) { TruthB::TrueAt(12) } else { TruthB::FalseAt(12) };
        ensure(got == want, || format!("z={z}: {got}, trial division says {want}"))?;
    }
    Ok("z in 2..=12 at bound 12, zero mismatches".into())
}

fn game_corpus() -> Vec<(Sentence, u64)> {
    let mut generator = SentenceGen::new(0x6a3e);
    generator.max_numeral = 2;
    (0..200)
        .map(|_| {
            let depth = 1 + generator.below(3) as usize;
            let bound = 1 + generator.below(3);
            (generator.sentence(depth).nnf(), bound)
        })
        .collect()
}

fn game_oracle() -> Verdict {
    let (mut wins, mut traces, mut edges) = (0, 0, 0);
    for (s, bound) in game_corpus() {
        let state = GameState::new([s.clone()], bound).map_err(|e| e.to_string())?;
        let tree = synthesize_reduction(&state, default_depth(&state)).map_err(|e| e.to_string())?;
        let truth = eval_bounded(&s, bound);
        ensure(truth != TruthB::Unknown, || format!("{s} unknown at {bound}"))?;
        ensure(tree.is_some() == truth.is_true(), || {
            format!("{s} at {bound}: {truth} but reduction {}", tree.is_some())
        })?;
        let Some(tree) = tree else { continue };
        wins += 1;
        tree.verify(&state).map_err(|e| format!("{s}: {e}"))?;
        for trace in replay_all(&state, &tree, 10_000) {
            traces += 1;
            ensure(trace.outcome.is_win(), || format!("{s}: replay ends {:?}", trace.outcome))?;
        }
        for (parent, child) in tree.edges() {
            edges += 1;
            ensure(child < parent, || format!("{s}: measure {child} not below {parent}"))?;
        }
    }
    let false_state = GameState::new([parse_sentence("0 = S0").unwrap()], 3).map_err(|e| e.to_string())?;
    let none = synthesize_reduction(&false_state, default_depth(&false_state)).map_err(|e| e.to_string())?;
    ensure(none.is_none(), || "0 = S0 has a reduction".into())?;
    Ok(format!("sentences=200 reductions={wins} replays={traces} edges={edges}; 0 = S0 has none"))
}

fn descend_components(f: &Formula, checked: &mut usize) -> Result<(), String> {
    let d = degree(f);
    for c in components(f, 4) {
        *checked += 1;
        let dc = degree(&c);
        ensure(dc < d, || format!("degree({c}) = {dc} is not below degree({f}) = {d}"))?;
        descend_components(&c, checked)?;
    }
    Ok(())
}

fn component_descent() -> Verdict {
    let mut checked = 0;
    for s in nnf_corpus().into_iter().chain(game_corpus().into_iter().map(|(s, _)| s)) {
        descend_components(s.formula(), &mut checked)?;
    }
    Ok(format!("components checked={checked}"))
}

const FIXTURES: [(&str, &str); 6] = [
    ("refl_gen", include_str!("fixtures/refl_gen.proof")),
    ("plus_zero", include_str!("fixtures/plus_zero.proof")),
    ("succ_nonzero", include_str!("fixtures/succ_nonzero.proof")),
    ("identity", include_str!("fixtures/identity.proof")),
    ("induction", include_str!("fixtures/induction.proof")),
    ("harness", include_str!("fixtures/harness.proof")),
];

fn harness_theory() -> Theory {
    Theory::pa()
        .with_axiom(parse_sentence("0 = S0").unwrap())
        .with_axiom(parse_sentence("(0 = S0) -> ((0 = 0) & !(0 = 0))").unwrap())
}

fn theory_for(name: &str) -> Theory {
    if name == "harness" {
        harness_theory()
    } else {
        Theory::pa()
    }
}

fn flip_relation(f: &Formula) -> Option<Formula> {
    match f {
        Formula::Eq(a, b) => Some(Formula::Gt(a.clone(), b.clone())),
        Formula::Gt(a, b) => Some(Formula::Eq(a.clone(), b.clone())),
        Formula::Not(a) => flip_relation(a).map(Formula::not),
        Formula::Or(a, b) => match flip_relation(a) {
            Some(a) => Some(Formula::or(a, (**b).clone())),
            None => flip_relation(b).map(|b| Formula::or((**a).clone(), b)),
        },
        Formula::And(a, b) => match flip_relation(a) {
            Some(a) => Some(Formula::and(a, (**b).clone())),
            None => flip_relation(b).map(|b| Formula::and((**a).clone(), b)),
        },
        Formula::Quant(q, v, body) => flip_relation(body).map(|b| Formula::Quant(*q, v.clone(), Box::new(b))),
    }
}

fn renumber(j: &Justification, dropped: usize) -> Justification {
    let shift = |n: usize| if n > dropped { n - 1 } else { n };
    match j {
        Justification::ModusPonens { minor, major } => {
            Justification::ModusPonens { minor: shift(*minor), major: shift(*major) }
        }
        Justification::Generalization { premise, var } => {
            Justification::Generalization { premise: shift(*premise), var: var.clone() }
        }
        other => other.clone(),
    }
}

/// Every documented single-step mutation of `proof`.
fn mutations(proof: &Proof) -> Vec<(String, Proof)> {
    let mut out = Vec::new();
    for (i, step) in proof.steps.iter().enumerate() {
        if let Some(f) = flip_relation(&step.formula) {
            let mut p = proof.clone();
            p.steps[i].formula = f;
            out.push((format!("flip relation in step {}", i + 1), p));
        }
        if let Justification::ModusPonens { minor, major } = step.justification {
            let mut p = proof.clone();
            p.steps[i].justification = Justification::ModusPonens { minor: major, major: minor };
            out.push((format!("swap premises of step {}", i + 1), p));
        }
        let steps: Vec<Step> = proof
            .steps
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, s)| Step { formula: s.formula.clone(), justification: renumber(&s.justification, i + 1) })
            .collect();
        out.push((format!("drop step {}", i + 1), Proof::new(steps)));
    }
    out
}

fn proof_kernel() -> Verdict {
    let mut details = Vec::new();
    let mut mutants = 0;
    for (name, text) in FIXTURES {
        let theory = theory_for(name);
        let proof = parse_proof(text).map_err(|e| format!("{name}: {e}"))?;
        check_proof(&theory, &proof).map_err(|e| format!("{name} rejected: {e}"))?;
        let goal = proof.conclusion().unwrap().clone();
        for (what, mutant) in mutations(&proof) {
            mutants += 1;
            ensure(check_proof_of(&theory, &mutant, &goal).is_err(), || format!("{name}: {what} accepted"))?;
        }
        if name != "harness" {
            if let Ok(s) = Sentence::try_from(goal.clone()) {
                for bound in 2..=4 {
                    let v = eval_bounded(&s, bound);
                    ensure(v != TruthB::FalseAt(bound), || format!("{name}: theorem {s} is {v}"))?;
                }
            }
        }
    }
    details.push(format!("fixtures={} mutants-rejected={mutants}", FIXTURES.len()));

    let bad = parse_proof(include_str!("fixtures/bad_mp.proof")).unwrap();
    ensure(check_proof(&Theory::pa(), &bad).is_err(), || "bad_mp accepted".into())?;

    let theory = harness_theory();
    let harness = parse_proof(FIXTURES[5].1).unwrap();
    let target = parse_sentence("forall x. x > x").unwrap();
    let exploded = explode(&theory, &harness, &target).map_err(|e| e.to_string())?;
    check_proof_of(&theory, &exploded, target.formula()).map_err(|e| format!("explode output: {e}"))?;
    details.push(format!("explode steps={}", exploded.len()));

    let small = search_contradiction(5, LengthMetric::Symbols).map_err(|e| e.to_string())?;
    ensure(small.is_consistent(), || "proof found below 5 symbols".into())?;

    let started = Instant::now();
    let ceiling = search_contradiction(FEASIBILITY_CEILING, LengthMetric::Symbols).map_err(|e| e.to_string())?;
    let secs = started.elapsed().as_secs();
    ensure(ceiling.is_consistent(), || format!("PA contradiction found: {:?}", ceiling.proof))?;
    ensure(secs < 600, || format!("ceiling search took {secs}s"))?;
    details.push(format!("ceiling={} absent nodes={} ms={}", ceiling.ceiling, ceiling.nodes, ceiling.elapsed_ms));

    let config = SearchConfig { theory: theory.clone(), ..SearchConfig::default() };
    let found = search_contradiction_with(&config, 50, LengthMetric::Symbols).map_err(|e| e.to_string())?;
    let proof = found.proof.ok_or("harness search found nothing")?;
    check_proof(&theory, &proof).map_err(|e| format!("harness proof: {e}"))?;
    details.push(format!("harness proof steps={}", proof.len()));
    Ok(details.join("; "))
}

fn induction_template() -> Verdict {
    // phi, phi[0], phi[S x], variable, parameters
    let cases: [(&str, &str, &str, &str, &[&str]); 3] = [
        ("x + 0 = x", "0 + 0 = 0", "Sx + 0 = Sx", "x", &[]),
        ("x * S0 = x", "0 * S0 = 0", "Sx * S0 = Sx", "x", &[]),
        ("x + y = y + x", "0 + y = y + 0", "Sx + y = y + Sx", "x", &["y"]),
    ];
    for (phi, at_zero, at_succ, var, params) in cases {
        let mut text = format!("(({at_zero}) & forall {var}. (({phi}) -> ({at_succ}))) -> forall {var}. ({phi})");
        for p in params.iter().rev() {
            text = format!("forall {p}. ({text})");
        }
        let expected = parse_formula(&text).unwrap();
        let params: Vec<String> = params.iter().map(|p| p.to_string()).collect();
        let got = induction_instance(&parse_formula(phi).unwrap(), var, &params).map_err(|e| e.to_string())?;
        ensure(*got.formula() == expected, || format!("{phi}: got {got}, template {expected}"))?;
    }
    Ok("3 instances match the template".into())
}
