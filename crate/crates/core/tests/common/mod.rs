//! Random closed sentences for corpus-style tests.

#![allow(dead_code)]

use gentzen_core::fol::{numeral, Formula, Quantifier, Sentence, Term};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub struct SentenceGen {
    rng: StdRng,
    /// Largest numeral literal.
    pub max_numeral: u64,
    /// Allow `!` above non-atomic formulas.
    pub negations: bool,
}

impl SentenceGen {
    pub fn new(seed: u64) -> Self {
        SentenceGen { rng: StdRng::seed_from_u64(seed), max_numeral: 3, negations: true }
    }

    pub fn term(&mut self, scope: &[String], depth: usize) -> Term {
        let leaf = depth == 0 || self.rng.random_bool(0.5);
        if leaf {
            if !scope.is_empty() && self.rng.random_bool(0.6) {
                let i = self.rng.random_range(0..scope.len());
                Term::var(scope[i].clone())
            } else {
                numeral(self.rng.random_range(0..=self.max_numeral))
            }
        } else {
            match self.rng.random_range(0..3) {
                0 => Term::succ(self.term(scope, depth - 1)),
                1 => Term::plus(self.term(scope, depth - 1), self.term(scope, depth - 1)),
                _ => Term::times(self.term(scope, depth - 1), self.term(scope, depth - 1)),
            }
        }
    }

    fn atom(&mut self, scope: &[String]) -> Formula {
        let (a, b) = (self.term(scope, 2), self.term(scope, 2));
        if self.rng.random_bool(0.5) {
            Formula::Eq(a, b)
        } else {
            Formula::Gt(a, b)
        }
    }

    /// A formula whose free variables all lie in `scope`; depth counts
    /// connectives and quantifiers on the longest branch.
    pub fn formula(&mut self, scope: &mut Vec<String>, depth: usize) -> Formula {
        if depth == 0 {
            let a = self.atom(scope);
            return if self.rng.random_bool(0.3) { Formula::not(a) } else { a };
        }
        let kinds = if self.negations { 6 } else { 5 };
        match self.rng.random_range(0..kinds) {
            0 => self.atom(scope),
            1 => Formula::or(self.formula(scope, depth - 1), self.formula(scope, depth - 1)),
            2 => Formula::and(self.formula(scope, depth - 1), self.formula(scope, depth - 1)),
            3 | 4 => {
                let v = VARS[self.rng.random_range(0..VARS.len())].to_string();
                let q = if self.rng.random_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
                scope.push(v.clone());
                let body = self.formula(scope, depth - 1);
                scope.pop();
                Formula::Quant(q, v, Box::new(body))
            }
            _ => Formula::not(self.formula(scope, depth - 1)),
        }
    }

    pub fn sentence(&mut self, depth: usize) -> Sentence {
        let f = self.formula(&mut Vec::new(), depth);
        Sentence::try_from(f).expect("generated in scope")
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.random_range(0..n)
    }
}

/// Components of a sentence: both parts of `|`/`&`, and the instances at
/// numerals `0..=max` of a quantifier body.
pub fn components(f: &Formula, max: u64) -> Vec<Formula> {
    match f {
        Formula::Or(a, b) | Formula::And(a, b) => vec![(**a).clone(), (**b).clone()],
        Formula::Quant(_, v, body) => (0..=max).map(|n| body.substitute(v, &numeral(n)).unwrap()).collect(),
        _ => Vec::new(),
    }
}
