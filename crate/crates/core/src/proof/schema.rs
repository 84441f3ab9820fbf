//! Logical axiom schemas.
//!
//! `A -> B` abbreviates `!A | B` throughout. The propositional and equality
//! schemas are fixed patterns over formula metavariables `A`, `B`, `C` and
//! term metavariables `s`, `t`, `u`; the four quantifier schemas carry side
//! conditions and are matched by hand.
//!
//! | tag         | schema                                              |
//! |-------------|-----------------------------------------------------|
//! | `k`         | `A -> (B -> A)`                                     |
//! | `s`         | `(A -> (B -> C)) -> ((A -> B) -> (A -> C))`         |
//! | `efq`       | `!A -> (A -> B)`                                    |
//! | `contra`    | `(!A -> !B) -> (B -> A)`                            |
//! | `dne`       | `!!A -> A`                                          |
//! | `and-i`     | `A -> (B -> (A & B))`                               |
//! | `and-e1`    | `(A & B) -> A`                                      |
//! | `and-e2`    | `(A & B) -> B`                                      |
//! | `or-i1`     | `A -> (A | B)`                                      |
//! | `or-i2`     | `B -> (A | B)`                                      |
//! | `or-e`      | `(A -> C) -> ((B -> C) -> ((A | B) -> C))`          |
//! | `inst`      | `(forall x. A) -> A[x:=t]`, no capture              |
//! | `ex-i`      | `A[x:=t] -> exists x. A`, no capture                |
//! | `dist`      | `(forall x. (A -> B)) -> (A -> forall x. B)`, `x` not free in `A` |
//! | `ex-e`      | `(forall x. (A -> B)) -> ((exists x. A) -> B)`, `x` not free in `B` |
//! | `eq-refl`   | `t = t`                                             |
//! | `eq-sym`    | `s = t -> t = s`                                    |
//! | `eq-trans`  | `s = t -> (t = u -> s = u)`                         |
//! | `eq-succ`   | `s = t -> Ss = St`                                  |
//! | `eq-plus-l` | `s = t -> s + u = t + u`                            |
//! | `eq-plus-r` | `s = t -> u + s = u + t`                            |
//! | `eq-times-l`| `s = t -> s * u = t * u`                            |
//! | `eq-times-r`| `s = t -> u * s = u * t`                            |
//! | `eq-gt-l`   | `s = t -> (s > u -> t > u)`                         |
//! | `eq-gt-r`   | `s = t -> (u > s -> u > t)`                         |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fol::{Formula, Quantifier, SubstError, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    K,
    S,
    Efq,
    Contra,
    Dne,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    Inst,
    ExI,
    Dist,
    ExE,
    EqRefl,
    EqSym,
    EqTrans,
    EqSucc,
    EqPlusL,
    EqPlusR,
    EqTimesL,
    EqTimesR,
    EqGtL,
    EqGtR,
}

impl Schema {
    pub const ALL: [Schema; 25] = [
        Schema::K,
        Schema::S,
        Schema::Efq,
        Schema::Contra,
        Schema::Dne,
        Schema::AndI,
        Schema::AndE1,
        Schema::AndE2,
        Schema::OrI1,
        Schema::OrI2,
        Schema::OrE,
        Schema::Inst,
        Schema::ExI,
        Schema::Dist,
        Schema::ExE,
        Schema::EqRefl,
        Schema::EqSym,
        Schema::EqTrans,
        Schema::EqSucc,
        Schema::EqPlusL,
        Schema::EqPlusR,
        Schema::EqTimesL,
        Schema::EqTimesR,
        Schema::EqGtL,
        Schema::EqGtR,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Schema::K => "k",
            Schema::S => "s",
            Schema::Efq => "efq",
            Schema::Contra => "contra",
            Schema::Dne => "dne",
            Schema::AndI => "and-i",
            Schema::AndE1 => "and-e1",
            Schema::AndE2 => "and-e2",
            Schema::OrI1 => "or-i1",
            Schema::OrI2 => "or-i2",
            Schema::OrE => "or-e",
            Schema::Inst => "inst",
            Schema::ExI => "ex-i",
            Schema::Dist => "dist",
            Schema::ExE => "ex-e",
            Schema::EqRefl => "eq-refl",
            Schema::EqSym => "eq-sym",
            Schema::EqTrans => "eq-trans",
            Schema::EqSucc => "eq-succ",
            Schema::EqPlusL => "eq-plus-l",
            Schema::EqPlusR => "eq-plus-r",
            Schema::EqTimesL => "eq-times-l",
            Schema::EqTimesR => "eq-times-r",
            Schema::EqGtL => "eq-gt-l",
            Schema::EqGtR => "eq-gt-r",
        }
    }

    /// Check that `f` is an instance of this schema.
    pub fn check(self, f: &Formula) -> Result<(), SchemaError> {
        match self {
            Schema::Inst => check_inst(f, false),
            Schema::ExI => check_inst(f, true),
            Schema::Dist => check_dist(f, false),
            Schema::ExE => check_dist(f, true),
            _ => {
                let pat = self.pattern().expect("pattern schema");
                let mut b = Bindings::default();
                if match_pat(&pat, f, &mut b) {
                    Ok(())
                } else {
                    Err(SchemaError::NotAnInstance(self))
                }
            }
        }
    }

    pub fn matches(self, f: &Formula) -> bool {
        self.check(f).is_ok()
    }

    fn pattern(self) -> Option<P> {
        use P::*;
        let (a, b, c) = (|| Meta(0), || Meta(1), || Meta(2));
        let (s, t, u) = (|| T::M(0), || T::M(1), || T::M(2));
        let eq = |l: T, r: T| P::Eq(l, r);
        Some(match self {
            Schema::K => imp(a(), imp(b(), a())),
            Schema::S => imp(imp(a(), imp(b(), c())), imp(imp(a(), b()), imp(a(), c()))),
            Schema::Efq => imp(not(a()), imp(a(), b())),
            Schema::Contra => imp(imp(not(a()), not(b())), imp(b(), a())),
            Schema::Dne => imp(not(not(a())), a()),
            Schema::AndI => imp(a(), imp(b(), and(a(), b()))),
            Schema::AndE1 => imp(and(a(), b()), a()),
            Schema::AndE2 => imp(and(a(), b()), b()),
            Schema::OrI1 => imp(a(), or(a(), b())),
            Schema::OrI2 => imp(b(), or(a(), b())),
            Schema::OrE => imp(imp(a(), c()), imp(imp(b(), c()), imp(or(a(), b()), c()))),
            Schema::EqRefl => eq(t(), t()),
            Schema::EqSym => imp(eq(s(), t()), eq(t(), s())),
            Schema::EqTrans => imp(eq(s(), t()), imp(eq(t(), u()), eq(s(), u()))),
            Schema::EqSucc => imp(eq(s(), t()), eq(T::succ(s()), T::succ(t()))),
            Schema::EqPlusL => imp(eq(s(), t()), eq(T::plus(s(), u()), T::plus(t(), u()))),
            Schema::EqPlusR => imp(eq(s(), t()), eq(T::plus(u(), s()), T::plus(u(), t()))),
            Schema::EqTimesL => imp(eq(s(), t()), eq(T::times(s(), u()), T::times(t(), u()))),
            Schema::EqTimesR => imp(eq(s(), t()), eq(T::times(u(), s()), T::times(u(), t()))),
            Schema::EqGtL => imp(eq(s(), t()), imp(Gt(s(), u()), Gt(t(), u()))),
            Schema::EqGtR => imp(eq(s(), t()), imp(Gt(u(), s()), Gt(u(), t()))),
            Schema::Inst | Schema::ExI | Schema::Dist | Schema::ExE => return None,
        })
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom schema `{0}`")]
pub struct UnknownSchema(pub String);

impl FromStr for Schema {
    type Err = UnknownSchema;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL.into_iter().find(|schema| schema.tag() == s).ok_or_else(|| UnknownSchema(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("not an instance of axiom schema {0}")]
    NotAnInstance(Schema),
    #[error("instantiating the quantifier would capture variable {var}")]
    Capture { var: String },
    #[error("variable {var} occurs free where schema {schema} forbids it")]
    SideCondition { schema: Schema, var: String },
}

// ---------------------------------------------------------------------------
// Patterns

#[derive(Clone, Debug)]
enum T {
    M(u8),
    Succ(Box<T>),
    Plus(Box<T>, Box<T>),
    Times(Box<T>, Box<T>),
}

impl T {
    fn succ(t: T) -> T {
        T::Succ(Box::new(t))
    }
    fn plus(a: T, b: T) -> T {
        T::Plus(Box::new(a), Box::new(b))
    }
    fn times(a: T, b: T) -> T {
        T::Times(Box::new(a), Box::new(b))
    }
}

#[derive(Clone, Debug)]
enum P {
    Meta(u8),
    Not(Box<P>),
    Or(Box<P>, Box<P>),
    And(Box<P>, Box<P>),
    Eq(T, T),
    Gt(T, T),
}

fn not(a: P) -> P {
    P::Not(Box::new(a))
}
fn or(a: P, b: P) -> P {
    P::Or(Box::new(a), Box::new(b))
}
fn and(a: P, b: P) -> P {
    P::And(Box::new(a), Box::new(b))
}
fn imp(a: P, b: P) -> P {
    or(not(a), b)
}

#[derive(Default, Clone)]
struct Bindings<'a> {
    f: [Option<&'a Formula>; 3],
    t: [Option<&'a Term>; 3],
}

fn match_term<'a>(p: &T, t: &'a Term, b: &mut Bindings<'a>) -> bool {
    match (p, t) {
        (T::M(i), _) => match b.t[*i as usize] {
            Some(prev) => prev == t,
            None => {
                b.t[*i as usize] = Some(t);
                true
            }
        },
        (T::Succ(p), Term::Succ(t)) => match_term(p, t, b),
        (T::Plus(p1, p2), Term::Plus(t1, t2)) | (T::Times(p1, p2), Term::Times(t1, t2)) => {
            match_term(p1, t1, b) && match_term(p2, t2, b)
        }
        _ => false,
    }
}

fn match_pat<'a>(p: &P, f: &'a Formula, b: &mut Bindings<'a>) -> bool {
    match (p, f) {
        (P::Meta(i), _) => match b.f[*i as usize] {
            Some(prev) => prev == f,
            None => {
                b.f[*i as usize] = Some(f);
                true
            }
        },
        (P::Not(p), Formula::Not(f)) => match_pat(p, f, b),
        (P::Or(p1, p2), Formula::Or(f1, f2)) | (P::And(p1, p2), Formula::And(f1, f2)) => {
            match_pat(p1, f1, b) && match_pat(p2, f2, b)
        }
        (P::Eq(p1, p2), Formula::Eq(t1, t2)) | (P::Gt(p1, p2), Formula::Gt(t1, t2)) => {
            match_term(p1, t1, b) && match_term(p2, t2, b)
        }
        _ => false,
    }
}

struct Assign<'a> {
    f: [Option<&'a Formula>; 3],
    t: [Option<&'a Term>; 3],
}

fn build_term(p: &T, a: &Assign) -> Term {
    match p {
        T::M(i) => a.t[*i as usize].expect("assigned").clone(),
        T::Succ(p) => Term::succ(build_term(p, a)),
        T::Plus(x, y) => Term::plus(build_term(x, a), build_term(y, a)),
        T::Times(x, y) => Term::times(build_term(x, a), build_term(y, a)),
    }
}

fn build(p: &P, a: &Assign) -> Formula {
    match p {
        P::Meta(i) => a.f[*i as usize].expect("assigned").clone(),
        P::Not(p) => Formula::not(build(p, a)),
        P::Or(x, y) => Formula::or(build(x, a), build(y, a)),
        P::And(x, y) => Formula::and(build(x, a), build(y, a)),
        P::Eq(x, y) => Formula::Eq(build_term(x, a), build_term(y, a)),
        P::Gt(x, y) => Formula::Gt(build_term(x, a), build_term(y, a)),
    }
}

/// Fixed symbols and metavariable occurrence counts of a pattern.
#[derive(Default)]
struct Shape {
    fixed: usize,
    f_occ: [usize; 3],
    t_occ: [usize; 3],
}

fn shape_term(p: &T, s: &mut Shape) {
    match p {
        T::M(i) => s.t_occ[*i as usize] += 1,
        T::Succ(p) => {
            s.fixed += 1;
            shape_term(p, s);
        }
        T::Plus(x, y) | T::Times(x, y) => {
            s.fixed += 3;
            shape_term(x, s);
            shape_term(y, s);
        }
    }
}

fn shape(p: &P, s: &mut Shape) {
    match p {
        P::Meta(i) => s.f_occ[*i as usize] += 1,
        P::Not(p) => {
            s.fixed += 1;
            shape(p, s);
        }
        P::Or(x, y) | P::And(x, y) => {
            s.fixed += 3;
            shape(x, s);
            shape(y, s);
        }
        P::Eq(x, y) | P::Gt(x, y) => {
            s.fixed += 3;
            shape_term(x, s);
            shape_term(y, s);
        }
    }
}

// ---------------------------------------------------------------------------
// Quantifier schemas

/// Find the term `t` with `phi[v:=t] = psi`, if any occurrence of `v` is free.
/// `Err(())` when the two formulas cannot correspond at all.
fn find_instance_term<'a>(phi: &Formula, psi: &'a Formula, v: &str) -> Result<Option<&'a Term>, ()> {
    fn term<'a>(p: &Term, t: &'a Term, v: &str, found: &mut Option<&'a Term>) -> Result<(), ()> {
        match (p, t) {
            (Term::Var(x), _) if x == v => match found {
                Some(prev) if *prev != t => Err(()),
                _ => {
                    *found = Some(t);
                    Ok(())
                }
            },
            (Term::Zero, Term::Zero) => Ok(()),
            (Term::Var(x), Term::Var(y)) if x == y => Ok(()),
            (Term::Succ(p), Term::Succ(t)) => term(p, t, v, found),
            (Term::Plus(p1, p2), Term::Plus(t1, t2)) | (Term::Times(p1, p2), Term::Times(t1, t2)) => {
                term(p1, t1, v, found)?;
                term(p2, t2, v, found)
            }
            _ => Err(()),
        }
    }
    fn formula<'a>(p: &Formula, f: &'a Formula, v: &str, found: &mut Option<&'a Term>) -> Result<(), ()> {
        match (p, f) {
            (Formula::Eq(p1, p2), Formula::Eq(t1, t2)) | (Formula::Gt(p1, p2), Formula::Gt(t1, t2)) => {
                term(p1, t1, v, found)?;
                term(p2, t2, v, found)
            }
            (Formula::Not(p), Formula::Not(f)) => formula(p, f, v, found),
            (Formula::Or(p1, p2), Formula::Or(f1, f2)) | (Formula::And(p1, p2), Formula::And(f1, f2)) => {
                formula(p1, f1, v, found)?;
                formula(p2, f2, v, found)
            }
            (Formula::Quant(q1, x, p), Formula::Quant(q2, y, f)) if q1 == q2 && x == y => {
                if x == v {
                    if p == f {
                        Ok(())
                    } else {
                        Err(())
                    }
                } else {
                    formula(p, f, v, found)
                }
            }
            _ => Err(()),
        }
    }
    let mut found = None;
    formula(phi, psi, v, &mut found)?;
    Ok(found)
}

/// `(forall v. phi) -> psi` or, with `exists`, `psi -> exists v. phi`.
fn check_inst(f: &Formula, exists: bool) -> Result<(), SchemaError> {
    let schema = if exists { Schema::ExI } else { Schema::Inst };
    let not_instance = SchemaError::NotAnInstance(schema);
    let (ante, cons) = f.as_implication().ok_or(not_instance.clone())?;
    let (quantified, psi) = if exists { (cons, ante) } else { (ante, cons) };
    let want = if exists { Quantifier::Exists } else { Quantifier::Forall };
    let Formula::Quant(q, v, phi) = quantified else {
        return Err(not_instance);
    };
    if *q != want {
        return Err(not_instance);
    }
    let t = find_instance_term(phi, psi, v).map_err(|_| not_instance.clone())?;
    let Some(t) = t else {
        return if **phi == *psi { Ok(()) } else { Err(not_instance) };
    };
    match phi.substitute_open(v, t) {
        Ok(result) if result == *psi => Ok(()),
        Ok(_) => Err(not_instance),
        Err(SubstError::Capture { var }) => Err(SchemaError::Capture { var }),
        Err(SubstError::OpenTerm(_)) => unreachable!("substitute_open accepts open terms"),
    }
}

/// `(forall v. (A -> B)) -> (A -> forall v. B)` or, for `ex-e`,
/// `(forall v. (A -> B)) -> ((exists v. A) -> B)`.
fn check_dist(f: &Formula, ex_e: bool) -> Result<(), SchemaError> {
    let schema = if ex_e { Schema::ExE } else { Schema::Dist };
    let not_instance = || SchemaError::NotAnInstance(schema);
    let (ante, cons) = f.as_implication().ok_or_else(not_instance)?;
    let Formula::Quant(Quantifier::Forall, v, inner) = ante else {
        return Err(not_instance());
    };
    let (a, b) = inner.as_implication().ok_or_else(not_instance)?;
    let (a2, b2) = cons.as_implication().ok_or_else(not_instance)?;
    if ex_e {
        if *a2 != Formula::exists(v.clone(), a.clone()) || b2 != b {
            return Err(not_instance());
        }
        if b.has_free(v) {
            return Err(SchemaError::SideCondition { schema, var: v.clone() });
        }
    } else {
        if a2 != a || *b2 != Formula::forall(v.clone(), b.clone()) {
            return Err(not_instance());
        }
        if a.has_free(v) {
            return Err(SchemaError::SideCondition { schema, var: v.clone() });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Enumeration

/// All terms and formulas over a fixed variable alphabet, indexed by size.
pub(crate) struct Tables {
    pub alphabet: Vec<String>,
    terms: Vec<Vec<Term>>,
    formulas: Vec<Vec<Formula>>,
}

impl Tables {
    pub fn new(alphabet: &[String], max_term: usize, max_formula: usize) -> Self {
        let max_term = max_term.max(max_formula);
        let mut terms: Vec<Vec<Term>> = vec![Vec::new(); max_term + 1];
        for n in 1..=max_term {
            let mut out = Vec::new();
            if n == 1 {
                out.push(Term::Zero);
                out.extend(alphabet.iter().map(|v| Term::var(v.clone())));
            } else {
                out.extend(terms[n - 1].iter().map(|t| Term::succ(t.clone())));
                for a in 1..n.saturating_sub(3) {
                    let b = n - 3 - a;
                    for x in &terms[a] {
                        for y in &terms[b] {
                            out.push(Term::plus(x.clone(), y.clone()));
                        }
                    }
                    for x in &terms[a] {
                        for y in &terms[b] {
                            out.push(Term::times(x.clone(), y.clone()));
                        }
                    }
                }
            }
            terms[n] = out;
        }

        let mut formulas: Vec<Vec<Formula>> = vec![Vec::new(); max_formula + 1];
        for n in 5..=max_formula {
            let mut out = Vec::new();
            for a in 1..n - 3 {
                let b = n - 3 - a;
                for x in &terms[a] {
                    for y in &terms[b] {
                        out.push(Formula::Eq(x.clone(), y.clone()));
                    }
                }
                for x in &terms[a] {
                    for y in &terms[b] {
                        out.push(Formula::Gt(x.clone(), y.clone()));
                    }
                }
            }
            // operands of !, & and | by printed (wrapped) size
            let wrapped = |w: usize| -> Vec<&Formula> {
                let mut v: Vec<&Formula> = formulas[w].iter().filter(|f| !f.is_quantifier()).collect();
                if w >= 2 {
                    v.extend(formulas[w - 2].iter().filter(|f| f.is_quantifier()));
                }
                v
            };
            out.extend(wrapped(n - 1).into_iter().map(|f| Formula::not(f.clone())));
            for wa in 5..n.saturating_sub(7) {
                let (xs, ys) = (wrapped(wa), wrapped(n - 3 - wa));
                for x in &xs {
                    for y in &ys {
                        out.push(Formula::or((*x).clone(), (*y).clone()));
                    }
                }
                for x in &xs {
                    for y in &ys {
                        out.push(Formula::and((*x).clone(), (*y).clone()));
                    }
                }
            }
            if n >= 8 {
                for q in [Quantifier::Forall, Quantifier::Exists] {
                    for v in alphabet {
                        for body in &formulas[n - 3] {
                            out.push(Formula::Quant(q, v.clone(), Box::new(body.clone())));
                        }
                    }
                }
            }
            formulas[n] = out;
        }
        Tables { alphabet: alphabet.to_vec(), terms, formulas }
    }

    /// Tables large enough to enumerate every axiom instance of size at
    /// most `cap`. No formula metavariable of any schema can exceed
    /// `cap - 17` (`or-i1` and `and-e1` use `B` once around 17 other
    /// symbols) or `(cap - 7) / 2` (the body of an `ex-i` instance, printed
    /// twice), and no term metavariable can exceed `(cap - 3) / 2`
    /// (`eq-refl`) or `cap - 16` (the witness term of `ex-i`).
    pub fn for_cap(alphabet: &[String], cap: usize) -> Self {
        let max_formula = cap.saturating_sub(17).max(cap.saturating_sub(7) / 2);
        let max_term = (cap.saturating_sub(3) / 2).max(cap.saturating_sub(16));
        Tables::new(alphabet, max_term, max_formula)
    }

    pub fn max_term(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn max_formula(&self) -> usize {
        self.formulas.len() - 1
    }

    pub fn terms_of_size(&self, n: usize) -> &[Term] {
        self.terms.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn formulas_of_size(&self, n: usize) -> &[Formula] {
        self.formulas.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn formulas_up_to(&self, n: usize) -> impl Iterator<Item = &Formula> {
        (0..=n.min(self.max_formula())).flat_map(move |k| self.formulas[k].iter())
    }
}

/// Every instance of `schema` with size at most `cap` whose variables all
/// come from the tables' alphabet. May contain duplicates.
pub(crate) fn instances(schema: Schema, cap: usize, tables: &Tables, out: &mut Vec<Formula>) {
    match schema {
        Schema::Inst | Schema::ExI => quantifier_instances(schema, cap, tables, out),
        Schema::Dist | Schema::ExE => distribution_instances(schema, cap, tables, out),
        _ => {
            let pat = schema.pattern().expect("pattern schema");
            let mut sh = Shape::default();
            shape(&pat, &mut sh);
            let mut assign = Assign { f: [None; 3], t: [None; 3] };
            fill(&pat, &sh, cap, tables, 0, sh.fixed, &mut assign, out);
        }
    }
}

/// Assign metavariables in order (formulas 0..3, then terms 0..3), keeping a
/// lower bound on the instance size within `cap`.
#[allow(clippy::too_many_arguments)]
fn fill<'a>(
    pat: &P,
    sh: &Shape,
    cap: usize,
    tables: &'a Tables,
    slot: usize,
    used: usize,
    assign: &mut Assign<'a>,
    out: &mut Vec<Formula>,
) {
    let reserve: usize = (slot..6).map(|k| if k < 3 { sh.f_occ[k] * 5 } else { sh.t_occ[k - 3] }).sum();
    if used + reserve > cap {
        return;
    }
    if slot == 6 {
        let f = build(pat, assign);
        if f.size() <= cap {
            out.push(f);
        }
        return;
    }
    let (occ, min) = if slot < 3 { (sh.f_occ[slot], 5) } else { (sh.t_occ[slot - 3], 1) };
    if occ == 0 {
        fill(pat, sh, cap, tables, slot + 1, used, assign, out);
        return;
    }
    let rest = reserve - occ * min;
    let max_each = (cap - used - rest) / occ;
    let table_max = if slot < 3 { tables.max_formula() } else { tables.max_term() };
    for n in min..=max_each.min(table_max) {
        if slot < 3 {
            for f in tables.formulas_of_size(n) {
                assign.f[slot] = Some(f);
                fill(pat, sh, cap, tables, slot + 1, used + occ * n, assign, out);
            }
            assign.f[slot] = None;
        } else {
            for t in tables.terms_of_size(n) {
                assign.t[slot - 3] = Some(t);
                fill(pat, sh, cap, tables, slot + 1, used + occ * n, assign, out);
            }
            assign.t[slot - 3] = None;
        }
    }
}

fn quantifier_instances(schema: Schema, cap: usize, tables: &Tables, out: &mut Vec<Formula>) {
    // `!(forall v. A) | B` has 9 fixed symbols around A and B, `!B | exists v. A` has 7
    let fixed = if schema == Schema::Inst { 9 } else { 7 };
    let Some(budget) = cap.checked_sub(fixed) else { return };
    for phi in tables.formulas_up_to(budget / 2) {
        for v in &tables.alphabet {
            let make = |psi: Formula| {
                if schema == Schema::Inst {
                    Formula::implies(Formula::forall(v.clone(), phi.clone()), psi)
                } else {
                    Formula::implies(psi, Formula::exists(v.clone(), phi.clone()))
                }
            };
            if !phi.has_free(v) {
                let f = make(phi.clone());
                if f.size() <= cap {
                    out.push(f);
                }
                continue;
            }
            // every term of one size gives an instance of one size, growing with it
            'sizes: for n in 1..=tables.max_term() {
                for t in tables.terms_of_size(n) {
                    let Ok(psi) = phi.substitute_open(v, t) else { continue };
                    let f = make(psi);
                    if f.size() > cap {
                        break 'sizes;
                    }
                    out.push(f);
                }
            }
        }
    }
}

fn distribution_instances(schema: Schema, cap: usize, tables: &Tables, out: &mut Vec<Formula>) {
    // both shapes have 22 fixed symbols, with A and B printed twice each
    let Some(budget) = cap.checked_sub(22) else { return };
    for a in tables.formulas_up_to(budget.saturating_sub(10) / 2) {
        let rest = budget.saturating_sub(2 * a.size());
        for b in tables.formulas_up_to(rest / 2) {
            for v in &tables.alphabet {
                let inner = Formula::forall(v.clone(), Formula::implies(a.clone(), b.clone()));
                let f = if schema == Schema::Dist {
                    if a.has_free(v) {
                        continue;
                    }
                    Formula::implies(inner, Formula::implies(a.clone(), Formula::forall(v.clone(), b.clone())))
                } else {
                    if b.has_free(v) {
                        continue;
                    }
                    Formula::implies(inner, Formula::implies(Formula::exists(v.clone(), a.clone()), b.clone()))
                };
                if f.size() <= cap {
                    out.push(f);
                }
            }
        }
    }
}

/// All distinct logical axiom instances of size at most `cap`.
pub(crate) fn all_instances(cap: usize, tables: &Tables) -> BTreeSet<Formula> {
    let mut out = Vec::new();
    for schema in Schema::ALL {
        instances(schema, cap, tables, &mut out);
    }
    out.into_iter().collect()
}
