//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula  := disj [ "->" formula ]          A -> B  is read as  !A | B
//! disj     := conj { "|" conj }
//! conj     := unary { "&" unary }
//! unary    := "!" unary | quant | primary
//! quant    := ("forall" | "exists") ident "." formula
//! primary  := atom | "(" formula ")"
//! atom     := term ("=" | ">") term
//! term     := prod { "+" prod }
//! prod     := succ { "*" succ }
//! succ     := "S" succ | "0" | digits | ident | "(" term ")"
//! ident    := [a-z][a-z0-9_]*   (not a keyword)
//! ```
//!
//! Binary operators associate to the left except `->`. A quantifier body
//! extends as far right as possible. A decimal literal `n` abbreviates the
//! numeral `S...S0`.

use thiserror::Error;

use super::syntax::{numeral, Formula, Quantifier, Term};

/// Largest decimal literal accepted as numeral sugar.
pub const MAX_LITERAL: u64 = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Expected { offset: usize, expected: String },
    #[error("unknown symbol {symbol:?} at offset {offset}")]
    UnknownSymbol { offset: usize, symbol: char },
    #[error("numeral literal at offset {offset} exceeds {MAX_LITERAL}")]
    LiteralTooLarge { offset: usize },
}

impl SyntaxError {
    pub fn offset(&self) -> usize {
        match self {
            SyntaxError::Expected { offset, .. }
            | SyntaxError::UnknownSymbol { offset, .. }
            | SyntaxError::LiteralTooLarge { offset } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Eq,
    Gt,
    Plus,
    Star,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Dot,
    Succ,
    Num(u64),
    Ident(String),
    Forall,
    Exists,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::End => "end of input".into(),
            other => format!("{other:?}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Eq,
            b'>' => Tok::Gt,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'.' => Tok::Dot,
            b'S' => Tok::Succ,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..=i]
                    .parse()
                    .ok()
                    .filter(|n| *n <= MAX_LITERAL)
                    .ok_or(SyntaxError::LiteralTooLarge { offset: start })?;
                Tok::Num(n)
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_lowercase() || bytes[i + 1].is_ascii_digit() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    name => Tok::Ident(name.to_string()),
                }
            }
            _ => {
                let symbol = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::UnknownSymbol { offset: i, symbol });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> SyntaxError {
        SyntaxError::Expected { offset: self.offset(), expected: format!("{what}, found {}", self.peek().describe()) }
    }

    fn eat(&mut self, tok: &Tok, what: &str) -> PResult<()> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump() == Tok::Forall { Quantifier::Forall } else { Quantifier::Exists };
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.expected("a variable after the quantifier"));
                    }
                };
                self.eat(&Tok::Dot, "'.' after the quantified variable")?;
                let body = self.formula()?;
                Ok(Formula::Quant(q, var, Box::new(body)))
            }
            Tok::LParen => {
                let save = self.pos;
                match self.atom() {
                    Ok(f) => Ok(f),
                    Err(atom_err) => {
                        self.pos = save;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.eat(&Tok::RParen, "')'")?;
                            Ok(f)
                        });
                        match inner {
                            Ok(f) => Ok(f),
                            Err(e) if e.offset() >= atom_err.offset() => Err(e),
                            Err(_) => Err(atom_err),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        match self.bump() {
            Tok::Eq => Ok(Formula::Eq(lhs, self.term()?)),
            Tok::Gt => Ok(Formula::Gt(lhs, self.term()?)),
            _ => {
                self.pos -= 1;
                Err(self.expected("'=' or '>'"))
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut t = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::plus(t, self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut t = self.succ()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::times(t, self.succ()?);
        }
        Ok(t)
    }

    fn succ(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Succ => {
                self.bump();
                Ok(Term::succ(self.succ()?))
            }
            Tok::Num(n) => {
                self.bump();
                Ok(numeral(n))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => Err(self.expected("a term")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.expected("end of input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.expected("end of input"));
    }
    Ok(t)
}
