//! Ordinals below epsilon-zero written as nested lists.
//!
//! A list is either empty or a finite sequence of lists. A list is an
//! *ordinal* when every constituent is an ordinal and the constituents are
//! weakly decreasing. The ordinal `[a1, ..., an]` stands for the Cantor
//! normal form `ω^a1 + ... + ω^an`.
//!
//! [`List`] is the raw shape; [`Ordinal`] is a list that has been checked.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A finite nested list, not necessarily an ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct List {
    items: Vec<List>,
}

impl List {
    pub fn empty() -> Self {
        List { items: Vec::new() }
    }

    pub fn new(items: Vec<List>) -> Self {
        List { items }
    }

    pub fn items(&self) -> &[List] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Total number of list nodes, counting `self`.
    pub fn node_count(&self) -> usize {
        1 + self.items.iter().map(List::node_count).sum::<usize>()
    }

    /// The recursive lexicographic order.
    ///
    /// Walks both lists in step; at the first index where the constituents
    /// differ the result is the comparison of those constituents. When one
    /// list runs out first it is a prefix of the other and compares `Less`.
    /// The recursion is total on raw lists too, but only carries ordinal
    /// meaning when both sides are ordinals.
    pub fn compare(&self, other: &List) -> Ordering {
        for (a, b) in self.items.iter().zip(&other.items) {
            match a.compare(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.items.len().cmp(&other.items.len())
    }

    pub fn is_ordinal(&self) -> bool {
        self.items.iter().all(List::is_ordinal) && self.items.windows(2).all(|w| w[0].compare(&w[1]) != Ordering::Less)
    }

    /// Number of `[` before the first `]` in the bracket rendering.
    pub fn height(&self) -> usize {
        match self.items.first() {
            None => 1,
            Some(first) => 1 + first.height(),
        }
    }

    fn write_brackets(&self, out: &mut String) {
        out.push('[');
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            item.write_brackets(out);
        }
        out.push(']');
    }

    pub fn to_brackets(&self) -> String {
        let mut out = String::new();
        self.write_brackets(&mut out);
        out
    }
}

impl fmt::Display for List {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brackets())
    }
}

impl FromStr for List {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_list(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unexpected end of input at offset {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("trailing input at offset {offset}")]
    Trailing { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::UnexpectedChar { offset, .. }
            | ParseError::UnexpectedEnd { offset }
            | ParseError::Trailing { offset } => *offset,
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self) -> ParseError {
        match self.peek() {
            None => ParseError::UnexpectedEnd { offset: self.pos },
            Some(b) => ParseError::UnexpectedChar { offset: self.pos, found: b as char },
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn list(&mut self) -> Result<List, ParseError> {
        self.expect(b'[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(List::new(items));
        }
        loop {
            items.push(self.list()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(List::new(items));
                }
                _ => return Err(self.error()),
            }
        }
    }
}

/// Parse the bracket notation, e.g. `[[],[[]]]`. Whitespace is allowed
/// between tokens; trailing commas are not.
pub fn parse_list(text: &str) -> Result<List, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut cursor = Cursor { bytes: text.as_bytes(), pos: 0 };
    let list = cursor.list()?;
    cursor.skip_ws();
    if cursor.pos != cursor.bytes.len() {
        return Err(ParseError::Trailing { offset: cursor.pos });
    }
    Ok(list)
}

/// A list that satisfies the ordinal invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Ordinal(List);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0} is not an ordinal: constituents must be ordinals in weakly decreasing order")]
    NotOrdinal(String),
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal(List::empty())
    }

    pub fn as_list(&self) -> &List {
        &self.0
    }

    pub fn into_list(self) -> List {
        self.0
    }

    /// Constituents as ordinals (each is one exponent of the normal form).
    pub fn terms(&self) -> impl Iterator<Item = &Ordinal> {
        self.0.items.iter().map(Ordinal::view)
    }

    fn view(list: &List) -> &Ordinal {
        // SAFETY: `Ordinal` is a `#[repr(transparent)]` newtype over `List`
        // and every constituent of an ordinal is an ordinal.
        unsafe { &*(list as *const List as *const Ordinal) }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> usize {
        self.0.height()
    }

    pub fn node_count(&self) -> usize {
        self.0.node_count()
    }

    pub fn from_nat(n: usize) -> Self {
        Ordinal(List::new(vec![List::empty(); n]))
    }

    /// `ω^self`, the one-element list `[self]`.
    pub fn omega_power(&self) -> Self {
        Ordinal(List::new(vec![self.0.clone()]))
    }

    /// `self + 1`: append an `ω^0` term. The `[]` constituent is the least
    /// list, so appending it keeps the constituents weakly decreasing.
    pub fn successor(&self) -> Self {
        let mut items = self.0.items.clone();
        items.push(List::empty());
        Ordinal(List::new(items))
    }

    /// Hessenberg (natural) sum: merge the two term sequences in
    /// weakly decreasing order.
    pub fn natural_sum(&self, other: &Ordinal) -> Self {
        let (a, b) = (&self.0.items, &other.0.items);
        let mut items = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].compare(&b[j]) != Ordering::Less {
                items.push(a[i].clone());
                i += 1;
            } else {
                items.push(b[j].clone());
                j += 1;
            }
        }
        items.extend_from_slice(&a[i..]);
        items.extend_from_slice(&b[j..]);
        Ordinal(List::new(items))
    }

    /// Cantor normal form with the usual abbreviations: `ω^0` terms collapse
    /// into a trailing natural number, `ω^1` prints as `ω`, and runs of equal
    /// exponents print as `·k`.
    pub fn to_cnf(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let items = &self.0.items;
        let mut i = 0;
        while i < items.len() {
            let mut k = 1;
            while i + k < items.len() && items[i + k] == items[i] {
                k += 1;
            }
            let exponent = Ordinal::view(&items[i]);
            let part = if exponent.is_zero() {
                k.to_string()
            } else {
                let base = if *exponent == Ordinal::from_nat(1) {
                    "ω".to_string()
                } else {
                    let e = exponent.to_cnf();
                    if e.contains('+') || e.contains('·') || e.contains('^') {
                        format!("ω^({e})")
                    } else {
                        format!("ω^{e}")
                    }
                };
                if k == 1 {
                    base
                } else {
                    format!("{base}·{k}")
                }
            };
            parts.push(part);
            i += k;
        }
        parts.join("+")
    }

    pub fn to_brackets(&self) -> String {
        self.0.to_brackets()
    }
}

impl TryFrom<List> for Ordinal {
    type Error = OrdinalError;

    fn try_from(list: List) -> Result<Self, Self::Error> {
        if list.is_ordinal() {
            Ok(Ordinal(list))
        } else {
            Err(OrdinalError::NotOrdinal(list.to_brackets()))
        }
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::try_from(parse_list(s)?)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.compare(&other.0)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brackets())
    }
}

impl Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_brackets())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every ordinal with at most `max_nodes` list nodes, in increasing order.
pub fn enumerate(max_nodes: usize) -> Vec<Ordinal> {
    // by_size[n] = all ordinals with exactly n nodes, sorted ascending
    let mut by_size: Vec<Vec<List>> = vec![Vec::new(); max_nodes + 1];
    for n in 1..=max_nodes {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        extend_weakly_decreasing(&by_size, n - 1, None, &mut prefix, &mut out);
        out.sort_by(List::compare);
        by_size[n] = out;
    }
    let mut all: Vec<Ordinal> = by_size.into_iter().flatten().map(Ordinal).collect();
    all.sort();
    all
}

fn extend_weakly_decreasing(
    by_size: &[Vec<List>],
    remaining: usize,
    upper: Option<&List>,
    prefix: &mut Vec<List>,
    out: &mut Vec<List>,
) {
    if remaining == 0 {
        out.push(List::new(prefix.clone()));
        return;
    }
    for size in 1..=remaining {
        for candidate in &by_size[size] {
            if upper.is_some_and(|u| candidate.compare(u) == Ordering::Greater) {
                continue;
            }
            prefix.push(candidate.clone());
            let last = prefix.last().cloned();
            extend_weakly_decreasing(by_size, remaining - size, last.as_ref(), prefix, out);
            prefix.pop();
        }
    }
}
