//! Structural terms describing linear orders.
//!
//! A term is built from the atoms `fin(n)`, `w` (ω), `w*` (ω reversed),
//! `Z`, `Q` and `R`, finite ordered sums `a + b + …`, and the lexicographic
//! product with a two-point order, written as the postfix `*2`.
//!
//! ```text
//! sum  := prod ("+" prod)*
//! prod := atom ("*2")*
//! atom := "fin(" nat ")" | "Z" | "Q" | "R" | "w" | "w*" | "(" sum ")"
//! ```
//!
//! `omega` and `omega*` are accepted for `w` and `w*`. Because `w*` is an
//! atom, `w*2` reads as ω×2 while `w**2` is ω*×2. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderTerm {
    Finite(u64),
    Omega,
    OmegaStar,
    Ints,
    Rats,
    /// Classification only: element-level operations reject it.
    Reals,
    Sum(Vec<OrderTerm>),
    Times2(Box<OrderTerm>),
}

impl OrderTerm {
    /// Builds a normalized sum.
    pub fn sum(parts: impl IntoIterator<Item = OrderTerm>) -> OrderTerm {
        OrderTerm::Sum(parts.into_iter().collect()).normalize()
    }

    /// Builds a normalized `base * 2`.
    pub fn times2(base: OrderTerm) -> OrderTerm {
        OrderTerm::Times2(Box::new(base)).normalize()
    }

    /// Removes empty parts from sums and collapses degenerate sums. Nested
    /// sums are kept as they are since element addresses depend on them.
    pub fn normalize(&self) -> OrderTerm {
        match self {
            OrderTerm::Sum(parts) => {
                let mut kept: Vec<OrderTerm> = parts
                    .iter()
                    .map(OrderTerm::normalize)
                    .filter(|p| *p != OrderTerm::Finite(0))
                    .collect();
                match kept.len() {
                    0 => OrderTerm::Finite(0),
                    1 => kept.pop().unwrap(),
                    _ => OrderTerm::Sum(kept),
                }
            }
            OrderTerm::Times2(base) => match base.normalize() {
                OrderTerm::Finite(0) => OrderTerm::Finite(0),
                b => OrderTerm::Times2(Box::new(b)),
            },
            atom => atom.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// True when the term mentions `R` anywhere.
    pub fn is_symbolic(&self) -> bool {
        match self {
            OrderTerm::Reals => true,
            OrderTerm::Sum(parts) => parts.iter().any(OrderTerm::is_symbolic),
            OrderTerm::Times2(base) => base.is_symbolic(),
            _ => false,
        }
    }

    /// Fails with [`Error::SymbolicTerm`] when the term mentions `R`.
    pub fn require_concrete(&self) -> Result<()> {
        if self.is_symbolic() {
            Err(Error::SymbolicTerm(self.to_string()))
        } else {
            Ok(())
        }
    }

    /// Height of the term tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            OrderTerm::Sum(parts) => 1 + parts.iter().map(OrderTerm::depth).max().unwrap_or(0),
            OrderTerm::Times2(base) => 1 + base.depth(),
            _ => 0,
        }
    }

    /// Number of points when the carrier is finite.
    pub fn finite_size(&self) -> Option<BigUint> {
        match self {
            OrderTerm::Finite(n) => Some(BigUint::from(*n)),
            OrderTerm::Sum(parts) => parts.iter().map(OrderTerm::finite_size).sum(),
            OrderTerm::Times2(base) => base.finite_size().map(|n| n << 1u32),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            OrderTerm::Finite(n) => *n == 0,
            OrderTerm::Sum(parts) => parts.iter().all(OrderTerm::is_empty),
            OrderTerm::Times2(base) => base.is_empty(),
            _ => false,
        }
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Finite(n) => write!(f, "fin({n})"),
            OrderTerm::Omega => f.write_str("w"),
            OrderTerm::OmegaStar => f.write_str("w*"),
            OrderTerm::Ints => f.write_str("Z"),
            OrderTerm::Rats => f.write_str("Q"),
            OrderTerm::Reals => f.write_str("R"),
            OrderTerm::Sum(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    match part {
                        OrderTerm::Sum(_) => write!(f, "({part})")?,
                        _ => write!(f, "{part}")?,
                    }
                }
                Ok(())
            }
            OrderTerm::Times2(base) => match **base {
                OrderTerm::Sum(_) => write!(f, "({base})*2"),
                _ => write!(f, "{base}*2"),
            },
        }
    }
}

impl FromStr for OrderTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// Parses and normalizes a term.
pub fn parse_term(text: &str) -> Result<OrderTerm> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let term = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(term.normalize())
}

/// Canonical text of a term; inverse of [`parse_term`] on normalized terms.
pub fn format_term(term: &OrderTerm) -> String {
    term.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Next non-whitespace byte after `pos + offset` without consuming.
    fn peek_after(&self, offset: usize) -> Option<u8> {
        self.src[(self.pos + offset).min(self.src.len())..]
            .iter()
            .copied()
            .find(|b| !b.is_ascii_whitespace())
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn sum(&mut self) -> Result<OrderTerm> {
        let mut parts = vec![self.prod()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.push(self.prod()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            OrderTerm::Sum(parts)
        })
    }

    fn prod(&mut self) -> Result<OrderTerm> {
        let mut term = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b'2') {
                return Err(self.error("expected `2` after `*`"));
            }
            self.pos += 1;
            term = OrderTerm::Times2(Box::new(term));
        }
        Ok(term)
    }

    fn omega(&mut self) -> OrderTerm {
        // `w*` is ω reversed unless the star starts a `*2` suffix.
        if self.src.get(self.pos) == Some(&b'*') && self.peek_after(1) != Some(b'2') {
            self.pos += 1;
            OrderTerm::OmegaStar
        } else {
            OrderTerm::Omega
        }
    }

    fn atom(&mut self) -> Result<OrderTerm> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'Z') => {
                self.pos += 1;
                Ok(OrderTerm::Ints)
            }
            Some(b'Q') => {
                self.pos += 1;
                Ok(OrderTerm::Rats)
            }
            Some(b'R') => {
                self.pos += 1;
                Ok(OrderTerm::Reals)
            }
            _ if self.eat_keyword("fin(") => {
                let n = self.natural()?;
                self.expect(b')')?;
                Ok(OrderTerm::Finite(n))
            }
            _ if self.eat_keyword("omega") || self.eat_keyword("w") => Ok(self.omega()),
            Some(_) => Err(self.error("expected an atom: fin(n), Z, Q, R, w, w* or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Overflow { pos: start })
    }
}
