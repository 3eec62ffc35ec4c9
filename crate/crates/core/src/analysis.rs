//! Structural classification of terms: jumps, separability, embeddability
//! into the reals.
//!
//! A jump is a pair `x < y` whose open interval is empty. A term embeds
//! into the reals exactly when it is separable and has at most countably
//! many jumps; in that case it is also left and right separable.
//!
//! The `×2` rules are the ones the recursion below needs beyond the atoms:
//! `b*2` has one jump `(x,0) < (x,1)` per point of `b` plus one jump
//! `(x,1) < (y,0)` per jump `x < y` of `b`, and it is separable iff `b` is
//! separable with countably many jumps (each jump `x < y` of `b` makes
//! `(x,1)` the only point between `(x,0)` and `(y,0)`).

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::cardinal::CardinalClass;
use crate::elem::{validate, Elem};
use crate::enumerate::{enumerate, Enumeration};
use crate::error::{Error, Result};
use crate::order::{bounds, max_raw, min_raw, pred_raw, succ_raw};
use crate::term::OrderTerm;

pub fn cardinality(t: &OrderTerm) -> CardinalClass {
    match t {
        OrderTerm::Finite(n) => CardinalClass::fin(*n),
        OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Ints | OrderTerm::Rats => {
            CardinalClass::Aleph0
        }
        OrderTerm::Reals => CardinalClass::Continuum,
        OrderTerm::Sum(parts) => parts.iter().map(cardinality).sum(),
        OrderTerm::Times2(base) => cardinality(base).doubled(),
    }
}

pub fn jump_cardinality(t: &OrderTerm) -> CardinalClass {
    match t {
        OrderTerm::Finite(n) => CardinalClass::fin(n.saturating_sub(1)),
        OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Ints => CardinalClass::Aleph0,
        OrderTerm::Rats | OrderTerm::Reals => CardinalClass::zero(),
        OrderTerm::Sum(parts) => {
            let inner: CardinalClass = parts.iter().map(jump_cardinality).sum();
            let nonempty: Vec<_> = parts.iter().filter(|p| !p.is_empty()).collect();
            let boundaries = nonempty
                .windows(2)
                .filter(|w| max_raw(w[0]).is_some() && min_raw(w[1]).is_some())
                .count();
            inner + CardinalClass::fin(boundaries as u64)
        }
        OrderTerm::Times2(base) => cardinality(base) + jump_cardinality(base),
    }
}

pub fn is_separable(t: &OrderTerm) -> bool {
    match t {
        OrderTerm::Sum(parts) => parts.iter().all(is_separable),
        OrderTerm::Times2(base) => is_separable(base) && jump_cardinality(base).is_countable(),
        _ => true,
    }
}

/// Separable with at most countably many jumps.
pub fn embeds_into_reals(t: &OrderTerm) -> bool {
    is_separable(t) && jump_cardinality(t).is_countable()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub cardinality: CardinalClass,
    pub jump_cardinality: CardinalClass,
    pub separable: bool,
    pub left_separable: bool,
    pub right_separable: bool,
    pub embeds_into_reals: bool,
    pub has_min: bool,
    pub has_max: bool,
}

pub fn classify(t: &OrderTerm) -> ClassReport {
    let separable = is_separable(t);
    let jump_cardinality = jump_cardinality(t);
    let embeds = separable && jump_cardinality.is_countable();
    let b = bounds(t);
    ClassReport {
        cardinality: cardinality(t),
        jump_cardinality,
        separable,
        left_separable: embeds,
        right_separable: embeds,
        embeds_into_reals: embeds,
        has_min: b.has_min,
        has_max: b.has_max,
    }
}

/// A pair `left < right` with nothing strictly between.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jump {
    pub left: Elem,
    pub right: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpRelations {
    /// `x` is the left partner of some jump.
    #[serde(rename = "in_J_left")]
    pub in_j_left: bool,
    /// `x` is the right partner of some jump.
    #[serde(rename = "in_J_right")]
    pub in_j_right: bool,
    /// Whether `x` and `y` form a jump in either order.
    #[serde(rename = "J_related", skip_serializing_if = "Option::is_none")]
    pub j_related: Option<bool>,
}

pub fn jump_relations(t: &OrderTerm, x: &Elem, y: Option<&Elem>) -> Result<JumpRelations> {
    validate(t, x)?;
    if let Some(y) = y {
        validate(t, y)?;
    }
    let succ = succ_raw(t, x);
    let pred = pred_raw(t, x);
    let j_related = y.map(|y| succ.as_ref() == Some(y) || pred.as_ref() == Some(y));
    Ok(JumpRelations {
        in_j_left: succ.is_some(),
        in_j_right: pred.is_some(),
        j_related,
    })
}

/// Stream of all jumps, each once, in the order of their left partners'
/// enumeration. Finite jump counts end the stream.
pub fn jumps(t: &OrderTerm) -> Result<Jumps> {
    let count = jump_cardinality(t);
    if !count.is_countable() {
        return Err(Error::UncountableJumps(t.to_string()));
    }
    Ok(Jumps {
        term: t.clone(),
        elems: enumerate(t)?,
        remaining: count.as_finite().cloned(),
    })
}

#[derive(Debug, Clone)]
pub struct Jumps {
    term: OrderTerm,
    elems: Enumeration,
    remaining: Option<BigUint>,
}

impl Iterator for Jumps {
    type Item = Jump;

    fn next(&mut self) -> Option<Jump> {
        if self.remaining.as_ref().is_some_and(Zero::is_zero) {
            return None;
        }
        for left in self.elems.by_ref() {
            if let Some(right) = succ_raw(&self.term, &left) {
                if let Some(r) = self.remaining.as_mut() {
                    *r -= 1u32;
                }
                return Some(Jump { left, right });
            }
        }
        None
    }
}
