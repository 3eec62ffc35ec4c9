//! The order relation on elements, endpoints and immediate neighbors.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::elem::{validate, Bit, Elem};
use crate::error::Result;
use crate::term::OrderTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Succ,
    Pred,
}

/// Compares two points of a concrete term.
pub fn compare(t: &OrderTerm, x: &Elem, y: &Elem) -> Result<Ordering> {
    validate(t, x)?;
    validate(t, y)?;
    Ok(cmp_raw(t, x, y))
}

/// Comparison without validation. Sum points compare by part index first,
/// `×2` points by their inner point first and then by bit.
pub(crate) fn cmp_raw(t: &OrderTerm, x: &Elem, y: &Elem) -> Ordering {
    match (t, x, y) {
        (_, Elem::Nat(a), Elem::Nat(b)) => a.cmp(b),
        (_, Elem::NegInt(a), Elem::NegInt(b)) | (_, Elem::Int(a), Elem::Int(b)) => a.cmp(b),
        (_, Elem::Rat(a), Elem::Rat(b)) => a.cmp(b),
        (OrderTerm::Sum(parts), Elem::InSum(i, a), Elem::InSum(j, b)) => {
            i.cmp(j).then_with(|| cmp_raw(&parts[*i], a, b))
        }
        (OrderTerm::Times2(base), Elem::Pair(a, p), Elem::Pair(b, q)) => {
            cmp_raw(base, a, b).then(p.cmp(q))
        }
        _ => panic!("cmp_raw on elements `{x}`, `{y}` of the wrong shape for `{t}`"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub has_min: bool,
    pub has_max: bool,
    /// Present only for concrete terms.
    pub min: Option<Elem>,
    pub max: Option<Elem>,
}

pub fn bounds(t: &OrderTerm) -> Bounds {
    let min = min_raw(t);
    let max = max_raw(t);
    let concrete = !t.is_symbolic();
    Bounds {
        has_min: min.is_some(),
        has_max: max.is_some(),
        min: min.filter(|_| concrete),
        max: max.filter(|_| concrete),
    }
}

pub(crate) fn min_raw(t: &OrderTerm) -> Option<Elem> {
    match t {
        OrderTerm::Finite(n) => (*n > 0).then_some(Elem::Nat(0)),
        OrderTerm::Omega => Some(Elem::Nat(0)),
        OrderTerm::OmegaStar | OrderTerm::Ints | OrderTerm::Rats | OrderTerm::Reals => None,
        OrderTerm::Sum(parts) => {
            let (i, part) = parts.iter().enumerate().find(|(_, p)| !p.is_empty())?;
            min_raw(part).map(|m| Elem::in_sum(i, m))
        }
        OrderTerm::Times2(base) => min_raw(base).map(|m| Elem::pair(m, Bit::Zero)),
    }
}

pub(crate) fn max_raw(t: &OrderTerm) -> Option<Elem> {
    match t {
        OrderTerm::Finite(n) => (*n > 0).then(|| Elem::Nat(n - 1)),
        OrderTerm::OmegaStar => Some(Elem::NegInt(-1)),
        OrderTerm::Omega | OrderTerm::Ints | OrderTerm::Rats | OrderTerm::Reals => None,
        OrderTerm::Sum(parts) => {
            let (i, part) = parts.iter().enumerate().rev().find(|(_, p)| !p.is_empty())?;
            max_raw(part).map(|m| Elem::in_sum(i, m))
        }
        OrderTerm::Times2(base) => max_raw(base).map(|m| Elem::pair(m, Bit::One)),
    }
}

/// Immediate successor or predecessor of `x`, when it exists.
pub fn neighbor(t: &OrderTerm, x: &Elem, side: Side) -> Result<Option<Elem>> {
    validate(t, x)?;
    Ok(neighbor_raw(t, x, side))
}

/// Works on points of `R`-terms too; points of `R` have no neighbors.
pub(crate) fn neighbor_raw(t: &OrderTerm, x: &Elem, side: Side) -> Option<Elem> {
    match side {
        Side::Succ => succ_raw(t, x),
        Side::Pred => pred_raw(t, x),
    }
}

pub(crate) fn succ_raw(t: &OrderTerm, x: &Elem) -> Option<Elem> {
    match (t, x) {
        (OrderTerm::Finite(n), Elem::Nat(k)) => (k + 1 < *n).then(|| Elem::Nat(k + 1)),
        (OrderTerm::Omega, Elem::Nat(k)) => k.checked_add(1).map(Elem::Nat),
        (OrderTerm::OmegaStar, Elem::NegInt(k)) => (*k < -1).then(|| Elem::NegInt(k + 1)),
        (OrderTerm::Ints, Elem::Int(k)) => k.checked_add(1).map(Elem::Int),
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => {
            if let Some(s) = succ_raw(&parts[*i], inner) {
                return Some(Elem::in_sum(*i, s));
            }
            if max_raw(&parts[*i]).as_ref() != Some(&**inner) {
                return None;
            }
            let (j, next) = parts
                .iter()
                .enumerate()
                .skip(i + 1)
                .find(|(_, p)| !p.is_empty())?;
            min_raw(next).map(|m| Elem::in_sum(j, m))
        }
        (OrderTerm::Times2(_), Elem::Pair(inner, Bit::Zero)) => {
            Some(Elem::pair((**inner).clone(), Bit::One))
        }
        (OrderTerm::Times2(base), Elem::Pair(inner, Bit::One)) => {
            succ_raw(base, inner).map(|s| Elem::pair(s, Bit::Zero))
        }
        _ => None,
    }
}

pub(crate) fn pred_raw(t: &OrderTerm, x: &Elem) -> Option<Elem> {
    match (t, x) {
        (OrderTerm::Finite(_) | OrderTerm::Omega, Elem::Nat(k)) => k.checked_sub(1).map(Elem::Nat),
        (OrderTerm::OmegaStar, Elem::NegInt(k)) => k.checked_sub(1).map(Elem::NegInt),
        (OrderTerm::Ints, Elem::Int(k)) => k.checked_sub(1).map(Elem::Int),
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => {
            if let Some(p) = pred_raw(&parts[*i], inner) {
                return Some(Elem::in_sum(*i, p));
            }
            if min_raw(&parts[*i]).as_ref() != Some(&**inner) {
                return None;
            }
            let (j, prev) = parts[..*i]
                .iter()
                .enumerate()
                .rev()
                .find(|(_, p)| !p.is_empty())?;
            max_raw(prev).map(|m| Elem::in_sum(j, m))
        }
        (OrderTerm::Times2(_), Elem::Pair(inner, Bit::One)) => {
            Some(Elem::pair((**inner).clone(), Bit::Zero))
        }
        (OrderTerm::Times2(base), Elem::Pair(inner, Bit::Zero)) => {
            pred_raw(base, inner).map(|p| Elem::pair(p, Bit::One))
        }
        _ => None,
    }
}

/// Some point strictly above `x`, if any.
pub(crate) fn above_raw(t: &OrderTerm, x: &Elem) -> Option<Elem> {
    match (t, x) {
        (OrderTerm::Rats, Elem::Rat(q)) => Some(Elem::Rat(q + BigRational::one())),
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => above_raw(&parts[*i], inner)
            .map(|a| Elem::in_sum(*i, a))
            .or_else(|| first_in_parts(parts, i + 1..parts.len())),
        (OrderTerm::Times2(base), Elem::Pair(inner, Bit::One)) => {
            above_raw(base, inner).map(|a| Elem::pair(a, Bit::Zero))
        }
        _ => succ_raw(t, x),
    }
}

/// Some point strictly below `x`, if any.
pub(crate) fn below_raw(t: &OrderTerm, x: &Elem) -> Option<Elem> {
    match (t, x) {
        (OrderTerm::Rats, Elem::Rat(q)) => Some(Elem::Rat(q - BigRational::one())),
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => below_raw(&parts[*i], inner)
            .map(|b| Elem::in_sum(*i, b))
            .or_else(|| first_in_parts(parts, 0..*i)),
        (OrderTerm::Times2(base), Elem::Pair(inner, Bit::Zero)) => {
            below_raw(base, inner).map(|b| Elem::pair(b, Bit::One))
        }
        _ => pred_raw(t, x),
    }
}

fn first_in_parts(parts: &[OrderTerm], range: std::ops::Range<usize>) -> Option<Elem> {
    range.into_iter().find_map(|j| {
        crate::enumerate::nth_raw(&parts[j], &BigUint::zero()).map(|e| Elem::in_sum(j, e))
    })
}

/// Some point strictly between `x < y`, if the open interval is nonempty.
pub(crate) fn between_raw(t: &OrderTerm, x: &Elem, y: &Elem) -> Option<Elem> {
    match (t, x, y) {
        (_, Elem::Nat(a), Elem::Nat(b)) => (b - a >= 2).then(|| Elem::Nat(a + 1)),
        (_, Elem::NegInt(a), Elem::NegInt(b)) => (b - a >= 2).then(|| Elem::NegInt(a + 1)),
        (_, Elem::Int(a), Elem::Int(b)) => {
            ((*b as i128) - (*a as i128) >= 2).then(|| Elem::Int(a + 1))
        }
        (_, Elem::Rat(a), Elem::Rat(b)) => {
            Some(Elem::Rat((a + b) / BigRational::from_integer(2.into())))
        }
        (OrderTerm::Sum(parts), Elem::InSum(i, a), Elem::InSum(j, b)) => {
            if i == j {
                return between_raw(&parts[*i], a, b).map(|z| Elem::in_sum(*i, z));
            }
            above_raw(&parts[*i], a)
                .map(|z| Elem::in_sum(*i, z))
                .or_else(|| first_in_parts(parts, i + 1..*j))
                .or_else(|| below_raw(&parts[*j], b).map(|z| Elem::in_sum(*j, z)))
        }
        (OrderTerm::Times2(base), Elem::Pair(a, p), Elem::Pair(b, q)) => {
            if a == b {
                None
            } else if *p == Bit::Zero {
                Some(Elem::pair((**a).clone(), Bit::One))
            } else if *q == Bit::One {
                Some(Elem::pair((**b).clone(), Bit::Zero))
            } else {
                between_raw(base, a, b).map(|z| Elem::pair(z, Bit::Zero))
            }
        }
        _ => None,
    }
}
