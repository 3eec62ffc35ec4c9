//! Deterministic enumeration of countable terms.
//!
//! Every element has a fixed index:
//!
//! * `fin(n)`, `w`: `k ↦ k`; `w*`: `-k ↦ k - 1`.
//! * `Z`: `0, 1, -1, 2, -2, …`.
//! * `Q`: `0`, then `+c_m, -c_m` for the Calkin–Wilf sequence
//!   `c_1 = 1, c_2 = 1/2, c_3 = 2, c_4 = 1/3, …`.
//! * sums: round-robin over the parts, skipping exhausted finite parts.
//! * `t*2`: `(x, b) ↦ 2·index(x) + b`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elem::{validate, Bit, Elem};
use crate::error::{Error, Result};
use crate::term::OrderTerm;

/// Indices whose Calkin–Wilf path is longer than this many bits are refused.
pub const MAX_INDEX_BITS: u64 = 1 << 16;

/// Index of `e` in the enumeration of `t`.
pub fn index_of(t: &OrderTerm, e: &Elem) -> Result<BigUint> {
    validate(t, e)?;
    index_raw(t, e)
}

/// The element with index `n`, or `None` past the end of a finite carrier.
pub fn nth(t: &OrderTerm, n: &BigUint) -> Result<Option<Elem>> {
    t.require_concrete()?;
    Ok(nth_raw(t, n))
}

/// Stream of all elements of a concrete term, each exactly once.
pub fn enumerate(t: &OrderTerm) -> Result<Enumeration> {
    t.require_concrete()?;
    Ok(Enumeration {
        term: t.clone(),
        next: BigUint::zero(),
        done: false,
    })
}

/// Exclusively owned cursor over [`enumerate`]'s stream.
#[derive(Debug, Clone)]
pub struct Enumeration {
    term: OrderTerm,
    next: BigUint,
    done: bool,
}

impl Enumeration {
    /// Index of the element the next call to `next` returns.
    pub fn position(&self) -> &BigUint {
        &self.next
    }
}

impl Iterator for Enumeration {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.done {
            return None;
        }
        match nth_raw(&self.term, &self.next) {
            Some(e) => {
                self.next += 1u32;
                Some(e)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

pub(crate) fn nth_raw(t: &OrderTerm, n: &BigUint) -> Option<Elem> {
    match t {
        OrderTerm::Finite(size) => {
            let k = n.to_u64()?;
            (k < *size).then_some(Elem::Nat(k))
        }
        OrderTerm::Omega => n.to_u64().map(Elem::Nat),
        OrderTerm::OmegaStar => {
            let k = n.to_i64()?.checked_add(1)?;
            Some(Elem::NegInt(-k))
        }
        OrderTerm::Ints => {
            if n.is_zero() {
                return Some(Elem::Int(0));
            }
            let (half, odd) = n.div_rem(&BigUint::from(2u32));
            if odd.is_one() {
                (half + 1u32).to_i64().map(Elem::Int)
            } else {
                half.to_i64().map(|k| Elem::Int(-k))
            }
        }
        OrderTerm::Rats => {
            if n.is_zero() {
                return Some(Elem::Rat(BigRational::zero()));
            }
            let m = (n + 1u32) >> 1u32;
            let q = calkin_wilf(&m);
            Some(Elem::Rat(if n.is_odd() { q } else { -q }))
        }
        OrderTerm::Reals => None,
        OrderTerm::Sum(parts) => {
            let (i, round) = sum_position(parts, n)?;
            nth_raw(&parts[i], &round).map(|e| Elem::in_sum(i, e))
        }
        OrderTerm::Times2(base) => {
            let (half, bit) = n.div_rem(&BigUint::from(2u32));
            let bit = if bit.is_zero() { Bit::Zero } else { Bit::One };
            nth_raw(base, &half).map(|e| Elem::pair(e, bit))
        }
    }
}

pub(crate) fn index_raw(t: &OrderTerm, e: &Elem) -> Result<BigUint> {
    Ok(match (t, e) {
        (_, Elem::Nat(k)) => BigUint::from(*k),
        (_, Elem::NegInt(k)) => BigUint::from(k.unsigned_abs() - 1),
        (_, Elem::Int(k)) => {
            let abs = BigUint::from(k.unsigned_abs());
            match k.signum() {
                1 => (abs << 1u32) - 1u32,
                -1 => abs << 1u32,
                _ => BigUint::zero(),
            }
        }
        (_, Elem::Rat(q)) => {
            if q.is_zero() {
                BigUint::zero()
            } else {
                let m = calkin_wilf_index(q).ok_or_else(|| Error::IndexTooLarge(e.to_string()))?;
                if q.is_positive() {
                    (m << 1u32) - 1u32
                } else {
                    m << 1u32
                }
            }
        }
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => {
            let round = index_raw(&parts[*i], inner)?;
            let sizes: Vec<_> = parts.iter().map(OrderTerm::finite_size).collect();
            let before_round = rounds_total(&sizes, &round);
            let earlier = sizes[..*i]
                .iter()
                .filter(|s| s.as_ref().is_none_or(|s| *s > round))
                .count();
            before_round + BigUint::from(earlier)
        }
        (OrderTerm::Times2(base), Elem::Pair(inner, bit)) => {
            (index_raw(base, inner)? << 1u32) + BigUint::from(bit.as_u8())
        }
        _ => {
            return Err(Error::InvalidElement {
                term: t.to_string(),
                elem: e.to_string(),
            })
        }
    })
}

/// Number of elements emitted by the first `rounds` rounds of a round-robin.
fn rounds_total(sizes: &[Option<BigUint>], rounds: &BigUint) -> BigUint {
    sizes
        .iter()
        .map(|s| match s {
            Some(s) if s < rounds => s.clone(),
            _ => rounds.clone(),
        })
        .sum()
}

/// `(part, index within part)` of the `n`-th element of a round-robin sum.
fn sum_position(parts: &[OrderTerm], n: &BigUint) -> Option<(usize, BigUint)> {
    let sizes: Vec<_> = parts.iter().map(OrderTerm::finite_size).collect();
    if sizes.iter().all(Option::is_some) {
        let total: BigUint = sizes.iter().flatten().sum();
        if *n >= total {
            return None;
        }
    }
    // Largest round r with rounds_total(r) <= n.
    let mut lo = BigUint::zero();
    let mut hi = n.clone();
    while lo < hi {
        let mid: BigUint = (&lo + &hi + 1u32) >> 1u32;
        if rounds_total(&sizes, &mid) <= *n {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    let offset = (n - rounds_total(&sizes, &lo)).to_usize()?;
    let part = sizes
        .iter()
        .enumerate()
        .filter(|(_, s)| s.as_ref().is_none_or(|s| *s > lo))
        .nth(offset)?
        .0;
    Some((part, lo))
}

/// The `m`-th term (`m ≥ 1`) of the Calkin–Wilf sequence.
fn calkin_wilf(m: &BigUint) -> BigRational {
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let bits = m.bits();
    for i in (0..bits.saturating_sub(1)).rev() {
        if m.bit(i) {
            a += &b;
        } else {
            b += &a;
        }
    }
    BigRational::new(a, b)
}

/// Position of `|q|` in the Calkin–Wilf sequence. Runs of equal path bits
/// are taken a whole quotient at a time, Euclid style.
fn calkin_wilf_index(q: &BigRational) -> Option<BigUint> {
    let mut a = q.numer().abs().to_biguint()?;
    let mut b = q.denom().to_biguint()?;
    // (bit, run length) from the node up to the root.
    let mut runs: Vec<(bool, BigUint)> = Vec::new();
    let mut total = BigUint::zero();
    while a != b {
        let (bit, run) = if a < b {
            let k = (&b - 1u32) / &a;
            b -= &k * &a;
            (false, k)
        } else {
            let k = (&a - 1u32) / &b;
            a -= &k * &b;
            (true, k)
        };
        total += &run;
        if total > BigUint::from(MAX_INDEX_BITS) {
            return None;
        }
        runs.push((bit, run));
    }
    let mut index = BigUint::one();
    for (bit, run) in runs.into_iter().rev() {
        let run = run.to_usize()?;
        index <<= run;
        if bit {
            index += (BigUint::one() << run) - 1u32;
        }
    }
    Some(index)
}
