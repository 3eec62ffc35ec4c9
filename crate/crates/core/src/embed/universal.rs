//! Embeddings of countable terms into `R×2` and `R`.
//!
//! Two constructions live here. [`naive_e1`] is the supremum map
//! `x ↦ sup { i(d) : d ∈ D, d ≤ x }` for a rational embedding `i` of a
//! dense set `D`, paired with [`jump_bit`]. It is reproduced as stated and
//! can collide (see [`crate::embed::collision_fixture`]).
//!
//! The default embedding replaces `i(d_n)` by the weight `2^-n` and sums:
//! `f(x) = Σ { 2^-n : d_n ≤ x }`. For `x < y`, `f(y) - f(x)` is the total
//! weight of `(x, y] ∩ D`, so a member `d_n` there separates the two by at
//! least `2^-n`. When `(x, y] ∩ D` is empty, density of `D` forces
//! `(x, y)` to be a jump with `y ∉ D` and `x` either in `D` or without a
//! predecessor; the reals coincide and the bits are `0 < 1`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis::{embeds_into_reals, Jump};
use crate::dense::{
    both_sided_dense, canonical_dense, check_dense_sampled, DenseSet, DensityMode, DensityVerdict,
    SampleBudget,
};
use crate::elem::{validate, Bit, Elem};
use crate::embed::rational::RationalEmbedding;
use crate::embed::staged::{SplitPoint, StagedReal};
use crate::error::{Error, Result};
use crate::order::{cmp_raw, pred_raw};
use crate::term::OrderTerm;

/// Value of the supremum map at a finite stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveValue {
    /// `max { i(d) : d among the first `stage` members, d ≤ x }`.
    pub value: BigRational,
    /// Least image of an enumerated member above `x`, if any; `None` means
    /// no upper bound is certified at this stage.
    pub upper_bound: Option<BigRational>,
    pub stage: u64,
}

/// The supremum map at `stage`: places the first `stage` members of `D`
/// (endpoints added) into `i` and takes the largest image at or below `x`.
pub fn naive_e1(
    t: &OrderTerm,
    d: &DenseSet,
    i: &mut RationalEmbedding,
    x: &Elem,
    stage: u64,
) -> Result<NaiveValue> {
    validate(t, x)?;
    let d = d.with_endpoints();
    let prefix: Vec<Elem> = d.iter()?.take(stage as usize).collect();
    let mut value: Option<BigRational> = None;
    let mut upper_bound: Option<BigRational> = None;
    for m in &prefix {
        let image = i.place(m)?;
        if cmp_raw(t, m, x).is_le() {
            value = Some(value.map_or(image.clone(), |v| v.max(image)));
        } else {
            upper_bound = Some(upper_bound.map_or(image.clone(), |u| u.min(image)));
        }
    }
    let value = value.ok_or_else(|| Error::NoLowerWitness(x.to_string()))?;
    Ok(NaiveValue {
        value,
        upper_bound,
        stage,
    })
}

/// 1 iff `x ∉ D` and `x` has an immediate predecessor.
pub fn jump_bit(t: &OrderTerm, d: &DenseSet, x: &Elem) -> Result<Bit> {
    validate(t, x)?;
    Ok(bit_raw(t, d, x))
}

fn bit_raw(t: &OrderTerm, d: &DenseSet, x: &Elem) -> Bit {
    if !d.contains(x) && pred_raw(t, x).is_some() {
        Bit::One
    } else {
        Bit::Zero
    }
}

/// How a certified comparison was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Identical,
    /// `separator ∈ (lo, hi] ∩ D` has index `stage` in `D`'s enumeration,
    /// so the reals differ by at least `2^-stage`.
    Separated {
        separator: Elem,
        #[serde(serialize_with = "crate::serde_util::display")]
        stage: BigUint,
    },
    /// Equal reals, decided by the bits.
    Bits { lo_bit: u8, hi_bit: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedOrdering {
    #[serde(serialize_with = "ser_ordering")]
    pub ordering: Ordering,
    pub witness: Witness,
}

fn ser_ordering<S: serde::Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
        Ordering::Greater => "GT",
    })
}

impl CertifiedOrdering {
    /// `2^-stage` lower bound on the gap between the reals, when separated.
    pub fn gap_exponent(&self) -> Option<&BigUint> {
        match &self.witness {
            Witness::Separated { stage, .. } => Some(stage),
            _ => None,
        }
    }
}

/// A member of `(lo, hi] ∩ D` for `lo < hi`, preferring `hi` itself.
fn separator(d: &DenseSet, lo: &Elem, hi: &Elem) -> Option<Elem> {
    if d.contains(hi) {
        Some(hi.clone())
    } else {
        d.member_between(lo, hi)
    }
}

/// The weighted-sum embedding into `R×2`.
#[derive(Debug, Clone)]
pub struct UniversalEmbedding {
    term: OrderTerm,
    dense: Arc<DenseSet>,
    density: DensityVerdict,
}

/// Builds the weighted-sum embedding of a countable term. `D` defaults to
/// the canonical dense set; endpoints are added and density is checked
/// with `sample` before anything is embedded.
pub fn universal_embed(
    t: &OrderTerm,
    d: Option<DenseSet>,
    sample: SampleBudget,
) -> Result<UniversalEmbedding> {
    t.require_concrete()?;
    let d = match d {
        Some(d) => d,
        None => canonical_dense(t)?,
    }
    .with_endpoints();
    let density = check_dense_sampled(t, &d, sample, DensityMode::Dense)?;
    if let DensityVerdict::Counterexample { lo, hi } = &density {
        return Err(Error::NotDense {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(UniversalEmbedding {
        term: t.clone(),
        dense: Arc::new(d),
        density,
    })
}

impl UniversalEmbedding {
    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    pub fn dense(&self) -> &DenseSet {
        &self.dense
    }

    /// Evidence from the density check run at construction.
    pub fn density(&self) -> &DensityVerdict {
        &self.density
    }

    pub fn image(&self, x: &Elem) -> Result<SplitPoint> {
        validate(&self.term, x)?;
        Ok(SplitPoint {
            real: StagedReal::new(self.dense.clone(), x.clone()),
            bit: bit_raw(&self.term, &self.dense, x),
        })
    }

    pub fn bit(&self, x: &Elem) -> Result<Bit> {
        jump_bit(&self.term, &self.dense, x)
    }

    /// Decides the order of `e(x)` and `e(y)` in `R×2` with a certificate.
    pub fn certified_compare(&self, x: &Elem, y: &Elem) -> Result<CertifiedOrdering> {
        certified(&self.term, &self.dense, x, y, true)
    }
}

fn certified(t: &OrderTerm, d: &DenseSet, x: &Elem, y: &Elem, bits: bool) -> Result<CertifiedOrdering> {
    validate(t, x)?;
    validate(t, y)?;
    let ord = cmp_raw(t, x, y);
    let (lo, hi) = match ord {
        Ordering::Equal => {
            return Ok(CertifiedOrdering {
                ordering: Ordering::Equal,
                witness: Witness::Identical,
            })
        }
        Ordering::Less => (x, y),
        Ordering::Greater => (y, x),
    };
    let not_dense = || Error::NotDense {
        lo: lo.to_string(),
        hi: hi.to_string(),
    };
    let witness = match separator(d, lo, hi) {
        Some(s) => {
            let stage = d.index_of(&s)?.expect("separator is a member");
            Witness::Separated { separator: s, stage }
        }
        None if bits => {
            let (lo_bit, hi_bit) = (bit_raw(t, d, lo), bit_raw(t, d, hi));
            if lo_bit >= hi_bit {
                return Err(not_dense());
            }
            Witness::Bits {
                lo_bit: lo_bit.as_u8(),
                hi_bit: hi_bit.as_u8(),
            }
        }
        None => return Err(not_dense()),
    };
    Ok(CertifiedOrdering {
        ordering: ord,
        witness,
    })
}

/// The weighted-sum embedding into `R`, over the union of the left and
/// right dense sets so that every jump partner is weighted.
#[derive(Debug, Clone)]
pub struct RealEmbedding {
    term: OrderTerm,
    dense: Arc<DenseSet>,
}

pub fn embed_to_reals(t: &OrderTerm) -> Result<RealEmbedding> {
    if !embeds_into_reals(t) {
        return Err(Error::NotEmbeddable(t.to_string()));
    }
    t.require_concrete()?;
    Ok(RealEmbedding {
        term: t.clone(),
        dense: Arc::new(both_sided_dense(t)?),
    })
}

impl RealEmbedding {
    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    pub fn dense(&self) -> &DenseSet {
        &self.dense
    }

    pub fn image(&self, x: &Elem) -> Result<StagedReal> {
        validate(&self.term, x)?;
        Ok(StagedReal::new(self.dense.clone(), x.clone()))
    }

    /// Always separates distinct points; errors signal a broken dense set.
    pub fn certified_compare(&self, x: &Elem, y: &Elem) -> Result<CertifiedOrdering> {
        certified(&self.term, &self.dense, x, y, false)
    }
}

/// A rational strictly inside the image gap of a jump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpWitness {
    pub rational: BigRational,
    /// Stage at which the gap is certified: `lower(left) + 2^-stage < rational < lower(right)`.
    pub stage: u64,
}

/// Rational between `f(left)` and `f(right)`: with `n` the index of the
/// separating member and `N = n + 2`, it is `v_N(left) + 2^-(n+1)`.
pub fn jump_rational(emb: &RealEmbedding, j: &Jump) -> Result<JumpWitness> {
    let cert = emb.certified_compare(&j.left, &j.right)?;
    let n = cert
        .gap_exponent()
        .and_then(ToPrimitive::to_u64)
        .filter(|n| *n < u64::MAX - 2)
        .ok_or_else(|| Error::IndexTooLarge(j.right.to_string()))?;
    let stage = n + 2;
    let lower = emb.image(&j.left)?.lower(stage)?;
    let half_gap = BigRational::new(1.into(), (BigUint::from(1u32) << (n + 1)).into());
    Ok(JumpWitness {
        rational: lower + half_gap,
        stage,
    })
}
