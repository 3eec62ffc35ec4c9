//! A dense set and rational embedding on which the supremum map collides.
//!
//! In `w + fin(2)` take `x = 1:0`, `b = 1:1` and `D` = the carrier minus
//! `x` (dense: `x` is never the only point of an open interval). With
//! `i(0:n) = -2^-n` and `i(b) = 0`, the supremum of `i` below `x` is `0 =
//! i(b)`, and neither point gets bit 1: `x` has no immediate predecessor
//! and `b ∈ D`. So both land on `(0, 0)`. `x` is not a successor here,
//! which is the case the supremum map's injectivity argument leaves out.
//!
//! Whether some canonical choice of `i` rescues the supremum map is left
//! open; the weighted-sum embedding separates the two points regardless.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dense::{check_dense_sampled, DenseSet, DensityMode, DensityVerdict, SampleBudget};
use crate::elem::Elem;
use crate::embed::rational::{Placement, RationalEmbedding};
use crate::embed::staged::SplitPointRecord;
use crate::embed::universal::{jump_bit, naive_e1, universal_embed, CertifiedOrdering};
use crate::error::Result;
use crate::serde_util;
use crate::term::OrderTerm;

/// Stages of the supremum map recorded in the trace.
pub const TRACE_STAGES: u64 = 24;
/// Stage at which the weighted-sum images are printed.
pub const ROBUST_STAGE: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveStage {
    pub stage: u64,
    #[serde(serialize_with = "serde_util::rational")]
    pub e1_x: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub e1_b: BigRational,
    /// `i(b) - e1_x`; halves every time a new `0:n` is placed.
    #[serde(serialize_with = "serde_util::rational")]
    pub gap_to_bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaivePoint {
    #[serde(serialize_with = "serde_util::rational")]
    pub real: BigRational,
    pub bit: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollisionRecord {
    #[serde(serialize_with = "serde_util::display")]
    pub term: OrderTerm,
    pub x: Elem,
    pub b: Elem,
    /// `D` is the carrier minus these points.
    pub omitted: Vec<Elem>,
    pub density: DensityVerdict,
    pub trace: Vec<NaiveStage>,
    pub naive_x: NaivePoint,
    pub naive_b: NaivePoint,
    pub naive_collision: bool,
    pub robust_x: SplitPointRecord,
    pub robust_b: SplitPointRecord,
    pub robust: CertifiedOrdering,
    pub robust_separated: bool,
    /// The reals differ by at least `2^-gap_exp`.
    #[serde(serialize_with = "serde_util::display_opt")]
    pub gap_exp: Option<BigUint>,
}

fn neg_pow2(n: u64) -> BigRational {
    -BigRational::new(BigUint::one().into(), (BigUint::one() << n).into())
}

/// `i(0:n) = -2^-n`, `i(1:1) = 0`.
fn adversarial_table() -> Placement {
    Placement::function(|e| match e {
        Elem::InSum(0, inner) => match **inner {
            Elem::Nat(n) => Some(neg_pow2(n)),
            _ => None,
        },
        Elem::InSum(1, inner) if **inner == Elem::Nat(1) => Some(BigRational::zero()),
        _ => None,
    })
}

pub fn collision_fixture() -> Result<CollisionRecord> {
    let term = OrderTerm::Sum(vec![OrderTerm::Omega, OrderTerm::Finite(2)]);
    let x = Elem::in_sum(1, Elem::Nat(0));
    let b = Elem::in_sum(1, Elem::Nat(1));
    let dense = DenseSet::without(&term, vec![x.clone()])?;
    let density = check_dense_sampled(&term, &dense, SampleBudget::exhaustive(50), DensityMode::Dense)?;

    let mut i = RationalEmbedding::new(&term, adversarial_table())?;
    let i_b = BigRational::zero();
    let mut trace = Vec::new();
    // Below x the images are exactly -2^-n for the placed 0:n, so the gap to
    // i(b) is 2^-m with m the largest placed n. m grows without bound, so the
    // supremum below x is i(b) itself.
    let mut geometric = true;
    for stage in 1..=TRACE_STAGES {
        let at_x = naive_e1(&term, &dense, &mut i, &x, stage)?;
        let at_b = naive_e1(&term, &dense, &mut i, &b, stage)?;
        let gap = &i_b - &at_x.value;
        let deepest = i.placed().iter().rev().find_map(|(p, _)| match p {
            Elem::InSum(0, inner) => match **inner {
                Elem::Nat(n) => Some(n),
                _ => None,
            },
            _ => None,
        });
        geometric &= deepest.is_some_and(|m| gap == -neg_pow2(m));
        trace.push(NaiveStage {
            stage,
            e1_x: at_x.value,
            e1_b: at_b.value,
            gap_to_bound: gap,
        });
    }
    let sup_x = if geometric { i_b } else { trace.last().unwrap().e1_x.clone() };
    let sup_b = trace.last().unwrap().e1_b.clone();

    let naive_x = NaivePoint {
        real: sup_x,
        bit: jump_bit(&term, &dense, &x)?.as_u8(),
    };
    let naive_b = NaivePoint {
        real: sup_b,
        bit: jump_bit(&term, &dense, &b)?.as_u8(),
    };
    let naive_collision = naive_x == naive_b;

    let robust = universal_embed(&term, Some(dense.clone()), SampleBudget::exhaustive(50))?;
    let cmp = robust.certified_compare(&x, &b)?;
    let gap_exp = cmp.gap_exponent().cloned();
    Ok(CollisionRecord {
        robust_x: robust.image(&x)?.record(ROBUST_STAGE)?,
        robust_b: robust.image(&b)?.record(ROBUST_STAGE)?,
        robust_separated: cmp.ordering.is_lt() && gap_exp.is_some(),
        robust: cmp,
        gap_exp,
        term,
        omitted: vec![x.clone()],
        x,
        b,
        density,
        trace,
        naive_x,
        naive_b,
        naive_collision,
    })
}
