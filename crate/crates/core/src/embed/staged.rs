//! Reals given as suprema of weighted sums over a dense enumeration.

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dense::DenseSet;
use crate::elem::{format_rational, Bit, Elem};
use crate::error::Result;
use crate::order::cmp_raw;

/// `f(x) = Σ { 2^-n : d_n ≤ x }` over the enumeration `d_0, d_1, …` of a
/// dense set. Stage `N` keeps the terms with `n ≤ N`; the tail adds at most
/// `2^-N`, so `f(x) ∈ [lower(N), lower(N) + 2^-N]`.
#[derive(Debug, Clone)]
pub struct StagedReal {
    dense: Arc<DenseSet>,
    point: Elem,
}

impl StagedReal {
    pub(crate) fn new(dense: Arc<DenseSet>, point: Elem) -> Self {
        StagedReal { dense, point }
    }

    pub fn point(&self) -> &Elem {
        &self.point
    }

    /// Lower approximant `v_N`; nondecreasing in `stage`.
    pub fn lower(&self, stage: u64) -> Result<BigRational> {
        let t = self.dense.term();
        let mut numer = BigUint::zero();
        for (n, d) in self.dense.iter()?.take((stage as usize).saturating_add(1)).enumerate() {
            if cmp_raw(t, &d, &self.point).is_le() {
                numer.set_bit(stage - n as u64, true);
            }
        }
        Ok(BigRational::new(numer.into(), (BigUint::one() << stage).into()))
    }

    /// Exponent of the error bound at `stage`.
    pub fn err_exp(stage: u64) -> i64 {
        -(stage as i64)
    }

    pub fn approximation(&self, stage: u64) -> Result<Approximation> {
        Ok(Approximation {
            lower: self.lower(stage)?,
            stage,
        })
    }
}

/// `v_N` together with its stage; the value lies in `[lower, lower + 2^-stage]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub lower: BigRational,
    pub stage: u64,
}

impl Approximation {
    pub fn upper(&self) -> BigRational {
        &self.lower + BigRational::new(1.into(), (BigUint::one() << self.stage).into())
    }

    /// Decimal expansion of `lower` truncated to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        decimal(&self.lower, digits)
    }
}

/// A point of `R×2`: a staged real with a bit.
#[derive(Debug, Clone)]
pub struct SplitPoint {
    pub real: StagedReal,
    pub bit: Bit,
}

/// JSON form of a split point (or of a staged real when `bit` is absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitPointRecord {
    pub lower: String,
    pub err_exp: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bit: Option<u8>,
    pub stage: u64,
}

impl SplitPoint {
    pub fn record(&self, stage: u64) -> Result<SplitPointRecord> {
        let mut r = record(&self.real, stage)?;
        r.bit = Some(self.bit.as_u8());
        Ok(r)
    }
}

pub fn record(real: &StagedReal, stage: u64) -> Result<SplitPointRecord> {
    Ok(SplitPointRecord {
        lower: format_rational(&real.lower(stage)?),
        err_exp: StagedReal::err_exp(stage),
        bit: None,
        stage,
    })
}

/// Truncated decimal rendering of a rational, e.g. `0.7500`.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let negative = *q < BigRational::zero();
    let abs = if negative { -q.clone() } else { q.clone() };
    let scale = num_bigint::BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs * BigRational::from_integer(scale)).floor().to_integer().to_string();
    let padded = format!("{scaled:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
