//! Cardinality classes: finite counts, countably infinite, continuum.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CardinalClass {
    Fin(BigUint),
    Aleph0,
    Continuum,
}

impl CardinalClass {
    pub fn fin(n: u64) -> Self {
        CardinalClass::Fin(BigUint::from(n))
    }

    pub fn zero() -> Self {
        CardinalClass::Fin(BigUint::zero())
    }

    pub fn one() -> Self {
        CardinalClass::Fin(BigUint::one())
    }

    /// At most countable.
    pub fn is_countable(&self) -> bool {
        !matches!(self, CardinalClass::Continuum)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CardinalClass::Fin(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            CardinalClass::Fin(n) => Some(n),
            _ => None,
        }
    }

    /// `Fin(2) · self`: finite counts double, infinite classes are unchanged.
    pub fn doubled(&self) -> Self {
        match self {
            CardinalClass::Fin(n) => CardinalClass::Fin(n << 1u32),
            other => other.clone(),
        }
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    fn rank(&self) -> u8 {
        match self {
            CardinalClass::Fin(_) => 0,
            CardinalClass::Aleph0 => 1,
            CardinalClass::Continuum => 2,
        }
    }
}

impl Ord for CardinalClass {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CardinalClass::Fin(a), CardinalClass::Fin(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for CardinalClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for CardinalClass {
    type Output = CardinalClass;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (CardinalClass::Fin(a), CardinalClass::Fin(b)) => CardinalClass::Fin(a + b),
            (a, b) => std::cmp::max(a, b),
        }
    }
}

impl std::iter::Sum for CardinalClass {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CardinalClass::zero(), Add::add)
    }
}

impl fmt::Display for CardinalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalClass::Fin(n) => write!(f, "fin:{n}"),
            CardinalClass::Aleph0 => f.write_str("aleph0"),
            CardinalClass::Continuum => f.write_str("continuum"),
        }
    }
}

impl FromStr for CardinalClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aleph0" => Ok(CardinalClass::Aleph0),
            "continuum" => Ok(CardinalClass::Continuum),
            _ => s
                .strip_prefix("fin:")
                .and_then(|n| n.parse::<BigUint>().ok())
                .map(CardinalClass::Fin)
                .ok_or_else(|| format!("not a cardinal class: `{s}`")),
        }
    }
}

impl Serialize for CardinalClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
