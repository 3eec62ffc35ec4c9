//! Jump homogeneity of `Q×2`.
//!
//! In `Q×2` every `(q, 0)` is the left partner of the jump `(q,0) < (q,1)`
//! and every `(q, 1)` the right partner, so `J_ℓ = Q×{0}`, `J_r = Q×{1}`
//! and `J` relates exactly `(q,0)` and `(q,1)`. A finite partial bijection
//! preserving `<`, `J_ℓ`, `J_r` and `J` therefore keeps bits and induces an
//! order-preserving finite map on the quotient `Q×2 / J ≅ Q`. That map
//! extends to a piecewise-linear automorphism of `Q`, and applying it to
//! the first coordinate while keeping the bit extends the partial map.
//!
//! `Q×2` stands in for `R×2` here: the argument only uses that the quotient
//! is a homogeneous dense order and that the lift is the identity on bits,
//! and `Q×2` is element-computable.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::elem::{format_rational, parse_elem, validate, Bit, Elem};
use crate::error::{Error, Result};
use crate::serde_util;
use crate::term::OrderTerm;

/// The term `Q*2`.
pub fn rationals_times_two() -> OrderTerm {
    OrderTerm::Times2(Box::new(OrderTerm::Rats))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialMap {
    pub pairs: Vec<(Elem, Elem)>,
}

impl PartialMap {
    pub fn new(pairs: Vec<(Elem, Elem)>) -> Self {
        PartialMap { pairs }
    }

    /// Parses lines `src -> dst`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<PartialMap> {
        let t = rationals_times_two();
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (src, dst) = line.split_once("->").ok_or_else(|| Error::Syntax {
                pos: lineno,
                msg: format!("expected `src -> dst` on line {}", lineno + 1),
            })?;
            pairs.push((parse_elem(&t, src)?, parse_elem(&t, dst)?));
        }
        Ok(PartialMap { pairs })
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, d) in &self.pairs {
            writeln!(f, "{s} -> {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    #[serde(rename = "<")]
    Order,
    #[serde(rename = "J_left")]
    JLeft,
    #[serde(rename = "J_right")]
    JRight,
    #[serde(rename = "J")]
    JRelation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Order => "<",
            ViolationKind::JLeft => "J_left",
            ViolationKind::JRight => "J_right",
            ViolationKind::JRelation => "J",
        })
    }
}

/// The first relation a partial map fails to preserve, with the map pairs
/// that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<(Elem, Elem)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at", self.kind)?;
        for (i, (s, d)) in self.witness.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{s} -> {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Violation(Violation),
}

fn split(e: &Elem) -> (&BigRational, Bit) {
    match e {
        Elem::Pair(inner, bit) => match &**inner {
            Elem::Rat(q) => (q, *bit),
            _ => unreachable!("validated point of Q*2"),
        },
        _ => unreachable!("validated point of Q*2"),
    }
}

/// The `J`-class of a point: its first coordinate.
pub fn quotient_map(x: &Elem) -> Result<BigRational> {
    validate(&rationals_times_two(), x)?;
    Ok(split(x).0.clone())
}

fn j_related(a: &Elem, b: &Elem) -> bool {
    let (p, s) = split(a);
    let (q, t) = split(b);
    p == q && s != t
}

/// Checks bits pair by pair, then `<` and `J` over all pairs of pairs.
pub fn validate_partial_map(pm: &PartialMap) -> Result<Validation> {
    let t = rationals_times_two();
    for (i, (s, d)) in pm.pairs.iter().enumerate() {
        validate(&t, s)?;
        validate(&t, d)?;
        for (s2, d2) in &pm.pairs[..i] {
            if s2 == s {
                return Err(Error::DuplicateSource(s.to_string()));
            }
            if d2 == d {
                return Err(Error::DuplicateTarget(d.to_string()));
            }
        }
    }
    let violation = |kind, witness: Vec<&(Elem, Elem)>| {
        Ok(Validation::Violation(Violation {
            kind,
            witness: witness.into_iter().cloned().collect(),
        }))
    };
    for pair in &pm.pairs {
        let (src_bit, dst_bit) = (split(&pair.0).1, split(&pair.1).1);
        // a flip breaks both; the source's own relation is reported
        if src_bit != dst_bit {
            let kind = match src_bit {
                Bit::Zero => ViolationKind::JLeft,
                Bit::One => ViolationKind::JRight,
            };
            return violation(kind, vec![pair]);
        }
    }
    let cmp = |a: &Elem, b: &Elem| {
        let (p, s) = split(a);
        let (q, t) = split(b);
        p.cmp(q).then(s.cmp(&t))
    };
    for (i, a) in pm.pairs.iter().enumerate() {
        for b in &pm.pairs[i + 1..] {
            if cmp(&a.0, &b.0) != cmp(&a.1, &b.1) {
                return violation(ViolationKind::Order, vec![a, b]);
            }
        }
    }
    for (i, a) in pm.pairs.iter().enumerate() {
        for b in &pm.pairs[i + 1..] {
            if j_related(&a.0, &b.0) != j_related(&a.1, &b.1) {
                return violation(ViolationKind::JRelation, vec![a, b]);
            }
        }
    }
    Ok(Validation::Valid)
}

/// Increasing piecewise-linear bijection of `Q` with slope 1 outside its
/// breakpoints, lifted to `Q×2` by keeping the bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    /// Sorted `(q, base(q))` control points, strictly increasing in both.
    #[serde(serialize_with = "ser_points")]
    pub control_points: Vec<(BigRational, BigRational)>,
    #[serde(serialize_with = "serde_util::rational")]
    pub left_slope: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub right_slope: BigRational,
}

fn ser_points<S: serde::Serializer>(
    pts: &[(BigRational, BigRational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for (a, b) in pts {
        seq.serialize_element(&[format_rational(a), format_rational(b)])?;
    }
    seq.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism {
            control_points: Vec::new(),
            left_slope: BigRational::one(),
            right_slope: BigRational::one(),
        }
    }

    /// The base map on `Q`.
    pub fn base(&self, q: &BigRational) -> BigRational {
        interpolate(&self.control_points, q, false)
    }

    /// The inverse base map; exact since every piece is affine.
    pub fn base_inverse(&self, q: &BigRational) -> BigRational {
        interpolate(&self.control_points, q, true)
    }

    /// Slopes of the pieces between consecutive control points.
    pub fn inner_slopes(&self) -> Vec<BigRational> {
        self.control_points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    pub fn apply(&self, x: &Elem, direction: Direction) -> Result<Elem> {
        validate(&rationals_times_two(), x)?;
        let (q, bit) = split(x);
        let image = match direction {
            Direction::Forward => self.base(q),
            Direction::Inverse => self.base_inverse(q),
        };
        Ok(Elem::pair(Elem::Rat(image), bit))
    }
}

/// Evaluates the PL map through `points` (or its inverse, reading the
/// pairs backwards), slope 1 beyond them.
fn interpolate(points: &[(BigRational, BigRational)], q: &BigRational, inverse: bool) -> BigRational {
    let at = |i: usize| {
        let (x, y) = &points[i];
        if inverse {
            (y, x)
        } else {
            (x, y)
        }
    };
    if points.is_empty() {
        return q.clone();
    }
    let (first_x, first_y) = at(0);
    let (last_x, last_y) = at(points.len() - 1);
    if q <= first_x {
        return q - first_x + first_y;
    }
    if q >= last_x {
        return q - last_x + last_y;
    }
    // both coordinates increase, so either one can be searched
    let k = points.partition_point(|p| if inverse { &p.1 <= q } else { &p.0 <= q });
    let (x0, y0) = at(k - 1);
    let (x1, y1) = at(k);
    y0 + (q - x0) * (y1 - y0) / (x1 - x0)
}

/// Extends a valid partial map on `Q×2` to an automorphism.
pub fn extend_to_automorphism(pm: &PartialMap) -> Result<Automorphism> {
    if let Validation::Violation(v) = validate_partial_map(pm)? {
        return Err(Error::InvalidMap(v));
    }
    let mut points: Vec<(BigRational, BigRational)> = pm
        .pairs
        .iter()
        .map(|(s, d)| (split(s).0.clone(), split(d).0.clone()))
        .collect();
    points.sort();
    points.dedup();
    debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
    Ok(Automorphism {
        control_points: points,
        left_slope: BigRational::one(),
        right_slope: BigRational::one(),
    })
}

impl PartialOrd for ViolationKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ViolationKind {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}
