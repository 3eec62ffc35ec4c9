//! Finitely represented points of a term.
//!
//! Element text syntax, read relative to a term:
//!
//! | term       | element            |
//! |------------|--------------------|
//! | `fin(n)`, `w` | `k` (natural)   |
//! | `w*`       | `-k`, `k ≥ 1`      |
//! | `Z`        | signed `k`         |
//! | `Q`        | `p/q` or `k`       |
//! | `R`        | `p/q`, `sqrt(n)`, `r+c*sqrt(n)` (membership queries only) |
//! | sum        | `i:inner`          |
//! | `t*2`      | `inner.0`, `inner.1` |

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::term::OrderTerm;

/// The second coordinate of a `×2` point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn as_u8(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn from_u8(b: u8) -> Option<Bit> {
        match b {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A real of the form `rational + coeff·√radicand`, used only to ask
/// whether a point of an `R`-term belongs to a dense set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealPoint {
    pub rational: BigRational,
    /// `(coeff, radicand)` with `coeff ≠ 0` and a square-free radicand `≥ 2`.
    pub surd: Option<(BigRational, u32)>,
}

impl RealPoint {
    pub fn rational(q: BigRational) -> Self {
        RealPoint { rational: q, surd: None }
    }

    /// `rational + coeff·√radicand`, pulling square factors out of the
    /// radicand. Returns a rational point when the root is exact.
    pub fn with_surd(rational: BigRational, coeff: BigRational, radicand: u32) -> Self {
        let (outside, inside) = square_free(radicand);
        let coeff = coeff * BigRational::from_integer(BigInt::from(outside));
        if inside <= 1 || coeff.is_zero() {
            let extra = if inside == 1 { coeff } else { BigRational::zero() };
            return RealPoint::rational(rational + extra);
        }
        RealPoint {
            rational,
            surd: Some((coeff, inside)),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_none()
    }
}

fn square_free(n: u32) -> (u32, u32) {
    let mut outside = 1u32;
    let mut inside = n;
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= inside as u64 {
        while inside.is_multiple_of(k * k) {
            inside /= k * k;
            outside *= k;
        }
        k += 1;
    }
    (outside, inside)
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surd {
            None => f.write_str(&format_rational(&self.rational)),
            Some((c, n)) => {
                if !self.rational.is_zero() {
                    write!(f, "{}+", format_rational(&self.rational))?;
                }
                if !c.is_one() {
                    write!(f, "{}*", format_rational(c))?;
                }
                write!(f, "sqrt({n})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    /// Point of `fin(n)` or `w`.
    Nat(u64),
    /// Point of `w*`; always `≤ -1`, and `-1` is the maximum.
    NegInt(i64),
    Int(i64),
    Rat(BigRational),
    /// Point of `R`; never valid for element-level operations.
    Real(RealPoint),
    InSum(usize, Box<Elem>),
    Pair(Box<Elem>, Bit),
}

impl Elem {
    pub fn rat(n: i64, d: i64) -> Elem {
        Elem::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn in_sum(index: usize, inner: Elem) -> Elem {
        Elem::InSum(index, Box::new(inner))
    }

    pub fn pair(inner: Elem, bit: Bit) -> Elem {
        Elem::Pair(Box::new(inner), bit)
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Nat(k) => write!(f, "{k}"),
            Elem::NegInt(k) | Elem::Int(k) => write!(f, "{k}"),
            Elem::Rat(q) => f.write_str(&format_rational(q)),
            Elem::Real(r) => write!(f, "{r}"),
            Elem::InSum(i, inner) => write!(f, "{i}:{inner}"),
            Elem::Pair(inner, bit) => write!(f, "{inner}.{bit}"),
        }
    }
}

/// Canonical text of an element.
pub fn format_elem(e: &Elem) -> String {
    e.to_string()
}

/// True when `e` denotes a point of `t`. Points of `R` are accepted only
/// when `allow_real` is set.
pub(crate) fn is_member(t: &OrderTerm, e: &Elem, allow_real: bool) -> bool {
    match (t, e) {
        (OrderTerm::Finite(n), Elem::Nat(k)) => k < n,
        (OrderTerm::Omega, Elem::Nat(_)) => true,
        (OrderTerm::OmegaStar, Elem::NegInt(k)) => *k <= -1,
        (OrderTerm::Ints, Elem::Int(_)) => true,
        (OrderTerm::Rats, Elem::Rat(_)) => true,
        (OrderTerm::Reals, Elem::Real(r)) => {
            allow_real
                && r.surd.as_ref().is_none_or(|(c, n)| {
                    !c.is_zero() && *n >= 2 && square_free(*n).0 == 1
                })
        }
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => {
            parts.get(*i).is_some_and(|p| is_member(p, inner, allow_real))
        }
        (OrderTerm::Times2(base), Elem::Pair(inner, _)) => is_member(base, inner, allow_real),
        _ => false,
    }
}

fn invalid(t: &OrderTerm, e: &Elem) -> Error {
    Error::InvalidElement {
        term: t.to_string(),
        elem: e.to_string(),
    }
}

/// Checks that `e` is a point of the concrete term `t`.
pub fn validate(t: &OrderTerm, e: &Elem) -> Result<()> {
    t.require_concrete()?;
    if is_member(t, e, false) {
        Ok(())
    } else {
        Err(invalid(t, e))
    }
}

/// Like [`validate`] but also admits points of `R`-terms.
pub fn validate_symbolic(t: &OrderTerm, e: &Elem) -> Result<()> {
    if is_member(t, e, true) {
        Ok(())
    } else {
        Err(invalid(t, e))
    }
}

/// Parses element text relative to `t`. Points of `R` parse but are only
/// usable for membership queries.
pub fn parse_elem(t: &OrderTerm, text: &str) -> Result<Elem> {
    let bad = || Error::InvalidElement {
        term: t.to_string(),
        elem: text.to_string(),
    };
    let e = parse_raw(t, text.trim()).ok_or_else(bad)?;
    if is_member(t, &e, true) {
        Ok(e)
    } else {
        Err(bad())
    }
}

fn parse_raw(t: &OrderTerm, s: &str) -> Option<Elem> {
    match t {
        OrderTerm::Finite(_) | OrderTerm::Omega => {
            if s.starts_with('+') {
                return None;
            }
            s.parse().ok().map(Elem::Nat)
        }
        OrderTerm::OmegaStar => {
            let k: i64 = s.strip_prefix('-')?.parse().ok()?;
            (k >= 1).then(|| Elem::NegInt(-k))
        }
        OrderTerm::Ints => {
            if s.starts_with('+') {
                return None;
            }
            s.parse().ok().map(Elem::Int)
        }
        OrderTerm::Rats => parse_rational(s).map(Elem::Rat),
        OrderTerm::Reals => parse_real(s).map(Elem::Real),
        OrderTerm::Sum(parts) => {
            let (idx, inner) = s.split_once(':')?;
            let idx: usize = idx.parse().ok()?;
            let part = parts.get(idx)?;
            Some(Elem::in_sum(idx, parse_raw(part, inner)?))
        }
        OrderTerm::Times2(base) => {
            let (inner, bit) = s.rsplit_once('.')?;
            let bit = match bit {
                "0" => Bit::Zero,
                "1" => Bit::One,
                _ => return None,
            };
            Some(Elem::pair(parse_raw(base, inner)?, bit))
        }
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => parse_integer(s).map(BigRational::from_integer),
        Some((p, q)) => {
            let p = parse_integer(p)?;
            let q = parse_integer(q)?;
            (q.is_positive()).then(|| BigRational::new(p, q))
        }
    }
}

fn parse_real(s: &str) -> Option<RealPoint> {
    let Some(head) = s.strip_suffix(')') else {
        return parse_rational(s).map(RealPoint::rational);
    };
    let (prefix, radicand) = head.rsplit_once("sqrt(")?;
    let radicand: u32 = radicand.parse().ok()?;
    let (rational, coeff) = match prefix.rsplit_once('+') {
        Some((r, c)) => (parse_rational(r)?, c),
        None => (BigRational::zero(), prefix),
    };
    let coeff = match coeff {
        "" => BigRational::one(),
        c => parse_rational(c.strip_suffix('*')?)?,
    };
    if radicand < 2 {
        return None;
    }
    Some(RealPoint::with_surd(rational, coeff, radicand))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn roundtrip(term: &str, text: &str) -> Elem {
        let t = parse_term(term).unwrap();
        let e = parse_elem(&t, text).unwrap();
        assert_eq!(e.to_string(), text, "format of {text} in {term}");
        e
    }

    #[test]
    fn element_syntax() {
        assert_eq!(roundtrip("fin(3)", "2"), Elem::Nat(2));
        assert_eq!(roundtrip("w*", "-4"), Elem::NegInt(-4));
        assert_eq!(roundtrip("Z", "-4"), Elem::Int(-4));
        assert_eq!(roundtrip("Q", "-3/4"), Elem::rat(-3, 4));
        assert_eq!(roundtrip("Q", "5"), Elem::rat(5, 1));
        assert_eq!(roundtrip("Q*2", "1/2.1"), Elem::pair(Elem::rat(1, 2), Bit::One));
        assert_eq!(
            roundtrip("(fin(2)+Q)*2", "1:-1/2.0"),
            Elem::pair(Elem::in_sum(1, Elem::rat(-1, 2)), Bit::Zero)
        );
        assert_eq!(
            roundtrip("fin(3)+Z*2", "1:7.1"),
            Elem::in_sum(1, Elem::pair(Elem::Int(7), Bit::One))
        );
    }

    #[test]
    fn rejects_points_outside_the_term() {
        let t = parse_term("fin(3)+w").unwrap();
        for bad in ["3:0", "0:3", "0:-1", "1", "0:1.0", "1:x", "", "0:+1"] {
            assert!(parse_elem(&t, bad).is_err(), "{bad}");
        }
        let ws = parse_term("w*").unwrap();
        assert!(parse_elem(&ws, "-0").is_err());
        assert!(parse_elem(&ws, "3").is_err());
        let q = parse_term("Q").unwrap();
        assert!(parse_elem(&q, "1/0").is_err());
        assert!(parse_elem(&q, "1/-2").is_err());
        assert_eq!(parse_elem(&q, "2/4").unwrap(), Elem::rat(1, 2));
    }

    #[test]
    fn real_points() {
        let r2 = parse_term("R*2").unwrap();
        let e = roundtrip("R*2", "sqrt(2).1");
        assert!(validate_symbolic(&r2, &e).is_ok());
        assert!(matches!(validate(&r2, &e), Err(Error::SymbolicTerm(_))));
        roundtrip("R", "1/2+-3*sqrt(5)");
        roundtrip("R", "2*sqrt(3)");
        roundtrip("R", "7/3");
        let r = parse_term("R").unwrap();
        assert_eq!(parse_elem(&r, "sqrt(8)").unwrap().to_string(), "2*sqrt(2)");
        assert_eq!(parse_elem(&r, "1+sqrt(9)").unwrap().to_string(), "4");
        assert!(parse_elem(&r, "sqrt(1)").is_err());
    }

    #[test]
    fn validity_is_structural() {
        let t = parse_term("fin(2)+Q*2").unwrap();
        assert!(validate(&t, &Elem::in_sum(1, Elem::pair(Elem::rat(1, 3), Bit::Zero))).is_ok());
        assert!(validate(&t, &Elem::in_sum(1, Elem::rat(1, 3))).is_err());
        assert!(validate(&t, &Elem::in_sum(0, Elem::Nat(2))).is_err());
        assert!(validate(&t, &Elem::in_sum(2, Elem::Nat(0))).is_err());
    }
}
