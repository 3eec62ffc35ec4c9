//! Dense subsets: canonical and sided constructions, user-supplied sets,
//! and a budgeted density check.
//!
//! `D` is dense when every nonempty open interval `(a, b)` meets `D`. It
//! is left dense when every point is the supremum of the members below or
//! at it, and right dense symmetrically.
//!
//! For concrete (countable) terms the canonical set is the whole carrier.
//! Proper subsets come from [`DenseSet::without`] and [`DenseSet::only`].

use std::collections::VecDeque;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{embeds_into_reals, is_separable};
use crate::elem::{is_member, validate, Bit, Elem};
use crate::enumerate::{enumerate, index_raw, Enumeration};
use crate::error::{Error, Result};
use crate::order::{between_raw, cmp_raw, max_raw, min_raw, pred_raw, succ_raw};
use crate::term::OrderTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sided {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Members {
    /// Atoms are full (`Q` for `R`); sums add part endpoints;
    /// `b*2` is `D(b)×2 ∪ J_ℓ(b)×{1} ∪ J_r(b)×{0}`.
    Canonical,
    /// Canonical plus all right jump partners and the minimum (left), or
    /// all left jump partners and the maximum (right).
    Sided(Sided),
    /// Union of both sided sets.
    BothSided,
    /// The carrier minus finitely many points.
    Without(Vec<Elem>),
    /// Exactly the listed points, enumerated in list order.
    Only(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSet {
    term: OrderTerm,
    members: Members,
}

/// Canonical dense set of a separable term.
pub fn canonical_dense(t: &OrderTerm) -> Result<DenseSet> {
    if !is_separable(t) {
        return Err(Error::NotSeparable(t.to_string()));
    }
    Ok(DenseSet {
        term: t.clone(),
        members: Members::Canonical,
    })
}

/// Left or right dense set of a term that embeds into the reals.
pub fn sided_dense(t: &OrderTerm, side: Sided) -> Result<DenseSet> {
    if !embeds_into_reals(t) {
        return Err(Error::NotEmbeddable(t.to_string()));
    }
    Ok(DenseSet {
        term: t.clone(),
        members: Members::Sided(side),
    })
}

/// Union of the left and right dense sets.
pub fn both_sided_dense(t: &OrderTerm) -> Result<DenseSet> {
    if !embeds_into_reals(t) {
        return Err(Error::NotEmbeddable(t.to_string()));
    }
    Ok(DenseSet {
        term: t.clone(),
        members: Members::BothSided,
    })
}

impl DenseSet {
    /// The carrier of a concrete term minus the listed points.
    pub fn without(t: &OrderTerm, omitted: Vec<Elem>) -> Result<DenseSet> {
        let omitted = validated_unique(t, omitted)?;
        Ok(DenseSet {
            term: t.clone(),
            members: Members::Without(omitted),
        })
    }

    /// Exactly the listed points of a concrete term.
    pub fn only(t: &OrderTerm, members: Vec<Elem>) -> Result<DenseSet> {
        let members = validated_unique(t, members)?;
        Ok(DenseSet {
            term: t.clone(),
            members: Members::Only(members),
        })
    }

    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    /// Decidable membership; points that are not valid for the term are
    /// never members.
    pub fn contains(&self, e: &Elem) -> bool {
        if !is_member(&self.term, e, true) {
            return false;
        }
        let t = &self.term;
        match &self.members {
            Members::Canonical => canonical_member(t, e),
            Members::Sided(side) => sided_member(t, e, *side),
            Members::BothSided => sided_member(t, e, Sided::Left) || sided_member(t, e, Sided::Right),
            Members::Without(omitted) => !omitted.contains(e),
            Members::Only(listed) => listed.contains(e),
        }
    }

    /// Adds the least and greatest point of the term when they exist.
    pub fn with_endpoints(&self) -> DenseSet {
        let ends: Vec<Elem> = [min_raw(&self.term), max_raw(&self.term)]
            .into_iter()
            .flatten()
            .collect();
        let members = match &self.members {
            Members::Without(omitted) => {
                Members::Without(omitted.iter().filter(|e| !ends.contains(e)).cloned().collect())
            }
            Members::Only(listed) => {
                let mut listed = listed.clone();
                for e in ends {
                    if !listed.contains(&e) {
                        listed.push(e);
                    }
                }
                Members::Only(listed)
            }
            // these already contain every endpoint
            other => other.clone(),
        };
        DenseSet {
            term: self.term.clone(),
            members,
        }
    }

    /// Enumeration of the members of a concrete term.
    pub fn iter(&self) -> Result<DenseIter> {
        self.term.require_concrete()?;
        Ok(match &self.members {
            Members::Only(listed) => DenseIter::Listed(listed.clone().into_iter()),
            _ => DenseIter::Filtered {
                set: self.clone(),
                carrier: enumerate(&self.term)?,
            },
        })
    }

    /// Position of `e` in [`DenseSet::iter`], or `None` for non-members.
    pub fn index_of(&self, e: &Elem) -> Result<Option<BigUint>> {
        validate(&self.term, e)?;
        if !self.contains(e) {
            return Ok(None);
        }
        Ok(Some(match &self.members {
            Members::Only(listed) => BigUint::from(listed.iter().position(|m| m == e).unwrap()),
            Members::Without(omitted) => {
                let idx = index_raw(&self.term, e)?;
                let mut skipped = 0u64;
                for o in omitted {
                    if index_raw(&self.term, o)? < idx {
                        skipped += 1;
                    }
                }
                idx - skipped
            }
            // structural membership covers the whole carrier of a concrete term
            _ => index_raw(&self.term, e)?,
        }))
    }

    /// Some member strictly between `a < b`, searched structurally. Exact for
    /// every kind of set: canonical sets are full on concrete terms, listed
    /// sets are scanned, and cofinite sets need at most `|omitted| + 1`
    /// distinct interior points.
    pub(crate) fn member_between(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        let t = &self.term;
        if let Members::Only(listed) = &self.members {
            return listed
                .iter()
                .filter(|d| cmp_raw(t, a, d).is_lt() && cmp_raw(t, d, b).is_lt())
                .min_by(|d, e| cmp_raw(t, d, e))
                .cloned();
        }
        let limit = match &self.members {
            Members::Without(omitted) => omitted.len() + 1,
            _ => 1,
        };
        let mut frontier = VecDeque::from([(a.clone(), b.clone())]);
        let mut probes = 0;
        while let Some((lo, hi)) = frontier.pop_front() {
            if probes >= limit {
                break;
            }
            let Some(z) = between_raw(t, &lo, &hi) else {
                continue;
            };
            probes += 1;
            if self.contains(&z) {
                return Some(z);
            }
            frontier.push_back((lo, z.clone()));
            frontier.push_back((z, hi));
        }
        None
    }
}

fn validated_unique(t: &OrderTerm, elems: Vec<Elem>) -> Result<Vec<Elem>> {
    let mut out: Vec<Elem> = Vec::with_capacity(elems.len());
    for e in elems {
        validate(t, &e)?;
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

fn canonical_member(t: &OrderTerm, e: &Elem) -> bool {
    match (t, e) {
        (OrderTerm::Reals, Elem::Real(r)) => r.is_rational(),
        (OrderTerm::Sum(parts), Elem::InSum(i, inner)) => {
            let part = &parts[*i];
            canonical_member(part, inner)
                || min_raw(part).as_ref() == Some(&**inner)
                || max_raw(part).as_ref() == Some(&**inner)
        }
        (OrderTerm::Times2(base), Elem::Pair(inner, bit)) => {
            canonical_member(base, inner)
                || match bit {
                    Bit::One => succ_raw(base, inner).is_some(),
                    Bit::Zero => pred_raw(base, inner).is_some(),
                }
        }
        _ => true,
    }
}

fn sided_member(t: &OrderTerm, e: &Elem, side: Sided) -> bool {
    canonical_member(t, e)
        || match side {
            Sided::Left => pred_raw(t, e).is_some() || min_raw(t).as_ref() == Some(e),
            Sided::Right => succ_raw(t, e).is_some() || max_raw(t).as_ref() == Some(e),
        }
}

/// Exclusively owned stream over a dense set.
#[derive(Debug, Clone)]
pub enum DenseIter {
    Filtered { set: DenseSet, carrier: Enumeration },
    Listed(std::vec::IntoIter<Elem>),
}

impl Iterator for DenseIter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        match self {
            DenseIter::Filtered { set, carrier } => carrier.by_ref().find(|e| set.contains(e)),
            DenseIter::Listed(it) => it.next(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    Dense,
    Left,
    Right,
}

/// Sampling parameters for [`check_dense_sampled`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleBudget {
    /// Number of sampled pairs; when at least the number of pairs in the
    /// prefix, every pair is checked.
    pub pairs: usize,
    /// Length of the enumeration prefix pairs are drawn from.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SampleBudget {
    fn default() -> Self {
        SampleBudget {
            pairs: 200,
            budget: 2000,
            seed: 0,
        }
    }
}

impl SampleBudget {
    pub fn exhaustive(budget: usize) -> Self {
        SampleBudget {
            pairs: usize::MAX,
            budget,
            seed: 0,
        }
    }
}

/// Outcome of a budgeted density check. A pass is evidence, not proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DensityVerdict {
    Evidence { pairs_checked: usize, budget: usize },
    Counterexample { lo: Elem, hi: Elem },
}

impl DensityVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DensityVerdict::Evidence { .. })
    }
}

/// Budgeted semi-decision of (left/right) density.
///
/// Pairs are drawn from the first `budget` enumerated elements. In `Dense`
/// mode a pair `a < b` fails when `(a, b)` is nonempty but contains no
/// member. In `Left` mode a pair `y < x` with `x ∉ D` fails when no member
/// lies in `(y, x)`; the minimum must be a member. `Right` mirrors `Left`.
pub fn check_dense_sampled(
    t: &OrderTerm,
    d: &DenseSet,
    sample: SampleBudget,
    mode: DensityMode,
) -> Result<DensityVerdict> {
    t.require_concrete()?;
    let mut sorted: Vec<Elem> = enumerate(t)?.take(sample.budget).collect();
    sorted.sort_by(|x, y| cmp_raw(t, x, y));
    let member: Vec<bool> = sorted.iter().map(|e| d.contains(e)).collect();
    // members_before[k] = number of members among sorted[..k]
    let mut members_before = Vec::with_capacity(member.len() + 1);
    members_before.push(0usize);
    for (k, m) in member.iter().enumerate() {
        members_before.push(members_before[k] + usize::from(*m));
    }
    let n = sorted.len();
    let total_pairs = n * n.saturating_sub(1) / 2;
    let fail = |lo: &Elem, hi: &Elem| {
        Ok(DensityVerdict::Counterexample {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    };

    match mode {
        DensityMode::Left => {
            if let Some(min) = min_raw(t).filter(|m| !d.contains(m)) {
                return fail(&min, &min);
            }
        }
        DensityMode::Right => {
            if let Some(max) = max_raw(t).filter(|m| !d.contains(m)) {
                return fail(&max, &max);
            }
        }
        DensityMode::Dense => {}
    }

    // `(i, j)` with `i < j` are positions in `sorted`.
    let check = |i: usize, j: usize| -> Option<(usize, usize)> {
        let (lo, hi) = (&sorted[i], &sorted[j]);
        let outside = match mode {
            DensityMode::Dense => true,
            DensityMode::Left => !member[j],
            DensityMode::Right => !member[i],
        };
        if !outside {
            return None;
        }
        if members_before[j] > members_before[i + 1] {
            return None;
        }
        let interval_empty = j == i + 1 && between_raw(t, lo, hi).is_none();
        match (mode, interval_empty) {
            (DensityMode::Dense, true) => None,
            // the point outside D is the far partner of a jump
            (_, true) => Some((i, j)),
            (_, false) => d.member_between(lo, hi).is_none().then_some((i, j)),
        }
    };

    let mut checked = 0;
    if sample.pairs >= total_pairs {
        for i in 0..n {
            for j in i + 1..n {
                checked += 1;
                if let Some((i, j)) = check(i, j) {
                    return fail(&sorted[i], &sorted[j]);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
        let outside: Vec<usize> = match mode {
            DensityMode::Dense => (0..n).collect(),
            DensityMode::Left | DensityMode::Right => (0..n).filter(|&i| !member[i]).collect(),
        };
        for _ in 0..sample.pairs {
            if outside.is_empty() || n < 2 {
                break;
            }
            let p = outside[rng.gen_range(0..outside.len())];
            let mut q = rng.gen_range(0..n - 1);
            if q >= p {
                q += 1;
            }
            let (i, j) = match mode {
                DensityMode::Dense => (p.min(q), p.max(q)),
                DensityMode::Left => match q < p {
                    true => (q, p),
                    false => continue,
                },
                DensityMode::Right => match q > p {
                    true => (p, q),
                    false => continue,
                },
            };
            checked += 1;
            if let Some((i, j)) = check(i, j) {
                return fail(&sorted[i], &sorted[j]);
            }
        }
    }
    Ok(DensityVerdict::Evidence {
        pairs_checked: checked,
        budget: sample.budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::parse_elem;
    use crate::term::parse_term;

    fn t(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    fn e(t: &OrderTerm, s: &str) -> Elem {
        parse_elem(t, s).unwrap()
    }

    #[test]
    fn canonical_of_r_times_two_is_rational_pairs() {
        let r2 = t("R*2");
        let d = canonical_dense(&r2).unwrap();
        assert!(d.contains(&e(&r2, "1/2.0")));
        assert!(d.contains(&e(&r2, "-7.1")));
        assert!(!d.contains(&e(&r2, "sqrt(2).0")));
        assert!(!d.contains(&e(&r2, "1+3*sqrt(7).1")));
        assert!(d.iter().is_err());
    }

    #[test]
    fn canonical_of_countable_terms_is_everything() {
        for term in ["Q*2", "fin(3)", "w+fin(2)", "(Z*2)*2", "fin(2)+Q"] {
            let tt = t(term);
            let d = canonical_dense(&tt).unwrap();
            for x in enumerate(&tt).unwrap().take(200) {
                assert!(d.contains(&x), "{term} {x}");
            }
        }
        assert!(matches!(canonical_dense(&t("(R*2)*2")), Err(Error::NotSeparable(_))));
    }

    #[test]
    fn canonical_with_reals_adds_endpoints_and_jump_partners() {
        let tt = t("(fin(1)+R+fin(1))*2");
        let d = canonical_dense(&tt).unwrap();
        assert!(d.contains(&e(&tt, "0:0.1")));
        assert!(d.contains(&e(&tt, "2:0.0")));
        assert!(d.contains(&e(&tt, "1:3.1")));
        assert!(!d.contains(&e(&tt, "1:sqrt(3).1")));
    }

    #[test]
    fn sided_sets() {
        let z = t("Z");
        let left = sided_dense(&z, Sided::Left).unwrap();
        assert!(enumerate(&z).unwrap().take(50).all(|x| left.contains(&x)));
        let q = t("Q");
        let left = sided_dense(&q, Sided::Left).unwrap();
        assert!(enumerate(&q).unwrap().take(50).all(|x| left.contains(&x)));
        assert!(matches!(sided_dense(&t("R*2"), Sided::Left), Err(Error::NotEmbeddable(_))));
    }

    #[test]
    fn dense_check_examples() {
        let w2 = t("w+fin(2)");
        let d = DenseSet::without(&w2, vec![e(&w2, "1:0")]).unwrap();
        let verdict = check_dense_sampled(
            &w2,
            &d,
            SampleBudget { pairs: 100, budget: 500, seed: 7 },
            DensityMode::Dense,
        )
        .unwrap();
        assert!(verdict.passed());
        assert!(check_dense_sampled(&w2, &d, SampleBudget::exhaustive(50), DensityMode::Dense)
            .unwrap()
            .passed());

        let f3 = t("fin(3)");
        let d = DenseSet::only(&f3, vec![Elem::Nat(0), Elem::Nat(2)]).unwrap();
        assert_eq!(
            check_dense_sampled(&f3, &d, SampleBudget::exhaustive(3), DensityMode::Dense).unwrap(),
            DensityVerdict::Counterexample { lo: Elem::Nat(0), hi: Elem::Nat(2) }
        );

        let q = t("Q");
        let d = canonical_dense(&q).unwrap();
        let v = check_dense_sampled(
            &q,
            &d,
            SampleBudget { pairs: 100, budget: 500, seed: 1 },
            DensityMode::Left,
        )
        .unwrap();
        assert!(v.passed());
    }

    #[test]
    fn sided_checks_catch_missing_partners() {
        // the right partner of the jump 0:0 < 0:1 is missing: not left dense
        let tt = t("fin(2)+Q");
        let d = DenseSet::without(&tt, vec![e(&tt, "0:1")]).unwrap();
        assert!(check_dense_sampled(&tt, &d, SampleBudget::exhaustive(60), DensityMode::Dense)
            .unwrap()
            .passed());
        assert_eq!(
            check_dense_sampled(&tt, &d, SampleBudget::exhaustive(60), DensityMode::Left).unwrap(),
            DensityVerdict::Counterexample { lo: e(&tt, "0:0"), hi: e(&tt, "0:1") }
        );
        assert!(check_dense_sampled(&tt, &d, SampleBudget::exhaustive(60), DensityMode::Right)
            .unwrap()
            .passed());
        let missing_min = DenseSet::without(&tt, vec![e(&tt, "0:0")]).unwrap();
        assert!(!check_dense_sampled(&tt, &missing_min, SampleBudget::exhaustive(10), DensityMode::Left)
            .unwrap()
            .passed());
    }

    #[test]
    fn indices_within_the_set() {
        let w2 = t("w+fin(2)");
        let d = DenseSet::without(&w2, vec![e(&w2, "1:0")]).unwrap();
        let listed: Vec<_> = d.iter().unwrap().take(6).collect();
        for (n, x) in listed.iter().enumerate() {
            assert_eq!(d.index_of(x).unwrap(), Some(BigUint::from(n)));
        }
        assert_eq!(d.index_of(&e(&w2, "1:1")).unwrap(), Some(BigUint::from(2u32)));
        assert_eq!(d.index_of(&e(&w2, "1:0")).unwrap(), None);
    }

    #[test]
    fn endpoints_are_restored() {
        let w2 = t("w+fin(2)");
        let d = DenseSet::without(&w2, vec![e(&w2, "0:0"), e(&w2, "1:0"), e(&w2, "1:1")]).unwrap();
        let d = d.with_endpoints();
        assert!(d.contains(&e(&w2, "0:0")) && d.contains(&e(&w2, "1:1")));
        assert!(!d.contains(&e(&w2, "1:0")));
    }
}
