//! Property suites run from the command line.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use linord::dense::{check_dense_sampled, DensityMode};
use linord::embed::{embed_to_reals, jump_rational, universal_embed};
use linord::{
    canonical_dense, compare, embeds_into_reals, format_elem, index_of, neighbor, nth, parse_elem,
    sided_dense, Elem, OrderTerm, Result, Side, Sided,
};
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{budget, term};
use crate::{Report, Sampling, Suite};

/// Elements are drawn from this enumeration window.
const WINDOW: u64 = 1000;

#[derive(Debug, Serialize)]
struct Check {
    check: &'static str,
    cases: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
}

struct Tally {
    check: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(check: &'static str) -> Self {
        Tally {
            check,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn done(self) -> Check {
        Check {
            check: self.check,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn sample(t: &OrderTerm, rng: &mut ChaCha8Rng) -> Option<Elem> {
    let window = match t.finite_size() {
        Some(n) => u64::try_from(&n).unwrap_or(WINDOW).min(WINDOW),
        None => WINDOW,
    };
    if window == 0 {
        return None;
    }
    nth(t, &BigUint::from(rng.gen_range(0..window))).ok().flatten()
}

fn order(t: &OrderTerm, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut laws = Tally::new("compare_laws");
    let mut nbr = Tally::new("neighbor_symmetry");
    for _ in 0..count {
        let (Some(x), Some(y), Some(z)) = (sample(t, rng), sample(t, rng), sample(t, rng)) else {
            break;
        };
        let xy = compare(t, &x, &y)?;
        let yz = compare(t, &y, &z)?;
        let xz = compare(t, &x, &z)?;
        let ok = compare(t, &y, &x)? == xy.reverse()
            && (xy == Ordering::Equal) == (x == y)
            && !(xy.is_le() && yz.is_le() && xz.is_gt());
        laws.case(ok, || format!("{x} {y} {z}"));
        let succ_ok = match neighbor(t, &x, Side::Succ)? {
            Some(s) => neighbor(t, &s, Side::Pred)?.as_ref() == Some(&x),
            None => true,
        };
        let pred_ok = match neighbor(t, &x, Side::Pred)? {
            Some(p) => neighbor(t, &p, Side::Succ)?.as_ref() == Some(&x),
            None => true,
        };
        nbr.case(succ_ok && pred_ok, || x.to_string());
    }
    Ok(vec![laws.done(), nbr.done()])
}

fn enumeration(t: &OrderTerm, count: usize) -> Result<Vec<Check>> {
    let mut unique = Tally::new("enumeration_unique");
    let mut indexed = Tally::new("index_inverts_enumeration");
    let mut seen = HashSet::new();
    for (k, e) in linord::enumerate(t)?.take(count).enumerate() {
        indexed.case(index_of(t, &e)? == BigUint::from(k), || e.to_string());
        unique.case(seen.insert(e.clone()), || e.to_string());
    }
    Ok(vec![unique.done(), indexed.done()])
}

fn roundtrip(t: &OrderTerm, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut terms = Tally::new("term_roundtrip");
    let text = t.to_string();
    terms.case(linord::parse_term(&text)? == *t, || text.clone());
    let mut elems = Tally::new("element_roundtrip");
    for _ in 0..count {
        let Some(x) = sample(t, rng) else { break };
        let back = parse_elem(t, &format_elem(&x))?;
        elems.case(back == x, || x.to_string());
    }
    Ok(vec![terms.done(), elems.done()])
}

fn dense(t: &OrderTerm, sampling: &Sampling, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut check = |name, d: linord::DenseSet, mode| -> Result<()> {
        let mut tally = Tally::new(name);
        let verdict = check_dense_sampled(t, &d, budget(sampling, seed), mode)?;
        tally.case(verdict.passed(), || format!("{verdict:?}"));
        out.push(tally.done());
        Ok(())
    };
    check("canonical_dense", canonical_dense(t)?, DensityMode::Dense)?;
    if embeds_into_reals(t) {
        check("left_dense", sided_dense(t, Sided::Left)?, DensityMode::Left)?;
        check("right_dense", sided_dense(t, Sided::Right)?, DensityMode::Right)?;
    }
    Ok(out)
}

fn embed(t: &OrderTerm, count: usize, sampling: &Sampling, seed: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let emb = universal_embed(t, None, budget(sampling, seed))?;
    let mut sound = Tally::new("universal_embed_sound");
    let mut injective = Tally::new("embed_to_reals_injective");
    let reals = if embeds_into_reals(t) { Some(embed_to_reals(t)?) } else { None };
    for _ in 0..count {
        let (Some(x), Some(y)) = (sample(t, rng), sample(t, rng)) else { break };
        let want = compare(t, &x, &y)?;
        let got = emb.certified_compare(&x, &y).map(|c| c.ordering);
        sound.case(got.as_ref() == Ok(&want), || format!("{x} {y}: {got:?}"));
        if let Some(r) = &reals {
            let got = r.certified_compare(&x, &y);
            let ok = matches!(&got, Ok(c) if c.ordering == want && c.gap_exponent().is_some() == (x != y));
            injective.case(ok, || format!("{x} {y}: {got:?}"));
        }
    }
    let mut out = vec![sound.done()];
    if reals.is_some() {
        out.push(injective.done());
    }
    Ok(out)
}

fn jumps(t: &OrderTerm, count: usize) -> Result<Vec<Check>> {
    if !embeds_into_reals(t) {
        return Ok(Vec::new());
    }
    let emb = embed_to_reals(t)?;
    let mut inside = Tally::new("jump_rational_inside_gap");
    let mut distinct = Tally::new("jump_rationals_distinct");
    let mut seen = HashSet::new();
    for j in linord::jumps(t)?.take(count) {
        let w = jump_rational(&emb, &j)?;
        let tail = num_rational::BigRational::new(1.into(), (BigUint::from(1u32) << w.stage).into());
        let lo = emb.image(&j.left)?.lower(w.stage)? + tail;
        let hi = emb.image(&j.right)?.lower(w.stage)?;
        inside.case(lo < w.rational && w.rational < hi, || format!("{} {}", j.left, j.right));
        distinct.case(seen.insert(w.rational.clone()), || format!("{} {}", j.left, j.right));
    }
    Ok(vec![inside.done(), distinct.done()])
}

pub fn run(text: &str, suite: Suite, count: usize, sampling: &Sampling, seed: u64) -> Result<Report> {
    let t = term(text)?;
    t.require_concrete()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = suite == Suite::All;
    let mut checks = Vec::new();
    if all || suite == Suite::Order {
        checks.extend(order(&t, count, &mut rng)?);
    }
    if all || suite == Suite::Enumerate {
        checks.extend(enumeration(&t, count)?);
    }
    if all || suite == Suite::Roundtrip {
        checks.extend(roundtrip(&t, count, &mut rng)?);
    }
    if all || suite == Suite::Dense {
        checks.extend(dense(&t, sampling, seed)?);
    }
    if all || suite == Suite::Embed {
        checks.extend(embed(&t, count, sampling, seed, &mut rng)?);
    }
    if all || suite == Suite::Jumps {
        checks.extend(jumps(&t, count.min(500))?);
    }
    let passed = checks.iter().all(|c| c.failures == 0);
    let mut s = String::new();
    for c in &checks {
        let status = if c.failures == 0 { "ok" } else { "FAIL" };
        let _ = write!(s, "{status:<4} {:<28} {} cases", c.check, c.cases);
        if let Some(f) = &c.first_failure {
            let _ = write!(s, ", {} failures, first: {f}", c.failures);
        }
        s.push('\n');
    }
    let suite_name = format!("{suite:?}").to_lowercase();
    let mut report = Report::new(
        serde_json::json!({
            "term": t.to_string(),
            "suite": suite_name,
            "seed": seed,
            "checks": checks,
            "passed": passed,
        }),
        s,
    );
    report.ok = passed;
    Ok(report)
}
