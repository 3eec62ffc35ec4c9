//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the PASS/FAIL lines always reach the console.

mod common;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use linord::dense::{check_dense_sampled, DenseSet, DensityMode, SampleBudget};
use linord::embed::{collision_fixture, embed_to_reals, jump_rational, universal_embed};
use linord::homog::rationals_times_two;
use linord::{
    canonical_dense, cardinality, classify, compare, embeds_into_reals, extend_to_automorphism,
    format_elem, format_term, is_separable, jump_cardinality, jumps, neighbor, nth, parse_elem,
    parse_term, quotient_map, sided_dense, validate_partial_map, Bit, CardinalClass, Direction, Elem,
    OrderTerm, PartialMap, Side, Sided, Validation, ViolationKind,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{golden_dir, run_json, CASES};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

const CATALOG: [&str; 10] = [
    "fin(5)", "w", "w*", "Z", "Q", "Z*2", "Q*2", "(Q*2)*2", "fin(2)+Q", "w+fin(2)",
];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample(t: &OrderTerm, r: &mut ChaCha8Rng, window: u64) -> Elem {
    let window = t.finite_size().map_or(window, |n| u64::try_from(&n).unwrap().min(window));
    nth(t, &BigUint::from(r.gen_range(0..window))).unwrap().unwrap()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// 1 ---------------------------------------------------------------------

fn c1_reals_times_two() -> Outcome {
    let (out, code) = run_json(&["classify", "R*2"]);
    ensure!(code == 0, "exit code {code}");
    let v: Value = serde_json::from_str(&out).map_err(err)?;
    ensure!(v["separable"] == true, "separable = {}", v["separable"]);
    ensure!(v["jump_cardinality"] == "continuum", "jump_cardinality = {}", v["jump_cardinality"]);
    ensure!(v["embeds_into_reals"] == false, "embeds_into_reals = {}", v["embeds_into_reals"]);
    ensure!(v["left_separable"] == false, "left_separable = {}", v["left_separable"]);
    ensure!(v["right_separable"] == false, "right_separable = {}", v["right_separable"]);
    Ok("separable, continuum jumps, not embeddable, not left separable".into())
}

// 2 ---------------------------------------------------------------------

fn c2_canonical_dense_of_reals_times_two() -> Outcome {
    let rt = t("R*2");
    let d = canonical_dense(&rt).map_err(err)?;
    let mut r = rng(2);
    let (mut accepted, mut rejected) = (0, 0);
    for k in 0..200 {
        let p: i64 = r.gen_range(-50..=50);
        let q: i64 = r.gen_range(1..=20);
        let bit = r.gen_range(0..2);
        // even k: a rational point; odd k: a quadratic surd, rational only
        // when the radicand is a perfect square
        let (text, rational) = if k % 2 == 0 {
            (format!("{p}/{q}.{bit}"), true)
        } else {
            let n: u32 = r.gen_range(2..=30);
            let c: i64 = r.gen_range(1..=5);
            let square = (1..=6u32).any(|s| s * s == n);
            (format!("{p}/{q}+{c}*sqrt({n}).{bit}"), square)
        };
        let x = parse_elem(&rt, &text).map_err(err)?;
        let member = d.contains(&x);
        ensure!(member == rational, "{text}: member = {member}, rational = {rational}");
        if member {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    ensure!(accepted > 0 && rejected > 0, "degenerate sample");
    Ok(format!("200 queries: {accepted} rational pairs accepted, {rejected} irrational rejected"))
}

// 3 ---------------------------------------------------------------------

/// Points of a finite term as structural paths, listed in increasing order.
fn oracle_points(t: &OrderTerm) -> Vec<Vec<u64>> {
    match t {
        OrderTerm::Finite(n) => (0..*n).map(|k| vec![k]).collect(),
        OrderTerm::Sum(parts) => parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                oracle_points(p).into_iter().map(move |mut path| {
                    path.insert(0, i as u64);
                    path
                })
            })
            .collect(),
        OrderTerm::Times2(b) => oracle_points(b)
            .into_iter()
            .flat_map(|p| {
                let mut one = p.clone();
                let mut zero = p;
                zero.push(0);
                one.push(1);
                [zero, one]
            })
            .collect(),
        _ => unreachable!("finite terms only"),
    }
}

fn path_to_elem(t: &OrderTerm, path: &[u64]) -> Elem {
    match t {
        OrderTerm::Finite(_) => Elem::Nat(path[0]),
        OrderTerm::Sum(parts) => {
            let i = path[0] as usize;
            Elem::in_sum(i, path_to_elem(&parts[i], &path[1..]))
        }
        OrderTerm::Times2(b) => {
            let (bit, inner) = path.split_last().unwrap();
            Elem::pair(path_to_elem(b, inner), if *bit == 0 { Bit::Zero } else { Bit::One })
        }
        _ => unreachable!(),
    }
}

fn oracle_size(t: &OrderTerm) -> u64 {
    match t {
        OrderTerm::Finite(n) => *n,
        OrderTerm::Sum(parts) => parts.iter().map(oracle_size).sum(),
        OrderTerm::Times2(b) => 2 * oracle_size(b),
        _ => unreachable!(),
    }
}

/// Normalized terms of depth ≤ 3 over `fin(0..4)` with sums and doubling.
fn finite_terms() -> Vec<OrderTerm> {
    let atoms: Vec<OrderTerm> = (0..=4).map(OrderTerm::Finite).collect();
    let mut depth2 = atoms.clone();
    for a in &atoms {
        depth2.push(OrderTerm::Times2(Box::new(a.clone())));
        for b in &atoms {
            depth2.push(OrderTerm::Sum(vec![a.clone(), b.clone()]));
            for c in &atoms {
                depth2.push(OrderTerm::Sum(vec![a.clone(), b.clone(), c.clone()]));
            }
        }
    }
    let mut all = depth2.clone();
    for a in &depth2 {
        all.push(OrderTerm::Times2(Box::new(a.clone())));
        for b in &depth2 {
            all.push(OrderTerm::Sum(vec![a.clone(), b.clone()]));
        }
    }
    let mut seen = BTreeSet::new();
    all.into_iter()
        .map(|t| t.normalize())
        .filter(|t| t.depth() <= 3 && oracle_size(t) <= 64)
        .filter(|t| seen.insert(t.to_string()))
        .collect()
}

fn check_finite_term(t: &OrderTerm) -> Result<(), String> {
    let pts: Vec<Elem> = oracle_points(t).iter().map(|p| path_to_elem(t, p)).collect();
    let n = pts.len();
    ensure!(cardinality(t) == CardinalClass::fin(n as u64), "{t}: cardinality");
    let adjacent = n.saturating_sub(1) as u64;
    ensure!(jump_cardinality(t) == CardinalClass::fin(adjacent), "{t}: jump cardinality");
    let stream: Vec<(Elem, Elem)> = jumps(t).map_err(err)?.map(|j| (j.left, j.right)).collect();
    let want: HashSet<(Elem, Elem)> = pts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    ensure!(stream.len() == want.len(), "{t}: {} jumps streamed", stream.len());
    ensure!(stream.iter().all(|j| want.contains(j)), "{t}: stray jump");
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            ensure!(compare(t, x, y).map_err(err)? == i.cmp(&j), "{t}: compare {x} {y}");
        }
        let succ = neighbor(t, x, Side::Succ).map_err(err)?;
        ensure!(succ.as_ref() == pts.get(i + 1), "{t}: succ {x}");
        let pred = neighbor(t, x, Side::Pred).map_err(err)?;
        ensure!(pred.as_ref() == i.checked_sub(1).map(|k| &pts[k]), "{t}: pred {x}");
    }
    let listed: HashSet<Elem> = linord::enumerate(t).map_err(err)?.collect();
    ensure!(listed.len() == n && pts.iter().all(|p| listed.contains(p)), "{t}: enumeration");

    ensure!(is_separable(t) && embeds_into_reals(t), "{t}: classification");
    let r = classify(t);
    ensure!(
        r.left_separable == r.embeds_into_reals && r.right_separable == r.embeds_into_reals,
        "{t}: report invariant"
    );
    let d = canonical_dense(t).map_err(err)?;
    ensure!(pts.iter().all(|p| d.contains(p)), "{t}: canonical set misses a point");
    let all_pairs = SampleBudget::exhaustive(64);
    let v = check_dense_sampled(t, &d, all_pairs, DensityMode::Dense).map_err(err)?;
    ensure!(v.passed(), "{t}: canonical set judged not dense");
    // dropping a point keeps density exactly when nothing pins it: in a
    // finite order that means it is an endpoint
    let probes = [pts.first(), pts.get(n / 2), pts.last()];
    for (k, p) in probes.into_iter().flatten().enumerate() {
        let pos = pts.iter().position(|q| q == p).unwrap();
        let still_dense = pos == 0 || pos == n - 1;
        let without = DenseSet::without(t, vec![p.clone()]).map_err(err)?;
        let v = check_dense_sampled(t, &without, all_pairs, DensityMode::Dense).map_err(err)?;
        ensure!(v.passed() == still_dense, "{t}: dropping {p} (probe {k})");
    }
    Ok(())
}

fn c3_finite_oracle() -> Outcome {
    let terms = finite_terms();
    ensure!(terms.len() >= 300, "only {} terms generated", terms.len());
    for t in &terms {
        check_finite_term(t)?;
    }
    Ok(format!("{} terms agree with the explicit listing", terms.len()))
}

// 4 ---------------------------------------------------------------------

fn c4_embedding_soundness() -> Outcome {
    let mut r = rng(4);
    let mut pairs = 0;
    for name in CATALOG {
        let t = t(name);
        let emb = universal_embed(&t, None, SampleBudget::default()).map_err(err)?;
        let reals = embed_to_reals(&t).map_err(err)?;
        for _ in 0..1000 {
            let (x, y) = (sample(&t, &mut r, 1000), sample(&t, &mut r, 1000));
            let (x, y) = match compare(&t, &x, &y).map_err(err)? {
                Ordering::Greater => (y, x),
                _ => (x, y),
            };
            let want = if x == y { Ordering::Equal } else { Ordering::Less };
            let c = emb.certified_compare(&x, &y).map_err(err)?;
            ensure!(c.ordering == want, "{t}: universal {x} {y} gave {:?}", c.ordering);
            let c = reals.certified_compare(&x, &y).map_err(err)?;
            ensure!(c.ordering == want, "{t}: reals {x} {y} gave {:?}", c.ordering);
            ensure!((x != y) == c.gap_exponent().is_some(), "{t}: reals {x} {y} not separated");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs over {} terms, zero failures", CATALOG.len()))
}

// 5 ---------------------------------------------------------------------

fn c5_collision() -> Outcome {
    let (out, code) = run_json(&["demo-collision"]);
    ensure!(code == 0, "exit code {code}");
    let v: Value = serde_json::from_str(&out).map_err(err)?;
    let zero = serde_json::json!({ "real": "0", "bit": 0 });
    ensure!(v["naive_collision"] == true, "no naive collision reported");
    ensure!(v["naive_x"] == zero && v["naive_b"] == zero, "naive images {} {}", v["naive_x"], v["naive_b"]);
    ensure!(v["robust_separated"] == true, "robust images not separated");
    let r = collision_fixture().map_err(err)?;
    ensure!(r.density.passed(), "fixture set not dense");
    ensure!(r.naive_x.real == BigRational::from_integer(0.into()) && r.naive_x == r.naive_b, "exact naive images");
    let gap = r.gap_exp.ok_or("no certified gap")?;
    let lo: BigRational = r.robust_x.lower.parse().map_err(err)?;
    let hi: BigRational = r.robust_b.lower.parse().map_err(err)?;
    ensure!(lo < hi, "robust lower approximants not ordered");
    Ok(format!("naive e(1:0) = e(1:1) = (0, 0); robust gap ≥ 2^-{gap}"))
}

// 6 ---------------------------------------------------------------------

fn c6_sided_density() -> Outcome {
    let sample = SampleBudget {
        pairs: 200,
        budget: 2000,
        seed: 6,
    };
    let mut checked = 0;
    for name in CATALOG {
        let t = t(name);
        if !classify(&t).embeds_into_reals {
            continue;
        }
        for (side, mode) in [(Sided::Left, DensityMode::Left), (Sided::Right, DensityMode::Right)] {
            let d = sided_dense(&t, side).map_err(err)?;
            let v = check_dense_sampled(&t, &d, sample, mode).map_err(err)?;
            ensure!(v.passed(), "{t} {side:?}: {v:?}");
            checked += 1;
        }
    }
    ensure!(sided_dense(&t("R*2"), Sided::Left).is_err(), "sided_dense(R*2, left) succeeded");
    ensure!(sided_dense(&t("R*2"), Sided::Right).is_err(), "sided_dense(R*2, right) succeeded");
    Ok(format!("{checked} sided checks pass; R*2 rejected"))
}

// 7 ---------------------------------------------------------------------

fn c7_jump_witnesses() -> Outcome {
    for name in ["Z", "Q*2"] {
        let t = t(name);
        let emb = embed_to_reals(&t).map_err(err)?;
        let mut seen = HashSet::new();
        let mut count = 0;
        for j in jumps(&t).map_err(err)?.take(100) {
            let w = jump_rational(&emb, &j).map_err(err)?;
            let tail = BigRational::new(1.into(), (BigUint::from(1u32) << w.stage).into());
            // f(left) ≤ v(left) + 2^-N < q < v(right) ≤ f(right)
            let above_left = emb.image(&j.left).map_err(err)?.lower(w.stage).map_err(err)? + tail;
            let below_right = emb.image(&j.right).map_err(err)?.lower(w.stage).map_err(err)?;
            ensure!(above_left < w.rational && w.rational < below_right, "{t}: ({}, {})", j.left, j.right);
            ensure!(seen.insert(w.rational), "{t}: repeated rational at ({}, {})", j.left, j.right);
            count += 1;
        }
        ensure!(count == 100, "{t}: only {count} jumps");
    }
    Ok("100 distinct interior rationals for Z and for Q*2".into())
}

// 8 ---------------------------------------------------------------------

fn point(q: BigRational, bit: Bit) -> Elem {
    Elem::pair(Elem::Rat(q), bit)
}

fn random_rat(r: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(r.gen_range(-100i64..=100).into(), r.gen_range(1i64..=16).into())
}

fn random_bit(r: &mut ChaCha8Rng) -> Bit {
    if r.gen_bool(0.5) {
        Bit::One
    } else {
        Bit::Zero
    }
}

fn flip(b: Bit) -> Bit {
    match b {
        Bit::Zero => Bit::One,
        Bit::One => Bit::Zero,
    }
}

fn bit_of(e: &Elem) -> Bit {
    match e {
        Elem::Pair(_, b) => *b,
        _ => unreachable!(),
    }
}

fn valid_map(r: &mut ChaCha8Rng) -> PartialMap {
    let size = r.gen_range(0..=6);
    let mut src: Vec<BigRational> = (0..size).map(|_| random_rat(r)).collect();
    let mut dst: Vec<BigRational> = (0..size).map(|_| random_rat(r)).collect();
    for v in [&mut src, &mut dst] {
        v.sort();
        v.dedup();
    }
    let mut pairs = Vec::new();
    for (q, p) in src.into_iter().zip(dst) {
        if pairs.len() + 2 <= size && r.gen_bool(0.3) {
            pairs.push((point(q.clone(), Bit::Zero), point(p.clone(), Bit::Zero)));
            pairs.push((point(q, Bit::One), point(p, Bit::One)));
        } else if pairs.len() < size {
            let b = random_bit(r);
            pairs.push((point(q, b), point(p, b)));
        }
    }
    pairs.shuffle(r);
    PartialMap::new(pairs)
}

/// A corrupted copy of a map with at least two single points, and the
/// relation it breaks.
fn corrupt(r: &mut ChaCha8Rng, k: usize) -> (PartialMap, ViolationKind) {
    let q = |r: &mut ChaCha8Rng| random_rat(r);
    match k % 3 {
        0 => {
            let b = random_bit(r);
            let pm = PartialMap::new(vec![(point(q(r), b), point(q(r), flip(b)))]);
            let kind = if b == Bit::Zero { ViolationKind::JLeft } else { ViolationKind::JRight };
            (pm, kind)
        }
        1 => {
            let (mut a, mut b) = (q(r), q(r));
            while a == b {
                b = q(r);
            }
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            let (s, t) = (random_bit(r), random_bit(r));
            let base = q(r);
            let step = BigRational::from_integer(r.gen_range(1i64..5).into());
            // increasing sources, decreasing targets
            let pm = PartialMap::new(vec![
                (point(a, s), point(&base + &step, s)),
                (point(b, t), point(base, t)),
            ]);
            (pm, ViolationKind::Order)
        }
        _ => {
            let src = q(r);
            let lo = q(r);
            let hi = &lo + BigRational::from_integer(r.gen_range(1i64..5).into());
            let pm = PartialMap::new(vec![
                (point(src.clone(), Bit::Zero), point(lo, Bit::Zero)),
                (point(src, Bit::One), point(hi, Bit::One)),
            ]);
            (pm, ViolationKind::JRelation)
        }
    }
}

fn c8_jump_homogeneity() -> Outcome {
    let q2 = rationals_times_two();
    let mut r = rng(8);
    for m in 0..200 {
        let pm = valid_map(&mut r);
        ensure!(validate_partial_map(&pm).map_err(err)? == Validation::Valid, "map {m} judged invalid:\n{pm}");
        let a = extend_to_automorphism(&pm).map_err(err)?;
        for (s, d) in &pm.pairs {
            ensure!(&a.apply(s, Direction::Forward).map_err(err)? == d, "map {m}: {s} not sent to {d}");
        }
        for _ in 0..1000 {
            let x = point(random_rat(&mut r), random_bit(&mut r));
            let y = point(random_rat(&mut r), random_bit(&mut r));
            let gx = a.apply(&x, Direction::Forward).map_err(err)?;
            let gy = a.apply(&y, Direction::Forward).map_err(err)?;
            ensure!(compare(&q2, &x, &y).unwrap() == compare(&q2, &gx, &gy).unwrap(), "map {m}: order at {x} {y}");
        }
        for _ in 0..1000 {
            let x = point(random_rat(&mut r), random_bit(&mut r));
            let gx = a.apply(&x, Direction::Forward).map_err(err)?;
            ensure!(bit_of(&gx) == bit_of(&x), "map {m}: bit at {x}");
            let cls = quotient_map(&x).map_err(err)?;
            let partner = a.apply(&point(cls.clone(), flip(bit_of(&x))), Direction::Forward).map_err(err)?;
            ensure!(quotient_map(&partner).unwrap() == quotient_map(&gx).unwrap(), "map {m}: J at {x}");
            ensure!(quotient_map(&gx).unwrap() == a.base(&cls), "map {m}: quotient square at {x}");
            ensure!(a.apply(&gx, Direction::Inverse).map_err(err)? == x, "map {m}: inverse at {x}");
        }
    }
    for k in 0..50 {
        let (pm, want) = corrupt(&mut r, k);
        match validate_partial_map(&pm).map_err(err)? {
            Validation::Violation(v) if v.kind == want => {}
            other => return Err(format!("corrupted map {k} ({want:?}): {other:?}")),
        }
        ensure!(extend_to_automorphism(&pm).is_err(), "corrupted map {k} extended");
    }
    Ok("200 maps extended and preserved; 50 corrupted maps rejected with the right relation".into())
}

// 9 ---------------------------------------------------------------------

fn random_term(r: &mut ChaCha8Rng, depth: u32, reals: bool) -> OrderTerm {
    let atom = |r: &mut ChaCha8Rng| match r.gen_range(0..7) {
        0 => OrderTerm::Omega,
        1 => OrderTerm::OmegaStar,
        2 => OrderTerm::Ints,
        3 => OrderTerm::Rats,
        4 if reals => OrderTerm::Reals,
        _ => OrderTerm::Finite(r.gen_range(0..6)),
    };
    if depth == 0 {
        return atom(r);
    }
    match r.gen_range(0..3) {
        0 => atom(r),
        1 => OrderTerm::Times2(Box::new(random_term(r, depth - 1, reals))),
        _ => {
            let n = r.gen_range(2..=3);
            OrderTerm::Sum((0..n).map(|_| random_term(r, depth - 1, reals)).collect())
        }
    }
}

fn c9_round_trips() -> Outcome {
    let mut r = rng(9);
    for _ in 0..500 {
        let raw = random_term(&mut r, 4, true);
        let text = format_term(&raw);
        let back = parse_term(&text).map_err(err)?;
        ensure!(back == raw.normalize(), "term {text}");
        ensure!(format_term(&back) == format_term(&raw.normalize()), "term text {text}");
    }
    let mut elems = 0;
    while elems < 500 {
        let t = random_term(&mut r, 3, false).normalize();
        if t.is_empty() {
            continue;
        }
        let x = sample(&t, &mut r, 5000);
        let text = format_elem(&x);
        ensure!(parse_elem(&t, &text).map_err(err)? == x, "element {text} of {t}");
        elems += 1;
    }
    for (name, args, code) in CASES {
        let first = run_json(args);
        ensure!(first.1 == *code, "{name}: exit code {}", first.1);
        let want = std::fs::read_to_string(golden_dir().join(format!("{name}.json"))).map_err(err)?;
        ensure!(first.0 == want, "{name}: differs from golden file");
        ensure!(run_json(args) == first, "{name}: second run differs");
    }
    Ok(format!("500 terms, 500 elements, {} golden files", CASES.len()))
}

// -----------------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 9] = [
        ("R*2 classification", 1, c1_reals_times_two),
        ("canonical-dense fidelity", 1, c2_canonical_dense_of_reals_times_two),
        ("finite-oracle equivalence", 30, c3_finite_oracle),
        ("embedding soundness", 60, c4_embedding_soundness),
        ("collision regression", 1, c5_collision),
        ("sided density", 30, c6_sided_density),
        ("jump witnesses", 10, c7_jump_witnesses),
        ("jump homogeneity on Q*2", 30, c8_jump_homogeneity),
        ("round-trips", 5, c9_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(*limit) => {
                Err(format!("{detail}; over the {limit} s limit"))
            }
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!(
            "{status} criterion {} ({name}): {:.3} s of {limit} s; {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
