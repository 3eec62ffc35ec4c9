use std::fmt::Write as _;
use std::path::Path;

use linord::dense::{check_dense_sampled, DensityMode, SampleBudget};
use linord::embed::{
    collision_fixture, decimal, embed_rationals, embed_to_reals, record, universal_embed, Placement,
};
use linord::homog::rationals_times_two;
use linord::{
    canonical_dense, classify as classify_term, compare as compare_elems, extend_to_automorphism,
    index_of, jump_relations, neighbor as neighbor_of, parse_elem, parse_term, quotient_map,
    sided_dense, DenseSet, Direction, Elem, Error, OrderTerm, PartialMap, Result, Side, Sided,
};
use serde_json::{json, Value};

use crate::{ModeArg, Report, Sampling, SideArg, Target};

/// Back-and-forth placements are capped at this many points.
const MAX_PLACED: u64 = 1 << 20;

pub fn term(text: &str) -> Result<OrderTerm> {
    parse_term(text)
}

fn elem(t: &OrderTerm, text: &str) -> Result<Elem> {
    parse_elem(t, text)
}

pub fn budget(s: &Sampling, seed: u64) -> SampleBudget {
    SampleBudget {
        pairs: s.pairs,
        budget: s.budget,
        seed,
    }
}

fn dense_error(desc: &str, msg: &str) -> Error {
    Error::Syntax {
        pos: 0,
        msg: format!("dense set `{desc}`: {msg}"),
    }
}

/// `canonical`, `left`, `right`, `omit:e1,e2` or `only:e1,e2`.
pub fn dense_set(t: &OrderTerm, desc: &str) -> Result<DenseSet> {
    let list = |rest: &str| -> Result<Vec<Elem>> {
        rest.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| elem(t, s))
            .collect()
    };
    match desc.split_once(':') {
        None => match desc {
            "canonical" => canonical_dense(t),
            "left" => sided_dense(t, Sided::Left),
            "right" => sided_dense(t, Sided::Right),
            _ => Err(dense_error(desc, "expected canonical, left, right, omit:… or only:…")),
        },
        Some(("omit", rest)) => DenseSet::without(t, list(rest)?),
        Some(("only", rest)) => DenseSet::only(t, list(rest)?),
        Some(_) => Err(dense_error(desc, "unknown kind")),
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<width$}  {v}");
    }
    s
}

pub fn classify(text: &str) -> Result<Report> {
    let t = term(text)?;
    let r = classify_term(&t);
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["term"] = json!(t.to_string());
    let text = table(&[
        ("term", t.to_string()),
        ("cardinality", r.cardinality.to_string()),
        ("jump_cardinality", r.jump_cardinality.to_string()),
        ("separable", r.separable.to_string()),
        ("left_separable", r.left_separable.to_string()),
        ("right_separable", r.right_separable.to_string()),
        ("embeds_into_reals", r.embeds_into_reals.to_string()),
        ("has_min", r.has_min.to_string()),
        ("has_max", r.has_max.to_string()),
    ]);
    Ok(Report::new(json, text))
}

pub fn enumerate(text: &str, count: usize) -> Result<Report> {
    let t = term(text)?;
    let elems: Vec<String> = linord::enumerate(&t)?.take(count).map(|e| e.to_string()).collect();
    let mut s = String::new();
    for (i, e) in elems.iter().enumerate() {
        let _ = writeln!(s, "{i}\t{e}");
    }
    Ok(Report::new(json!({ "term": t.to_string(), "elements": elems }), s))
}

pub fn jumps(text: &str, count: usize) -> Result<Report> {
    let t = term(text)?;
    let js: Vec<(String, String)> = linord::jumps(&t)?
        .take(count)
        .map(|j| (j.left.to_string(), j.right.to_string()))
        .collect();
    let mut s = String::new();
    for (l, r) in &js {
        let _ = writeln!(s, "{l} < {r}");
    }
    let list: Vec<Value> = js.iter().map(|(l, r)| json!({ "left": l, "right": r })).collect();
    Ok(Report::new(
        json!({
            "term": t.to_string(),
            "jump_cardinality": linord::jump_cardinality(&t).to_string(),
            "jumps": list,
        }),
        s,
    ))
}

fn ordering_str(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "LT",
        std::cmp::Ordering::Equal => "EQ",
        std::cmp::Ordering::Greater => "GT",
    }
}

pub fn compare(text: &str, x: &str, y: &str, dense: &str, sampling: &Sampling, seed: u64) -> Result<Report> {
    let t = term(text)?;
    let (x, y) = (elem(&t, x)?, elem(&t, y)?);
    let ord = compare_elems(&t, &x, &y)?;
    let d = dense_set(&t, dense)?;
    let emb = universal_embed(&t, Some(d), budget(sampling, seed))?;
    let cert = emb.certified_compare(&x, &y)?;
    let how = match &cert.witness {
        linord::embed::Witness::Identical => "identical".to_string(),
        linord::embed::Witness::Separated { separator, stage } => {
            format!("separated by {separator} at stage {stage} (gap ≥ 2^-{stage})")
        }
        linord::embed::Witness::Bits { lo_bit, hi_bit } => format!("equal reals, bits {lo_bit} < {hi_bit}"),
    };
    Ok(Report::new(
        json!({
            "term": t.to_string(),
            "x": x.to_string(),
            "y": y.to_string(),
            "ordering": ordering_str(ord),
            "certificate": cert,
            "density": emb.density(),
        }),
        format!("{x} {} {y}\n{how}", ordering_str(ord)),
    ))
}

pub fn neighbor(text: &str, element: &str, side: SideArg) -> Result<Report> {
    let t = term(text)?;
    let x = elem(&t, element)?;
    let (side, name) = match side {
        SideArg::Succ => (Side::Succ, "succ"),
        SideArg::Pred => (Side::Pred, "pred"),
    };
    let n = neighbor_of(&t, &x, side)?.map(|e| e.to_string());
    Ok(Report::new(
        json!({ "term": t.to_string(), "element": x.to_string(), "side": name, "neighbor": n }),
        format!("{name}({x}) = {}", n.as_deref().unwrap_or("none")),
    ))
}

pub fn bounds(text: &str) -> Result<Report> {
    let t = term(text)?;
    let b = linord::bounds(&t);
    let show = |e: &Option<Elem>| e.as_ref().map(|e| e.to_string());
    let (min, max) = (show(&b.min), show(&b.max));
    let text = table(&[
        ("has_min", b.has_min.to_string()),
        ("has_max", b.has_max.to_string()),
        ("min", min.clone().unwrap_or_else(|| "-".into())),
        ("max", max.clone().unwrap_or_else(|| "-".into())),
    ]);
    Ok(Report::new(
        json!({ "term": t.to_string(), "has_min": b.has_min, "has_max": b.has_max, "min": min, "max": max }),
        text,
    ))
}

pub fn relations(text: &str, x: &str, y: Option<&str>) -> Result<Report> {
    let t = term(text)?;
    let x = elem(&t, x)?;
    let y = y.map(|y| elem(&t, y)).transpose()?;
    let r = jump_relations(&t, &x, y.as_ref())?;
    let mut rows = vec![
        ("in_J_left", r.in_j_left.to_string()),
        ("in_J_right", r.in_j_right.to_string()),
    ];
    if let Some(j) = r.j_related {
        rows.push(("J_related", j.to_string()));
    }
    Ok(Report::new(serde_json::to_value(&r).expect("relations serialize"), table(&rows)))
}

pub fn member(text: &str, element: &str, dense: &str) -> Result<Report> {
    let t = term(text)?;
    let x = elem(&t, element)?;
    let d = dense_set(&t, dense)?;
    let m = d.contains(&x);
    Ok(Report::new(
        json!({ "term": t.to_string(), "element": x.to_string(), "dense": dense, "member": m }),
        format!("{x} {} {dense}", if m { "∈" } else { "∉" }),
    ))
}

pub fn check_dense(text: &str, dense: &str, mode: ModeArg, sampling: &Sampling, seed: u64) -> Result<Report> {
    let t = term(text)?;
    let d = dense_set(&t, dense)?;
    let (mode, name) = match mode {
        ModeArg::Dense => (DensityMode::Dense, "dense"),
        ModeArg::Left => (DensityMode::Left, "left"),
        ModeArg::Right => (DensityMode::Right, "right"),
    };
    let verdict = check_dense_sampled(&t, &d, budget(sampling, seed), mode)?;
    let text = match &verdict {
        linord::DensityVerdict::Evidence { pairs_checked, budget } => {
            format!("pass ({name}): {pairs_checked} pairs from the first {budget} elements; evidence, not proof")
        }
        linord::DensityVerdict::Counterexample { lo, hi } => format!("counterexample ({name}): ({lo}, {hi})"),
    };
    Ok(Report::new(
        json!({ "term": t.to_string(), "dense": dense, "mode": name, "verdict": verdict }),
        text,
    ))
}

pub fn embed(
    text: &str,
    target: Target,
    element: &str,
    precision: u64,
    dense: &str,
    sampling: &Sampling,
    seed: u64,
) -> Result<Report> {
    let t = term(text)?;
    let x = elem(&t, element)?;
    match target {
        Target::Q => {
            let idx = index_of(&t, &x)?;
            let placed = u64::try_from(&idx)
                .ok()
                .and_then(|i| i.checked_add(1))
                .filter(|n| *n <= MAX_PLACED)
                .ok_or_else(|| Error::IndexTooLarge(x.to_string()))?;
            let emb = embed_rationals(&t, linord::enumerate(&t)?.take(placed as usize), Placement::Midpoint)?;
            let image = emb.image(&x).expect("element was placed").clone();
            let image_text = image.to_string();
            Ok(Report::new(
                json!({
                    "term": t.to_string(),
                    "element": x.to_string(),
                    "target": "q",
                    "image": image_text,
                    "placed": placed,
                }),
                format!("i({x}) = {image_text}  ({placed} points placed)"),
            ))
        }
        Target::R2 => {
            let d = dense_set(&t, dense)?;
            let emb = universal_embed(&t, Some(d), budget(sampling, seed))?;
            let p = emb.image(&x)?;
            let rec = p.record(precision)?;
            let lower = p.real.lower(precision)?;
            Ok(Report::new(
                json!({
                    "term": t.to_string(),
                    "element": x.to_string(),
                    "target": "r2",
                    "dense": dense,
                    "point": rec,
                    "decimal": decimal(&lower, precision as usize),
                    "density": emb.density(),
                }),
                format!(
                    "e({x}) = ({} ±2^-{precision}, {})",
                    decimal(&lower, precision as usize),
                    p.bit.as_u8()
                ),
            ))
        }
        Target::R => {
            if dense != "canonical" {
                return Err(dense_error(dense, "the embedding into R uses its own dense set"));
            }
            let emb = embed_to_reals(&t)?;
            let real = emb.image(&x)?;
            let rec = record(&real, precision)?;
            let lower = real.lower(precision)?;
            Ok(Report::new(
                json!({
                    "term": t.to_string(),
                    "element": x.to_string(),
                    "target": "r",
                    "point": rec,
                    "decimal": decimal(&lower, precision as usize),
                }),
                format!("f({x}) = {} ±2^-{precision}", decimal(&lower, precision as usize)),
            ))
        }
    }
}

pub fn homog_extend(map: Option<&Path>, pairs: &[String], probes: &[String]) -> Result<Report> {
    let mut text = String::new();
    if let Some(path) = map {
        text = std::fs::read_to_string(path).map_err(|e| Error::Syntax {
            pos: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        })?;
        text.push('\n');
    }
    for p in pairs {
        text.push_str(p);
        text.push('\n');
    }
    let pm = PartialMap::parse(&text)?;
    let a = extend_to_automorphism(&pm)?;
    let t = rationals_times_two();
    let mut s = String::new();
    let _ = writeln!(s, "control points:");
    for (q, r) in &a.control_points {
        let _ = writeln!(s, "  {q} -> {r}");
    }
    let _ = writeln!(s, "tail slopes: {} / {}", a.left_slope, a.right_slope);
    let mut probe_json = Vec::new();
    for p in probes {
        let x = elem(&t, p)?;
        let fwd = a.apply(&x, Direction::Forward)?;
        let inv = a.apply(&x, Direction::Inverse)?;
        let _ = writeln!(s, "g({x}) = {fwd}    g^-1({x}) = {inv}    class {}", quotient_map(&x)?);
        probe_json.push(json!({ "element": x.to_string(), "forward": fwd.to_string(), "inverse": inv.to_string() }));
    }
    Ok(Report::new(
        json!({
            "map": pm.pairs.iter().map(|(s, d)| [s.to_string(), d.to_string()]).collect::<Vec<_>>(),
            "automorphism": a,
            "probes": probe_json,
        }),
        s,
    ))
}

pub fn demo_collision() -> Result<Report> {
    let r = collision_fixture()?;
    let mut s = String::new();
    let _ = writeln!(s, "term {}; x = {}, b = {}; D = carrier minus {{{}}}", r.term, r.x, r.b, r.x);
    let _ = writeln!(s, "density of D: {}", if r.density.passed() { "pass (exhaustive on 50 elements)" } else { "FAIL" });
    let _ = writeln!(s, "supremum map, i(0:n) = -2^-n, i(b) = 0:");
    for st in r.trace.iter().filter(|st| st.stage % 6 == 0) {
        let _ = writeln!(s, "  stage {:>2}: e1(x) = {}, e1(b) = {}", st.stage, st.e1_x, st.e1_b);
    }
    let _ = writeln!(
        s,
        "  limit: e(x) = ({}, {}), e(b) = ({}, {}) -> {}",
        r.naive_x.real,
        r.naive_x.bit,
        r.naive_b.real,
        r.naive_b.bit,
        if r.naive_collision { "COLLISION" } else { "distinct" }
    );
    let _ = writeln!(s, "weighted-sum embedding at stage {}:", linord::embed::ROBUST_STAGE);
    let _ = writeln!(s, "  e(x) = ({} ±2^{}, {})", r.robust_x.lower, r.robust_x.err_exp, r.robust_x.bit.unwrap_or(0));
    let _ = writeln!(s, "  e(b) = ({} ±2^{}, {})", r.robust_b.lower, r.robust_b.err_exp, r.robust_b.bit.unwrap_or(0));
    match &r.gap_exp {
        Some(g) => {
            let _ = writeln!(s, "  separated: gap ≥ 2^-{g}");
        }
        None => {
            let _ = writeln!(s, "  NOT separated");
        }
    }
    let json = serde_json::to_value(&r).expect("record serializes");
    Ok(Report::new(json, s))
}
