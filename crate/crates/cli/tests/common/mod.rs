#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// (file stem, arguments, expected exit code)
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("classify_r2", &["classify", "R*2"], 0),
    ("classify_q2_2", &["classify", "(Q*2)*2"], 0),
    ("classify_sum", &["classify", "fin(3)+Z*2"], 0),
    ("enumerate_q2", &["enumerate", "Q*2", "--count", "8"], 0),
    ("enumerate_mixed", &["enumerate", "fin(1)+w+fin(2)", "--count", "7"], 0),
    ("jumps_fin3_fin2", &["jumps", "fin(3)+fin(2)", "--count", "10"], 0),
    ("jumps_w", &["jumps", "w", "--count", "2"], 0),
    ("compare_jump", &["compare", "fin(2)+Q", "0:0", "0:1", "--dense", "omit:0:1"], 0),
    ("compare_z", &["compare", "Z", "0", "1"], 0),
    ("neighbor_z2", &["neighbor", "Z*2", "3.1", "--side", "succ"], 0),
    ("bounds_w_fin2", &["bounds", "w+fin(2)"], 0),
    ("relations_q2", &["relations", "Q*2", "1/2.0"], 0),
    ("member_r2_rational", &["member", "R*2", "1/3.1"], 0),
    ("member_r2_surd", &["member", "R*2", "1+2*sqrt(3).0"], 0),
    ("check_dense_fin3", &["check-dense", "fin(3)", "--dense", "only:0,2"], 0),
    ("check_dense_w_fin2", &["check-dense", "w+fin(2)", "--dense", "omit:1:0", "--pairs", "100", "--budget", "500"], 0),
    ("embed_z_r", &["embed", "Z", "--target", "r", "--element", "3", "--precision", "10"], 0),
    ("embed_z_r2", &["embed", "Z", "--target", "r2", "--element", "-3", "--precision", "12"], 0),
    ("embed_q_q", &["embed", "Q", "--target", "q", "--element", "3/5"], 0),
    ("embed_r2_error", &["embed", "R*2", "--target", "r", "--element", "0.0"], 1),
    (
        "homog_extend",
        &["homog-extend", "--pair", "0.0 -> 5.0", "--pair", "1.1 -> 7.1", "--probe", "1/2.0", "--probe", "-10.0"],
        0,
    ),
    ("homog_invalid", &["homog-extend", "--pair", "0.0 -> 5.1"], 1),
    ("demo_collision", &["demo-collision"], 0),
    ("verify_q2", &["verify", "Q*2", "--count", "200", "--seed", "7"], 0),
    ("syntax_error", &["classify", "fin(3)+"], 1),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary with `--json`; returns stdout and the exit code.
pub fn run_json(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_linord"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}
