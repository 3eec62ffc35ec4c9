#![allow(dead_code)]

use linord::{enumerate, nth, parse_term, Elem, OrderTerm};
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CATALOG: [&str; 10] = [
    "fin(5)", "w", "w*", "Z", "Q", "Z*2", "Q*2", "(Q*2)*2", "fin(2)+Q", "w+fin(2)",
];

pub fn t(s: &str) -> OrderTerm {
    parse_term(s).unwrap()
}

pub fn catalog() -> Vec<OrderTerm> {
    CATALOG.iter().map(|s| t(s)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element among the first `window` enumerated ones.
pub fn sample(t: &OrderTerm, rng: &mut ChaCha8Rng, window: u64) -> Elem {
    let window = match t.finite_size() {
        Some(n) => n.min(BigUint::from(window)),
        None => BigUint::from(window),
    };
    let k = rng.gen_range(0..u64::try_from(&window).unwrap());
    nth(t, &BigUint::from(k)).unwrap().unwrap()
}

pub fn prefix(t: &OrderTerm, n: usize) -> Vec<Elem> {
    enumerate(t).unwrap().take(n).collect()
}
