//! Independent oracles shared by the integration tests. Nothing here calls
//! `Word::reduce`, `count_gen`, `oscillation` or `sup_distance`.
#![allow(dead_code)]

use earring::loops::{ratio, CombLoop, HePoint, Time};
use earring::words::{Letter, Word};
use rand::Rng;

/// Rewrites the first adjacent cancelling pair until none is left.
pub fn naive_reduce(letters: &[i64]) -> Vec<i64> {
    let mut w = letters.to_vec();
    loop {
        match (1..w.len()).find(|&i| w[i - 1] == -w[i]) {
            Some(i) => {
                w.drain(i - 1..=i);
            }
            None => return w,
        }
    }
}

pub fn random_word(rng: &mut impl Rng, max_len: usize, max_gen: u32) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=max_gen);
            if rng.gen_bool(0.5) {
                Letter::x(g)
            } else {
                Letter::x_inv(g)
            }
        })
        .collect()
}

/// Candidate times: move boundaries and every quarter of every move.
fn event_times(f: &CombLoop) -> Vec<Time> {
    let b = f.boundaries();
    let mut ts = Vec::new();
    for pair in b.windows(2) {
        for q in 0..4 {
            ts.push(&pair[0] + (&pair[1] - &pair[0]) * ratio(q, 4));
        }
    }
    ts.push(ratio(1, 1));
    ts
}

/// Longest alternation p, q_n, p, ... over the event times, by greedy scan
/// of exact evaluations.
pub fn brute_oscillation(f: &CombLoop, n: u32) -> usize {
    let q = HePoint::q(n);
    let mut want_q = true;
    let mut count = 0;
    for t in event_times(f) {
        let pt = f.eval(&t).unwrap();
        if want_q && pt == q {
            want_q = false;
        } else if !want_q && pt == HePoint::Base {
            count += 1;
            want_q = true;
        }
    }
    count
}

/// Lower estimate of the uniform distance from exact evaluation at
/// `i / samples` and at every move midpoint of both loops.
pub fn sampled_sup(f: &CombLoop, g: &CombLoop, samples: i64) -> f64 {
    let mut ts: Vec<Time> = (0..=samples).map(|i| ratio(i, samples)).collect();
    for h in [f, g] {
        for pair in h.boundaries().windows(2) {
            ts.push((&pair[0] + &pair[1]) * ratio(1, 2));
        }
    }
    ts.iter()
        .map(|t| {
            let (a, b) = (f.eval(t).unwrap().embed(), g.eval(t).unwrap().embed());
            (a.0 - b.0).hypot(a.1 - b.1)
        })
        .fold(0.0, f64::max)
}

/// Weights `1 + r_i` with `|r_i| <= delta`, as exact rationals.
pub fn perturbed_weights(rng: &mut impl Rng, count: usize, delta: Time) -> Vec<Time> {
    (0..count)
        .map(|_| {
            let r = ratio(rng.gen_range(-1000..=1000), 1000);
            ratio(1, 1) + r * &delta
        })
        .collect()
}
