//! The counterexample families and the finite evidence built from them.
//!
//! For `n, k >= 2`
//!
//! * `a(n, k) = (x_n x_k x_n⁻¹ x_k⁻¹)^(n+k)` stays on the circles `X_n, X_k`,
//!   so it is uniformly within `max(2/n, 2/k)` of the constant loop `P`;
//! * `w(n, k) = (x_1 x_k x_1⁻¹ x_k⁻¹)^n` differs from `(x_1 x_1⁻¹)^n` only on
//!   its `X_k` slots, so with matching parameterizations the two loops are
//!   `2/k` apart, while `w(n, k)` itself is never null-homotopic;
//! * the oscillation numbers `O_1(w(n, k)) = 2n` and `O_n(a(n, k)) >= 2(n+k)`
//!   grow with the indices, which is what forces limits of the family to stay
//!   in finitely many path components.
//!
//! Each `*_report` function checks one of these facts over a parameter grid
//! and returns an [`EvidenceReport`]. Cells are computed in parallel and
//! returned in ascending `(n, k)` order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{
    compile, homotopy_class_equal, loop_of_word, sup_distance, CombLoop, DurationScheme,
    PaddedWord, Token,
};
use crate::oscillation::{oscillation, verify_witness};
use crate::report::{Cell, EvidenceReport, GridEntry, Value};
use crate::words::{Letter, Word};

/// Accuracy passed to [`sup_distance`] by every report.
pub const SUP_EPS: f64 = 1e-4;
/// Slack allowed between a measured distance and its closed form, on top of
/// [`SUP_EPS`].
pub const DISTANCE_SLACK: f64 = 1e-3;
/// Largest diagonal index [`limit_point_report`] will try.
pub const LIMIT_SEARCH_MAX: u32 = 2_000;

fn commutator(a: u32, b: u32) -> Word {
    Word::from_letters(vec![
        Letter::x(a),
        Letter::x(b),
        Letter::x_inv(a),
        Letter::x_inv(b),
    ])
}

/// `(x_n x_k x_n⁻¹ x_k⁻¹)^(k+n)`, unreduced.
pub fn a_word(n: u32, k: u32) -> Result<Word> {
    if n < 2 || k < 2 {
        return Err(Error::Parameter(format!(
            "a(n, k) needs n, k >= 2, got ({n}, {k})"
        )));
    }
    Ok(commutator(n, k).pow((n + k) as usize))
}

/// `(x_1 x_k x_1⁻¹ x_k⁻¹)^n`. Already reduced since `k != 1`.
pub fn w_word(n: u32, k: u32) -> Result<Word> {
    if n < 1 || k < 2 {
        return Err(Error::Parameter(format!(
            "w(n, k) needs n >= 1, k >= 2, got ({n}, {k})"
        )));
    }
    Ok(commutator(1, k).pow(n as usize))
}

/// `(x_1 . x_1⁻¹ .)^n`: the uniform limit of `w(n, k)` as `k → ∞`, with the
/// dwells sitting in the `x_k` slots.
pub fn limit_tokens(n: u32) -> Result<PaddedWord> {
    if n < 1 {
        return Err(Error::Parameter("limit_tokens needs N >= 1".to_string()));
    }
    let block = [
        Token::Letter(Letter::x(1)),
        Token::Dwell,
        Token::Letter(Letter::x_inv(1)),
        Token::Dwell,
    ];
    Ok(PaddedWord(block.repeat(n as usize)))
}

/// `a(n, k)` as a uniformly parameterized loop.
pub fn a_loop(n: u32, k: u32) -> Result<CombLoop> {
    Ok(loop_of_word(&a_word(n, k)?))
}

/// `w(n, k)` as a loop aligned token-for-token with [`limit_loop`].
pub fn w_loop(n: u32, k: u32) -> Result<CombLoop> {
    Ok(loop_of_word(&w_word(n, k)?))
}

pub fn limit_loop(n: u32) -> Result<CombLoop> {
    compile(&limit_tokens(n)?, &DurationScheme::Uniform)
}

/// Number of letters of `a(n, k)` on circle `n`: every letter when `n = k`,
/// half of them otherwise.
pub fn a_gen_count(n: u32, k: u32) -> usize {
    let len = 4 * (n + k) as usize;
    if n == k {
        len
    } else {
        len / 2
    }
}

/// Inserts `pairs` cancelling pairs `x_g^{±1} x_g^{∓1}` at random positions.
/// Generators are drawn from `1..=max_gen`.
pub fn insert_cancelling_pairs(w: &Word, pairs: usize, max_gen: u32, rng: &mut impl Rng) -> Word {
    let mut letters = w.letters().to_vec();
    for _ in 0..pairs {
        let gen = rng.gen_range(1..=max_gen.max(1));
        let first = if rng.gen_bool(0.5) {
            Letter::x(gen)
        } else {
            Letter::x_inv(gen)
        };
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, [first, first.inverse()]);
    }
    Word::from_letters(letters)
}

/// Sorted, deduplicated copy of a grid.
fn normalize_grid(grid: &[(u32, u32)], min_n: u32) -> Result<Vec<(u32, u32)>> {
    if let Some(&(n, k)) = grid.iter().find(|&&(n, k)| n < min_n || k < 2) {
        return Err(Error::Parameter(format!("grid cell ({n}, {k}) out of range")));
    }
    let mut g = grid.to_vec();
    g.sort_unstable();
    g.dedup();
    Ok(g)
}

/// All `(n, k)` with `lo <= n <= n_max` and `lo <= k <= k_max`.
pub fn square_grid(lo: u32, n_max: u32, k_max: u32) -> Vec<(u32, u32)> {
    (lo..=n_max)
        .flat_map(|n| (lo..=k_max).map(move |k| (n, k)))
        .collect()
}

fn pairs(grid: &[(u32, u32)]) -> Vec<GridEntry> {
    grid.iter().map(|&(n, k)| GridEntry::Pair(n, k)).collect()
}

fn two_over(k: u32) -> f64 {
    2.0 / f64::from(k)
}

/// `sup |w(N, k) − (x_1 x_1⁻¹)^N| = 2/k`, strictly decreasing in `k`.
pub fn convergence_report(big_n: u32, k_values: &[u32]) -> Result<EvidenceReport> {
    if big_n < 1 {
        return Err(Error::Parameter("N must be at least 1".to_string()));
    }
    let mut ks = k_values.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if let Some(k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::Parameter(format!("k = {k} is below 2")));
    }
    let limit = limit_loop(big_n)?;
    let distances: Vec<f64> = ks
        .par_iter()
        .map(|&k| Ok(sup_distance(&w_loop(big_n, k)?, &limit, SUP_EPS)))
        .collect::<Result<_>>()?;

    let cells = ks
        .iter()
        .zip(&distances)
        .enumerate()
        .map(|(i, (&k, &d))| {
            let expected = two_over(k);
            let close = (d - expected).abs() <= SUP_EPS + DISTANCE_SLACK;
            let decreasing = i == 0 || d < distances[i - 1];
            let mut cell = Cell::new(Some(big_n), Some(k));
            cell.set("d_w", Value::Real(d))
                .set("expected", Value::Rational(format!("2/{k}")))
                .set("within_tolerance", Value::Bool(close))
                .set("decreasing", Value::Bool(decreasing));
            cell.pass = close && decreasing;
            cell
        })
        .collect();
    let grid = ks.iter().map(|&k| GridEntry::Pair(big_n, k)).collect();
    Ok(EvidenceReport::new(
        "w(N,k) converges uniformly to (x1 x1^-1)^N at rate 2/k",
        grid,
        cells,
        0,
    ))
}

/// `sup |a(n, k) − P| = max(2/n, 2/k)`.
pub fn vanishing_report(grid: &[(u32, u32)]) -> Result<EvidenceReport> {
    let grid = normalize_grid(grid, 2)?;
    let constant = CombLoop::constant();
    let cells = grid
        .par_iter()
        .map(|&(n, k)| {
            let d = sup_distance(&a_loop(n, k)?, &constant, SUP_EPS);
            let expected = two_over(n).max(two_over(k));
            let close = (d - expected).abs() <= SUP_EPS + DISTANCE_SLACK;
            let mut cell = Cell::new(Some(n), Some(k));
            cell.set("d_a", Value::Real(d))
                .set("expected", Value::Rational(format!("2/{}", n.min(k))));
            cell.pass = close;
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvidenceReport::new(
        "a(n,k) is uniformly within max(2/n,2/k) of the constant loop",
        pairs(&grid),
        cells,
        0,
    ))
}

/// `O_1(w(n,k)) = 2n`, `O_n(a(n,k)) >= 2(n+k)`, and `O_1` of random
/// unreduced words freely equal to `w(n,k)` stays at least `2n`.
///
/// `O_n(a(n,k))` is also required to equal the letter count
/// [`a_gen_count`]; that is `2(n+k)` off the diagonal and `4(n+k)` on it,
/// where both commutator letters live on `X_n`.
pub fn oscillation_bounds_report(
    grid: &[(u32, u32)],
    pad_trials: usize,
    seed: u64,
) -> Result<EvidenceReport> {
    let grid = normalize_grid(grid, 2)?;
    let cells = grid
        .par_iter()
        .map(|&(n, k)| {
            let w = w_word(n, k)?;
            let w_osc = oscillation(&loop_of_word(&w), 1);
            let a_loop = a_loop(n, k)?;
            let a_osc = oscillation(&a_loop, n);

            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((u64::from(n) << 32) | u64::from(k));
            let mut min_padded = usize::MAX;
            let mut witnesses_ok = verify_witness(&loop_of_word(&w), &w_osc.witness)
                && verify_witness(&a_loop, &a_osc.witness);
            for _ in 0..pad_trials {
                let extra = rng.gen_range(1..=8);
                let v = insert_cancelling_pairs(&w, extra, n.max(k) + 1, &mut rng);
                let f = loop_of_word(&v);
                let o = oscillation(&f, 1);
                witnesses_ok &= verify_witness(&f, &o.witness);
                min_padded = min_padded.min(o.m);
            }

            let two_n = 2 * n as usize;
            let bound = 2 * (n + k) as usize;
            let w_ok = w_osc.m == two_n;
            let a_ok = a_osc.m >= bound && a_osc.m == a_gen_count(n, k);
            let padded_ok = pad_trials == 0 || min_padded >= two_n;

            let mut cell = Cell::new(Some(n), Some(k));
            cell.set("o1_w", Value::Int(w_osc.m as i64))
                .set("on_a", Value::Int(a_osc.m as i64))
                .set("on_a_bound", Value::Int(bound as i64))
                .set("witnesses_valid", Value::Bool(witnesses_ok));
            if pad_trials > 0 {
                cell.set("o1_padded_min", Value::Int(min_padded as i64));
            }
            cell.pass = w_ok && a_ok && padded_ok && witnesses_ok;
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvidenceReport::new(
        "O1(w(n,k)) = 2n and On(a(n,k)) >= 2(n+k), stable under free insertions",
        pairs(&grid),
        cells,
        seed,
    ))
}

/// Predicted reduced length of `a(n,k)·w(n,k)`.
pub fn product_reduced_len(n: u32, k: u32) -> usize {
    if n == k {
        4 * n as usize
    } else {
        4 * (n + k) as usize + 4 * n as usize
    }
}

/// `[a(n,k)] * [w(n,k)] != [P]`, so the constant class is not in `M(F)`.
pub fn product_class_report(grid: &[(u32, u32)]) -> Result<EvidenceReport> {
    let grid = normalize_grid(grid, 2)?;
    let cells = grid
        .par_iter()
        .map(|&(n, k)| {
            let r = a_word(n, k)?.concat(&w_word(n, k)?).reduce();
            let expected = product_reduced_len(n, k);
            let mut cell = Cell::new(Some(n), Some(k));
            cell.set("reduced_len", Value::Int(r.len() as i64))
                .set("expected_len", Value::Int(expected as i64))
                .set("nontrivial", Value::Bool(!r.is_empty()));
            cell.pass = !r.is_empty() && r.len() == expected;
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvidenceReport::new(
        "[a(n,k)]*[w(n,k)] is never the trivial class",
        pairs(&grid),
        cells,
        0,
    ))
}

/// For each `ε`, the first diagonal pair `(m, m)` with `a(m,m)` and `w(m,m)`
/// certified within `ε` of `P` and of `(x_1 x_1⁻¹)^m`, while `[w(m,m)] != [P]`.
///
/// A distance counts as below `ε` only if the estimate plus [`SUP_EPS`] is.
pub fn limit_point_report(eps_values: &[f64]) -> Result<EvidenceReport> {
    if let Some(e) = eps_values.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::Parameter(format!("eps {e} is not positive")));
    }
    let constant = CombLoop::constant();
    let cells = eps_values
        .par_iter()
        .map(|&eps| {
            for m in 2..=LIMIT_SEARCH_MAX {
                let d_a = sup_distance(&a_loop(m, m)?, &constant, SUP_EPS);
                if d_a + SUP_EPS >= eps {
                    continue;
                }
                let w = w_loop(m, m)?;
                let d_w = sup_distance(&w, &limit_loop(m)?, SUP_EPS);
                if d_w + SUP_EPS >= eps {
                    continue;
                }
                let nontrivial = !homotopy_class_equal(&w, &constant);
                if !nontrivial {
                    continue;
                }
                let mut cell = Cell::new(Some(m), Some(m));
                cell.set("eps", Value::Real(eps))
                    .set("d_a", Value::Real(d_a))
                    .set("d_w", Value::Real(d_w))
                    .set("w_nontrivial", Value::Bool(nontrivial));
                cell.pass = true;
                return Ok(cell);
            }
            let mut cell = Cell::new(None, None);
            cell.set("eps", Value::Real(eps));
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvidenceReport::new(
        "([P],[P]) is a limit point of F",
        eps_values.iter().map(|&e| GridEntry::Eps(e)).collect(),
        cells,
        0,
    ))
}
