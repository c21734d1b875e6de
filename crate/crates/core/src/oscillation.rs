//! Oscillation numbers `O_n` and their witness sets.
//!
//! `O_n(f)` is the largest `m` for which there are times
//! `0 = t_0 < t_1 < ... < t_{2m} = 1` with `f(t_{2i}) = p` and
//! `f(t_{2i+1}) = q_n`. On combinatorial loops this is a count: `q_n` lies on
//! `X_n` only, a traversal of `X_n` passes it exactly once (at its midpoint),
//! and every move begins and ends at `p`. Consecutive `q_n` hits are therefore
//! always separated by a visit to `p`, and no set can alternate more often
//! than there are traversals of `X_n`. So `O_n(f)` is the number of
//! traversals of `X_n`, and the midpoints and ends of those traversals form a
//! witness.
//!
//! A loop that never reaches `q_n` has `O_n = 0`; its witness is the
//! degenerate pair `{0, 1}`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::loops::{ratio, CombLoop, HePoint, Move, Time};

/// A time set certifying `O_gen(f) >= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub gen: u32,
    pub m: usize,
    pub times: Vec<Time>,
}

impl WitnessSet {
    /// Shape checks that do not need the loop: `0` first, `1` last, strictly
    /// increasing, `2m + 1` entries (or `[0, 1]` when `m = 0`).
    pub fn is_well_formed(&self) -> bool {
        if self.gen == 0 {
            return false;
        }
        let expected_len = if self.m == 0 { 2 } else { 2 * self.m + 1 };
        self.times.len() == expected_len
            && self.times.first().is_some_and(Zero::is_zero)
            && self.times.last().is_some_and(One::is_one)
            && self.times.windows(2).all(|w| w[0] < w[1])
    }
}

impl Serialize for WitnessSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let times: Vec<String> = self.times.iter().map(rational_string).collect();
        let mut st = serializer.serialize_struct("WitnessSet", 3)?;
        st.serialize_field("gen", &self.gen)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("times", &times)?;
        st.end()
    }
}

impl fmt::Display for WitnessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let times: Vec<String> = self.times.iter().map(rational_string).collect();
        write!(f, "O_{} >= {} via {{{}}}", self.gen, self.m, times.join(", "))
    }
}

/// Always `p/q`, including integers (`0/1`, `1/1`).
pub fn rational_string(t: &Time) -> String {
    format!("{}/{}", t.numer(), t.denom())
}

/// Result of [`oscillation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oscillation {
    pub m: usize,
    pub witness: WitnessSet,
}

/// `O_gen(f)` with a witness set.
pub fn oscillation(f: &CombLoop, gen: u32) -> Oscillation {
    assert!(gen >= 1, "circle index must be at least 1");
    let half = ratio(1, 2);
    let hits: Vec<(Time, Time)> = f
        .moves()
        .iter()
        .zip(f.boundaries())
        .filter_map(|(mv, start)| match mv {
            Move::Traverse { gen: g, duration, .. } if *g == gen => {
                Some((start + duration * &half, start + duration))
            }
            _ => None,
        })
        .collect();
    let m = hits.len();
    let mut times = vec![Time::zero()];
    for (mid, end) in hits {
        times.push(mid);
        times.push(end);
    }
    if m == 0 {
        times.push(Time::one());
    } else if let Some(last) = times.last_mut() {
        *last = Time::one();
    }
    Oscillation {
        m,
        witness: WitnessSet { gen, m, times },
    }
}

/// Checks a witness against a loop, evaluating every time exactly.
pub fn verify_witness(f: &CombLoop, w: &WitnessSet) -> bool {
    if !w.is_well_formed() {
        return false;
    }
    let q = HePoint::q(w.gen);
    w.times.iter().enumerate().all(|(i, t)| {
        let expected = if i % 2 == 0 || w.m == 0 { &HePoint::Base } else { &q };
        f.eval(t).is_ok_and(|pt| pt == *expected)
    })
}

/// Hausdorff distance between two nonempty finite sets of times, exact.
pub fn hausdorff(a: &[Time], b: &[Time]) -> Result<Time> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain(
            "Hausdorff distance needs nonempty sets".to_string(),
        ));
    }
    Ok(directed(a, b).max(directed(b, a)))
}

fn directed(from: &[Time], to: &[Time]) -> Time {
    from.iter()
        .map(|x| {
            to.iter()
                .map(|y| (x - y).abs())
                .min()
                .expect("nonempty")
        })
        .max()
        .expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{compile, loop_of_word, DurationScheme, PaddedWord};
    use crate::words::Word;

    fn commutator_power(a: i64, b: i64, times: usize) -> Word {
        Word::from_signed(&[a, b, -a, -b]).pow(times)
    }

    #[test]
    fn oscillation_examples() {
        let w35 = loop_of_word(&commutator_power(1, 5, 3));
        assert_eq!(oscillation(&w35, 1).m, 6);
        let a25 = loop_of_word(&commutator_power(2, 5, 7));
        assert_eq!(oscillation(&a25, 2).m, 14);
        let c = oscillation(&CombLoop::constant(), 3);
        assert_eq!(c.m, 0);
        assert_eq!(c.witness.times, vec![ratio(0, 1), ratio(1, 1)]);
        assert!(verify_witness(&CombLoop::constant(), &c.witness));
    }

    #[test]
    fn witness_times_for_single_traversal() {
        let f = loop_of_word(&Word::from_signed(&[1]));
        let o = oscillation(&f, 1);
        assert_eq!(o.witness.times, vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)]);
        assert!(verify_witness(&f, &o.witness));
    }

    #[test]
    fn witness_ends_at_one_after_trailing_dwell() {
        let f = compile(&"2 . -2 .".parse::<PaddedWord>().unwrap(), &DurationScheme::Uniform).unwrap();
        let o = oscillation(&f, 2);
        assert_eq!(o.m, 2);
        assert_eq!(
            o.witness.times,
            vec![ratio(0, 1), ratio(1, 8), ratio(1, 4), ratio(5, 8), ratio(1, 1)]
        );
        assert!(verify_witness(&f, &o.witness));
    }

    #[test]
    fn mutated_witnesses_fail() {
        let f = loop_of_word(&commutator_power(1, 3, 2));
        let o = oscillation(&f, 1);
        assert!(verify_witness(&f, &o.witness));

        // an even-index time moved onto a q_1 hit
        let triple = loop_of_word(&Word::from_signed(&[1, 1, 1]));
        let bad = WitnessSet {
            gen: 1,
            m: 2,
            times: vec![ratio(0, 1), ratio(1, 6), ratio(1, 2), ratio(5, 6), ratio(1, 1)],
        };
        assert!(bad.is_well_formed());
        assert!(!verify_witness(&triple, &bad));
        let mut good = bad.clone();
        good.times[2] = ratio(2, 3);
        assert!(verify_witness(&triple, &good));

        // witness for a circle the loop never visits
        let g = loop_of_word(&Word::from_signed(&[2, 3]));
        let mut foreign = o.witness.clone();
        foreign.gen = 1;
        assert!(!verify_witness(&g, &foreign));

        // wrong shape
        let mut short = o.witness.clone();
        short.times.pop();
        assert!(!verify_witness(&f, &short));
        let mut m_off = o.witness.clone();
        m_off.m += 1;
        assert!(!verify_witness(&f, &m_off));
    }

    #[test]
    fn hausdorff_examples() {
        let h = hausdorff(&[ratio(0, 1), ratio(1, 1)], &[ratio(0, 1), ratio(1, 2), ratio(1, 1)]).unwrap();
        assert_eq!(h, ratio(1, 2));
        let a = [ratio(1, 3), ratio(2, 7)];
        assert_eq!(hausdorff(&a, &a).unwrap(), ratio(0, 1));
        assert_eq!(hausdorff(&[ratio(0, 1)], &[ratio(1, 1)]).unwrap(), ratio(1, 1));
        assert!(hausdorff(&[], &a).is_err());
        assert!(hausdorff(&a, &[]).is_err());
    }

    #[test]
    fn witness_json() {
        let f = loop_of_word(&Word::from_signed(&[1]));
        let json = serde_json::to_string(&oscillation(&f, 1).witness).unwrap();
        assert_eq!(json, r#"{"gen":1,"m":1,"times":["0/1","1/2","1/1"]}"#);
    }
}
