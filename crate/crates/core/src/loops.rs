//! Combinatorial based loops in the planar Hawaiian earring.
//!
//! The earring is the union of the circles `X_n` of radius `1/n` centred at
//! `(1/n, 0)`; they all pass through the basepoint `p = (0, 0)`. A point of
//! `X_n` other than `p` is stored by its arc position `s ∈ (0, 1)` measured
//! counterclockwise from `p`, so that it sits at angle `π + 2πs` about the
//! centre. The antipode `q_n = (2/n, 0)` is exactly `s = 1/2`.
//!
//! A [`CombLoop`] is a finite schedule of moves on `[0, 1]`: dwelling at `p`,
//! or running once around one circle at constant speed in either direction.
//! Times are exact rationals, so move boundaries and midpoints are hit
//! exactly; planar coordinates are `f64`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{parse_letter, Letter, Sign, Word};

/// Exact time (or arc position) value.
pub type Time = BigRational;

/// `p / q` as a [`Time`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Time {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn half() -> Time {
    ratio(1, 2)
}

/// A point of the earring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HePoint {
    Base,
    /// Arc position `s` strictly between 0 and 1 on circle `X_gen`.
    OnCircle { gen: u32, s: Time },
}

impl HePoint {
    pub fn on_circle(gen: u32, s: Time) -> Result<HePoint> {
        if gen == 0 {
            return Err(Error::Domain("circle index must be at least 1".to_string()));
        }
        if !(s > Time::zero() && s < Time::one()) {
            return Err(Error::Domain(format!(
                "arc position {s} must lie strictly between 0 and 1"
            )));
        }
        Ok(HePoint::OnCircle { gen, s })
    }

    /// The antipode `q_n = (2/n, 0)` of `p` on `X_n`.
    pub fn q(gen: u32) -> HePoint {
        assert!(gen >= 1);
        HePoint::OnCircle { gen, s: half() }
    }

    pub fn embed(&self) -> (f64, f64) {
        match self {
            HePoint::Base => (0.0, 0.0),
            HePoint::OnCircle { gen, s } => {
                circle_point(*gen, s.to_f64().expect("arc position is finite"))
            }
        }
    }
}

/// Planar coordinates of a point.
pub fn embed(pt: &HePoint) -> (f64, f64) {
    pt.embed()
}

/// Point at counterclockwise arc position `s` on `X_gen`. Written in terms of
/// `πs` so that `s = 0` gives the origin and `s = 1/2` gives `x = 2/gen`
/// without rounding.
fn circle_point(gen: u32, s: f64) -> (f64, f64) {
    let r = 1.0 / f64::from(gen);
    let half_angle = std::f64::consts::PI * s;
    let sin_half = half_angle.sin();
    let x = 2.0 * r * sin_half * sin_half;
    let y = -r * (2.0 * half_angle).sin();
    (x, y)
}

/// One piece of a loop. Every move starts and ends at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Dwell { duration: Time },
    Traverse { gen: u32, dir: Sign, duration: Time },
}

impl Move {
    pub fn duration(&self) -> &Time {
        match self {
            Move::Dwell { duration } | Move::Traverse { duration, .. } => duration,
        }
    }

    pub fn letter(&self) -> Option<Letter> {
        match self {
            Move::Dwell { .. } => None,
            Move::Traverse { gen, dir, .. } => Some(Letter::new(*gen, *dir)),
        }
    }

    fn with_duration(&self, duration: Time) -> Move {
        match self {
            Move::Dwell { .. } => Move::Dwell { duration },
            Move::Traverse { gen, dir, .. } => Move::Traverse {
                gen: *gen,
                dir: *dir,
                duration,
            },
        }
    }

    /// Planar speed: arc length `2π/n` over duration; zero for a dwell.
    pub fn speed(&self) -> f64 {
        match self {
            Move::Dwell { .. } => 0.0,
            Move::Traverse { gen, duration, .. } => {
                let arc = 2.0 * std::f64::consts::PI / f64::from(*gen);
                arc / duration.to_f64().expect("finite duration")
            }
        }
    }

    /// Position after completing fraction `u ∈ [0, 1]` of the move.
    fn point_at(&self, u: f64) -> (f64, f64) {
        match self {
            Move::Dwell { .. } => (0.0, 0.0),
            Move::Traverse { gen, dir, .. } => {
                let s = match dir {
                    Sign::Plus => u,
                    Sign::Minus => 1.0 - u,
                };
                circle_point(*gen, s)
            }
        }
    }
}

/// A based loop `[0, 1] → HE` built from dwells and full traversals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombLoop {
    moves: Vec<Move>,
    /// `starts[i]` is the start time of move `i`; the last entry is 1.
    starts: Vec<Time>,
}

impl CombLoop {
    /// Durations must be positive and sum to exactly 1.
    pub fn new(moves: Vec<Move>) -> Result<CombLoop> {
        if moves.is_empty() {
            return Err(Error::EmptyLoop);
        }
        let mut starts = Vec::with_capacity(moves.len() + 1);
        let mut acc = Time::zero();
        for m in &moves {
            if !m.duration().is_positive() {
                return Err(Error::InvalidLoop(format!(
                    "move duration {} is not positive",
                    m.duration()
                )));
            }
            if let Move::Traverse { gen: 0, .. } = m {
                return Err(Error::InvalidLoop("circle index 0".to_string()));
            }
            starts.push(acc.clone());
            acc += m.duration();
        }
        if !acc.is_one() {
            return Err(Error::InvalidLoop(format!(
                "durations sum to {acc}, expected 1"
            )));
        }
        starts.push(acc);
        Ok(CombLoop { moves, starts })
    }

    /// The constant loop `P`: a single dwell of duration 1.
    pub fn constant() -> CombLoop {
        CombLoop::new(vec![Move::Dwell {
            duration: Time::one(),
        }])
        .expect("constant loop is valid")
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Move boundaries `0 = b_0 < b_1 < ... < b_len = 1`.
    pub fn boundaries(&self) -> &[Time] {
        &self.starts
    }

    /// The value of the loop at time `t ∈ [0, 1]`.
    pub fn eval(&self, t: &Time) -> Result<HePoint> {
        if t.is_negative() || *t > Time::one() {
            return Err(Error::Domain(format!("time {t} outside [0, 1]")));
        }
        // index of the first boundary strictly greater than t
        let idx = self.starts.partition_point(|b| b <= t);
        if idx == 0 || self.starts[idx - 1] == *t {
            return Ok(HePoint::Base);
        }
        let mv = &self.moves[idx - 1];
        match mv {
            Move::Dwell { .. } => Ok(HePoint::Base),
            Move::Traverse { gen, dir, duration } => {
                let u = (t - &self.starts[idx - 1]) / duration;
                let s = match dir {
                    Sign::Plus => u,
                    Sign::Minus => Time::one() - u,
                };
                Ok(HePoint::OnCircle { gen: *gen, s })
            }
        }
    }

    /// Composes with the retraction onto `Y_level`: traversals of circles
    /// above `level` become dwells of the same duration.
    pub fn retract(&self, level: u32) -> CombLoop {
        let moves = self
            .moves
            .iter()
            .map(|m| match m {
                Move::Traverse { gen, duration, .. } if *gen > level => Move::Dwell {
                    duration: duration.clone(),
                },
                other => other.clone(),
            })
            .collect();
        CombLoop {
            moves,
            starts: self.starts.clone(),
        }
    }

    /// The (unreduced) word read off the traversals, dwells dropped.
    pub fn word(&self) -> Word {
        self.moves.iter().filter_map(Move::letter).collect()
    }

    /// The token sequence this loop was (or could have been) compiled from.
    pub fn tokens(&self) -> PaddedWord {
        PaddedWord(
            self.moves
                .iter()
                .map(|m| match m.letter() {
                    Some(l) => Token::Letter(l),
                    None => Token::Dwell,
                })
                .collect(),
        )
    }

    /// Path concatenation: `self` on `[0, 1/2]`, `other` on `[1/2, 1]`.
    pub fn concat(&self, other: &CombLoop) -> CombLoop {
        let h = half();
        let moves = self
            .moves
            .iter()
            .chain(&other.moves)
            .map(|m| m.with_duration(m.duration() * &h))
            .collect();
        CombLoop::new(moves).expect("halved durations sum to 1")
    }

    /// Same moves with durations proportional to `weights`.
    pub fn reparameterize(&self, weights: &[Time]) -> Result<CombLoop> {
        compile(&self.tokens(), &DurationScheme::Weighted(weights.to_vec()))
    }

    /// Global Lipschitz bound: the largest move speed.
    pub fn lipschitz_bound(&self) -> f64 {
        self.moves.iter().map(Move::speed).fold(0.0, f64::max)
    }

    /// Index of the move active on the open interval starting at `t`.
    fn move_index_at(&self, t: &Time) -> usize {
        let idx = self.starts.partition_point(|b| b <= t);
        (idx - 1).min(self.moves.len() - 1)
    }

    /// Cut points used by [`sup_distance`]: boundaries and traversal midpoints.
    fn cut_points(&self) -> Vec<Time> {
        let h = half();
        let mut cuts = self.starts.clone();
        for (m, start) in self.moves.iter().zip(&self.starts) {
            if let Move::Traverse { duration, .. } = m {
                cuts.push(start + duration * &h);
            }
        }
        cuts.sort();
        cuts
    }
}

impl fmt::Display for CombLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            match m {
                Move::Dwell { duration } => write!(f, "dwell {duration}")?,
                Move::Traverse { gen, dir, duration } => {
                    write!(f, "x{gen}{} {duration}", if *dir == Sign::Plus { "" } else { "^-1" })?
                }
            }
        }
        Ok(())
    }
}

/// One token of a loop literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Letter(Letter),
    Dwell,
}

/// A word with dwell markers, used to align parameterizations of loops.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PaddedWord(pub Vec<Token>);

impl PaddedWord {
    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> Word {
        self.0
            .iter()
            .filter_map(|t| match t {
                Token::Letter(l) => Some(*l),
                Token::Dwell => None,
            })
            .collect()
    }
}

impl From<&Word> for PaddedWord {
    fn from(w: &Word) -> PaddedWord {
        PaddedWord(w.letters().iter().map(|&l| Token::Letter(l)).collect())
    }
}

impl fmt::Display for PaddedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, tok) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match tok {
                Token::Letter(l) => write!(f, "{l}")?,
                Token::Dwell => f.write_str(".")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PaddedWord {
    type Err = Error;

    /// The word grammar plus `.` for a dwell marker.
    fn from_str(text: &str) -> Result<PaddedWord> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse {
                position: 0,
                token: String::new(),
                reason: "empty literal; write \"e\" for the identity".to_string(),
            });
        }
        if tokens == ["e"] {
            return Ok(PaddedWord::default());
        }
        tokens
            .iter()
            .enumerate()
            .map(|(i, tok)| match *tok {
                "." => Ok(Token::Dwell),
                _ => parse_letter(tok, i + 1).map(Token::Letter),
            })
            .collect::<Result<Vec<_>>>()
            .map(PaddedWord)
    }
}

/// How token durations are assigned by [`compile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DurationScheme {
    /// Every token gets `1 / token count`.
    Uniform,
    /// Token `i` gets `weights[i] / Σ weights`; weights must be positive.
    Weighted(Vec<Time>),
}

/// Turns tokens into moves, one move per token.
pub fn compile(pw: &PaddedWord, scheme: &DurationScheme) -> Result<CombLoop> {
    if pw.is_empty() {
        return Err(Error::EmptyLoop);
    }
    let durations: Vec<Time> = match scheme {
        DurationScheme::Uniform => vec![ratio(1, pw.len() as i64); pw.len()],
        DurationScheme::Weighted(weights) => {
            if weights.len() != pw.len() {
                return Err(Error::Parameter(format!(
                    "{} weights for {} tokens",
                    weights.len(),
                    pw.len()
                )));
            }
            if weights.iter().any(|w| !w.is_positive()) {
                return Err(Error::Parameter("weights must be positive".to_string()));
            }
            let total: Time = weights.iter().sum();
            weights.iter().map(|w| w / &total).collect()
        }
    };
    let moves = pw
        .0
        .iter()
        .zip(durations)
        .map(|(tok, duration)| match tok {
            Token::Letter(l) => Move::Traverse {
                gen: l.gen(),
                dir: l.sign(),
                duration,
            },
            Token::Dwell => Move::Dwell { duration },
        })
        .collect();
    CombLoop::new(moves)
}

/// Uniformly parameterized loop for a plain word; the empty word gives the
/// constant loop.
pub fn loop_of_word(w: &Word) -> CombLoop {
    if w.is_empty() {
        CombLoop::constant()
    } else {
        compile(&PaddedWord::from(w), &DurationScheme::Uniform).expect("nonempty word")
    }
}

pub fn eval(f: &CombLoop, t: &Time) -> Result<HePoint> {
    f.eval(t)
}

pub fn retract_loop(f: &CombLoop, level: u32) -> CombLoop {
    f.retract(level)
}

pub fn word_of(f: &CombLoop) -> Word {
    f.word()
}

pub fn concat_loops(f: &CombLoop, g: &CombLoop) -> CombLoop {
    f.concat(g)
}

/// `q(f) = q(g)`: decided by free reduction, which is sound for this class
/// because the map into the inverse limit of free groups is injective.
pub fn homotopy_class_equal(f: &CombLoop, g: &CombLoop) -> bool {
    f.word().freely_equal(&g.word())
}

/// One piece of the common refinement of two loops' partitions.
struct Piece<'a> {
    len: f64,
    f_move: &'a Move,
    f_from: f64,
    f_to: f64,
    g_move: &'a Move,
    g_from: f64,
    g_to: f64,
}

impl Piece<'_> {
    fn max_gap(&self, eps: f64) -> f64 {
        if self.f_move.letter() == self.g_move.letter()
            && self.f_from == self.g_from
            && self.f_to == self.g_to
        {
            return 0.0;
        }
        let speed = self.f_move.speed() + self.g_move.speed();
        // (speed · step) / 2 <= eps with step = len / samples
        let samples = ((speed * self.len) / (2.0 * eps)).ceil().max(1.0) as usize;
        (0..=samples)
            .map(|j| {
                let a = j as f64 / samples as f64;
                let (fx, fy) = self.f_move.point_at(self.f_from + (self.f_to - self.f_from) * a);
                let (gx, gy) = self.g_move.point_at(self.g_from + (self.g_to - self.g_from) * a);
                (fx - gx).hypot(fy - gy)
            })
            .fold(0.0, f64::max)
    }
}

fn local_fraction(f: &CombLoop, idx: usize, t: &Time) -> f64 {
    let start = &f.starts[idx];
    ((t - start) / f.moves[idx].duration())
        .to_f64()
        .expect("finite fraction")
}

/// Estimate of `sup_t |f(t) − g(t)|` in the plane, within `eps` of the true
/// value.
///
/// The two partitions (plus traversal midpoints) are merged; on each piece
/// both loops run a single move at constant speed, so the distance is
/// Lipschitz with constant `speed_f + speed_g` there, and a grid fine enough
/// that this constant times half the step is at most `eps` bounds the error.
/// Panics unless `eps` is positive and finite.
pub fn sup_distance(f: &CombLoop, g: &CombLoop, eps: f64) -> f64 {
    assert!(eps > 0.0 && eps.is_finite(), "eps must be positive");
    let mut cuts = f.cut_points();
    cuts.extend(g.cut_points());
    cuts.sort();
    cuts.dedup();

    let pieces: Vec<Piece<'_>> = cuts
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let fi = f.move_index_at(a);
            let gi = g.move_index_at(a);
            Piece {
                len: (b - a).to_f64().expect("finite"),
                f_move: &f.moves[fi],
                f_from: local_fraction(f, fi, a),
                f_to: local_fraction(f, fi, b),
                g_move: &g.moves[gi],
                g_from: local_fraction(g, gi, a),
                g_to: local_fraction(g, gi, b),
            }
        })
        .collect();

    pieces
        .par_iter()
        .map(|p| p.max_gap(eps))
        .reduce(|| 0.0, f64::max)
}
