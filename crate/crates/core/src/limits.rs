//! Truncated inverse limits of the free groups `π₁(Y_n, p) = F_n`.
//!
//! Collapsing every circle of index above `n` turns a word into its image in
//! `F_n`. Recording the images at levels `1..=D` gives a [`CoherentSequence`],
//! the depth-`D` shadow of the point of `lim← π₁(Y_n, p)` that the loop class
//! maps to. Because that map is injective, two finitely supported classes are
//! equal exactly when their sequences agree at any depth covering both.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

/// The image of `w` in `F_level`: delete generators above `level`, then reduce.
pub fn project(w: &Word, level: u32) -> Word {
    w.delete_above(level).reduce()
}

/// Levels `1..=depth` of an inverse-limit element.
///
/// Values built through [`phi`] or [`CoherentSequence::new`] are coherent.
/// [`CoherentSequence::from_levels_unchecked`] and deserialization accept
/// arbitrary levels so that [`CoherentSequence::is_coherent`] can be asked
/// about them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoherentSequence {
    levels: Vec<Word>,
}

impl CoherentSequence {
    /// Validating constructor. `levels[0]` is level 1.
    pub fn new(levels: Vec<Word>) -> Result<CoherentSequence> {
        let seq = CoherentSequence::from_levels_unchecked(levels);
        if seq.levels.is_empty() {
            return Err(Error::Domain("depth must be at least 1".to_string()));
        }
        if !seq.is_coherent() {
            return Err(Error::Domain("levels are not coherent".to_string()));
        }
        Ok(seq)
    }

    pub fn from_levels_unchecked(levels: Vec<Word>) -> CoherentSequence {
        CoherentSequence { levels }
    }

    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Level `n` (1-based). Panics when `n` is 0 or exceeds the depth.
    pub fn level(&self, n: u32) -> &Word {
        assert!(n >= 1 && n <= self.depth(), "level {n} out of range");
        &self.levels[(n - 1) as usize]
    }

    pub fn levels(&self) -> &[Word] {
        &self.levels
    }

    /// Every level is reduced and supported on generators `<= n`, and each
    /// level is the projection of the one above it.
    pub fn is_coherent(&self) -> bool {
        let levels_ok = self.levels.iter().enumerate().all(|(i, w)| {
            let n = i as u32 + 1;
            w.is_reduced() && w.max_gen() <= n
        });
        levels_ok
            && self
                .levels
                .windows(2)
                .enumerate()
                .all(|(i, pair)| project(&pair[1], i as u32 + 1) == pair[0])
    }
}

/// Coherence check as a free function, mirroring [`CoherentSequence::is_coherent`].
pub fn check_coherent(c: &CoherentSequence) -> bool {
    c.is_coherent()
}

/// The depth-`depth` truncation of the image of `[w]` in the inverse limit.
pub fn phi(w: &Word, depth: u32) -> Result<CoherentSequence> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".to_string()));
    }
    Ok(CoherentSequence {
        levels: (1..=depth).map(|n| project(w, n)).collect(),
    })
}

/// Depth used when none is given: the largest generator across the inputs,
/// and at least 1.
pub fn auto_depth<'a>(words: impl IntoIterator<Item = &'a Word>) -> u32 {
    words.into_iter().map(Word::max_gen).max().unwrap_or(0).max(1)
}

/// Decides `[u] = [v]` by comparing inverse-limit images at a depth that
/// covers both words.
pub fn same_class(u: &Word, v: &Word) -> bool {
    let depth = auto_depth([u, v]);
    phi(u, depth).ok() == phi(v, depth).ok()
}
