//! Permutations in one-line notation.
//!
//! Positions and values are 1-based at every public boundary: `values()[i - 1]`
//! is the image of position `i`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which side an adjacent transposition acts on.
///
/// `Left` multiplies by `(i, i+1)` on the left, swapping the *values* `i` and
/// `i + 1`. `Right` multiplies on the right, swapping the entries at
/// *positions* `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::InvalidParameter(format!(
                "side must be `left` or `right`, got `{other}`"
            ))),
        }
    }
}

/// A bijection of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} appears more than once"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// Callers guarantee `values` is a permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// The decreasing permutation `[n, n-1, ..., 1]`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut values: Vec<usize> = (1..=n).collect();
        values.shuffle(rng);
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Image of the 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Reversal of the one-line notation.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (pos, &v) in self.values.iter().enumerate() {
            values[v - 1] = pos + 1;
        }
        Permutation { values }
    }

    /// Value complement `v -> n + 1 - v`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_same_size(self, other)?;
        Ok(Permutation {
            values: other.values.iter().map(|&v| self.values[v - 1]).collect(),
        })
    }

    /// Applies the adjacent transposition `(i, i+1)` on the given side.
    pub fn apply_adjacent(&self, i: usize, side: Side) -> Result<Self> {
        let n = self.len();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut values = self.values.clone();
        match side {
            Side::Right => values.swap(i - 1, i),
            Side::Left => {
                for v in values.iter_mut() {
                    if *v == i {
                        *v = i + 1;
                    } else if *v == i + 1 {
                        *v = i;
                    }
                }
            }
        }
        Ok(Permutation { values })
    }

    /// Swaps the entries at 1-based positions `i` and `j` (any transposition).
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.len();
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, max: n });
            }
        }
        let mut values = self.values.clone();
        values.swap(i - 1, j - 1);
        Ok(Permutation { values })
    }

    /// Whether the pair moved by `(i, i+1)` on `side` is currently in
    /// increasing order: for `Right` the entries at positions `i, i+1`, for
    /// `Left` the positions of the values `i, i+1`.
    pub fn adjacent_pair_increasing(&self, i: usize, side: Side) -> bool {
        match side {
            Side::Right => self.values[i - 1] < self.values[i],
            Side::Left => {
                let mut pos_i = 0;
                let mut pos_next = 0;
                for (p, &v) in self.values.iter().enumerate() {
                    if v == i {
                        pos_i = p;
                    } else if v == i + 1 {
                        pos_next = p;
                    }
                }
                pos_i < pos_next
            }
        }
    }
}

pub(crate) fn check_same_size(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses whitespace- or comma-separated integers.
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_list(s).map_err(Error::InvalidPermutation)?)
    }
}

pub(crate) fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| format!("`{tok}` is not a nonnegative integer"))
        })
        .collect()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) once the last one is passed.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic iterator over all of `S_n`.
pub struct Permutations {
    current: Vec<usize>,
    done: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: (1..=n).collect(),
            done: n == 0,
        }
    }

    /// All permutations whose first entry is `first`, in lexicographic order.
    pub fn with_first(n: usize, first: usize) -> impl Iterator<Item = Permutation> {
        let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut values = Vec::with_capacity(n);
            values.push(first);
            values.extend_from_slice(&rest);
            done = !next_permutation(&mut rest);
            Some(Permutation { values })
        })
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation {
            values: self.current.clone(),
        };
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
