//! Distances between permutations and between diagrams, and the anatomy of a
//! pair of overlaid diagrams (intersection, symmetric difference, blocks).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{check_same_size, Permutation, Side};
use crate::tableau::Cell;

/// `Δ(λ, μ) = ½ Σ_i |λ_i − μ_i|`, missing parts read as zero.
///
/// Only meaningful when `|λ| = |μ|`; use [`delta_checked`] when the sizes may
/// differ.
pub fn delta(lam: &Partition, mu: &Partition) -> usize {
    l1_distance(lam, mu) / 2
}

pub fn l1_distance(lam: &Partition, mu: &Partition) -> usize {
    let rows = lam.len().max(mu.len());
    (1..=rows).map(|i| lam.part(i).abs_diff(mu.part(i))).sum()
}

/// `Δ` kept as a doubled integer so a size mismatch yields an honest
/// half-integer instead of a silently truncated one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub doubled: usize,
    pub sizes_match: bool,
}

impl DeltaReport {
    pub fn value(&self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

pub fn delta_checked(lam: &Partition, mu: &Partition) -> DeltaReport {
    DeltaReport {
        doubled: l1_distance(lam, mu),
        sizes_match: lam.size() == mu.size(),
    }
}

/// Number of inversions, by merge sort in `O(n log n)`.
pub fn count_inversions(values: &[usize]) -> u64 {
    fn sort_count(v: &mut [usize], buf: &mut Vec<usize>) -> u64 {
        let n = v.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < n {
            if v[i] <= v[j] {
                buf.push(v[i]);
                i += 1;
            } else {
                // every remaining left element exceeds v[j]
                count += (mid - i) as u64;
                buf.push(v[j]);
                j += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..n]);
        v.copy_from_slice(buf);
        count
    }
    let mut v = values.to_vec();
    let mut buf = Vec::with_capacity(v.len());
    sort_count(&mut v, &mut buf)
}

/// Quadratic pair count; oracle for [`count_inversions`].
pub fn count_inversions_naive(values: &[usize]) -> u64 {
    let mut count = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                count += 1;
            }
        }
    }
    count
}

/// Minimum number of adjacent transpositions on `side` taking `pi` to `tau`:
/// the inversion count of `τ∘π⁻¹` (left) or `π⁻¹∘τ` (right).
pub fn adjacent_distance(pi: &Permutation, tau: &Permutation, side: Side) -> Result<u64> {
    check_same_size(pi, tau)?;
    let quotient = match side {
        Side::Left => tau.compose(&pi.inverse())?,
        Side::Right => pi.inverse().compose(tau)?,
    };
    Ok(count_inversions(quotient.values()))
}

/// Minimum number of arbitrary transpositions taking `pi` to `tau`:
/// `n` minus the number of cycles of `π⁻¹∘τ`.
pub fn transposition_distance(pi: &Permutation, tau: &Permutation) -> Result<usize> {
    check_same_size(pi, tau)?;
    let q = pi.inverse().compose(tau)?;
    let n = q.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = q.at(x);
        }
    }
    Ok(n - cycles)
}

/// `Δ(λ(π), λ(τ)) / d(π, τ)` as an exact fraction.
pub fn lipschitz_ratio(pi: &Permutation, tau: &Permutation, side: Side) -> Result<Ratio<u64>> {
    let d = adjacent_distance(pi, tau, side)?;
    if d == 0 {
        return Err(Error::ZeroDistance);
    }
    let num = delta(&crate::rsk::shape(pi), &crate::rsk::shape(tau)) as u64;
    Ok(Ratio::new(num, d))
}

/// The union, intersection and symmetric difference of two diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramPairAnatomy {
    pub union_shape: Partition,
    pub intersection: Partition,
    /// `A(W)`, the number of cells common to both diagrams.
    pub intersection_area: usize,
    /// Row-major list of cells in exactly one diagram.
    pub sym_diff_cells: Vec<Cell>,
    /// Per-row surplus `max(λ_i − μ_i, 0)`.
    pub lambda_only: Vec<usize>,
    /// Per-row surplus `max(μ_i − λ_i, 0)`.
    pub mu_only: Vec<usize>,
}

pub fn anatomy(lam: &Partition, mu: &Partition) -> DiagramPairAnatomy {
    let rows = lam.len().max(mu.len());
    let mut union = Vec::with_capacity(rows);
    let mut inter = Vec::with_capacity(rows);
    let mut cells = Vec::new();
    let mut lambda_only = Vec::with_capacity(rows);
    let mut mu_only = Vec::with_capacity(rows);
    for i in 1..=rows {
        let (l, m) = (lam.part(i), mu.part(i));
        let (lo, hi) = (l.min(m), l.max(m));
        union.push(hi);
        inter.push(lo);
        cells.extend((lo + 1..=hi).map(|j| Cell::new(i, j)));
        lambda_only.push(l.saturating_sub(m));
        mu_only.push(m.saturating_sub(l));
    }
    let intersection = Partition::from_rows_unchecked(inter);
    DiagramPairAnatomy {
        union_shape: Partition::from_rows_unchecked(union),
        intersection_area: intersection.size(),
        intersection,
        sym_diff_cells: cells,
        lambda_only,
        mu_only,
    }
}

/// Each row and each column of `λ ∪ μ` holds at most one cell of the
/// symmetric difference.
pub fn one_cell_per_line(lam: &Partition, mu: &Partition) -> bool {
    let rows_ok = (1..=lam.len().max(mu.len())).all(|i| lam.part(i).abs_diff(mu.part(i)) <= 1);
    let (lc, mc) = (lam.conjugate(), mu.conjugate());
    let cols_ok = (1..=lc.len().max(mc.len())).all(|j| lc.part(j).abs_diff(mc.part(j)) <= 1);
    rows_ok && cols_ok
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// Rows where `λ_i > μ_i`.
    Lambda,
    /// Rows where `μ_i > λ_i`.
    Mu,
}

/// A maximal run of symmetric-difference rows of one kind; rows with
/// `λ_i = μ_i` may sit inside a block but never start or end one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub first_row: usize,
    pub last_row: usize,
    pub kind: BlockKind,
    /// `A(B)`.
    pub area: usize,
    /// Bounding-box height `a`.
    pub height: usize,
    /// Bounding-box width `b`.
    pub width: usize,
}

/// Splits `λ Δ μ` into alternating λ-/μ-blocks, top to bottom.
pub fn decompose_blocks(lam: &Partition, mu: &Partition) -> Vec<Block> {
    let rows = lam.len().max(mu.len());
    let kind_of = |i: usize| match lam.part(i).cmp(&mu.part(i)) {
        std::cmp::Ordering::Greater => Some(BlockKind::Lambda),
        std::cmp::Ordering::Less => Some(BlockKind::Mu),
        std::cmp::Ordering::Equal => None,
    };
    // (kind, first row, last row of that kind so far)
    let mut open: Option<(BlockKind, usize, usize)> = None;
    let mut blocks = Vec::new();
    let close = |kind: BlockKind, first: usize, last: usize| {
        let (big, small): (&Partition, &Partition) = match kind {
            BlockKind::Lambda => (lam, mu),
            BlockKind::Mu => (mu, lam),
        };
        let area = (first..=last)
            .map(|i| big.part(i).saturating_sub(small.part(i)))
            .sum();
        Block {
            first_row: first,
            last_row: last,
            kind,
            area,
            height: last - first + 1,
            width: big.part(first) - small.part(last),
        }
    };
    for i in 1..=rows {
        let Some(kind) = kind_of(i) else { continue };
        open = match open {
            Some((k, first, _)) if k == kind => Some((k, first, i)),
            Some((k, first, last)) => {
                blocks.push(close(k, first, last));
                Some((kind, i, i))
            }
            None => Some((kind, i, i)),
        };
    }
    if let Some((k, first, last)) = open {
        blocks.push(close(k, first, last));
    }
    blocks
}

/// Result of checking `Σ_{i≤j} μ_i − r ≤ Σ_{i≤j} λ_i ≤ Σ_{i≤j} μ_i + s` for all `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixReport {
    pub holds: bool,
    /// Smallest `j` at which either side fails.
    pub first_violation: Option<usize>,
    pub rows_checked: usize,
}

pub fn check_prefix_inequalities(lam: &Partition, mu: &Partition, r: usize, s: usize) -> PrefixReport {
    let rows = lam.len().max(mu.len()).max(1);
    let (mut sl, mut sm) = (0usize, 0usize);
    let mut first_violation = None;
    for j in 1..=rows {
        sl += lam.part(j);
        sm += mu.part(j);
        if sm > sl + r || sl > sm + s {
            first_violation = Some(j);
            break;
        }
    }
    PrefixReport {
        holds: first_violation.is_none(),
        first_violation,
        rows_checked: rows,
    }
}

/// `max_j |Σ_{i≤j} λ_i − Σ_{i≤j} μ_i|`.
pub fn max_prefix_deviation(lam: &Partition, mu: &Partition) -> usize {
    let rows = lam.len().max(mu.len());
    let (mut sl, mut sm, mut worst) = (0usize, 0usize, 0usize);
    for j in 1..=rows {
        sl += lam.part(j);
        sm += mu.part(j);
        worst = worst.max(sl.abs_diff(sm));
    }
    worst
}
