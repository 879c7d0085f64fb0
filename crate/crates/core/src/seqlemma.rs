//! Integer sequence pairs `(a, b)` with `a_1 = b_k = 1` and `a_i b_i ≤ T`,
//! the bound `Δ ≤ √(32 N T ln T)` on them, and the reduction from a pair of
//! diagrams to such sequences.

use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{decompose_blocks, Block};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequencePair {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    #[serde(rename = "T")]
    pub t: u64,
}

impl SequencePair {
    pub fn new(a: Vec<u64>, b: Vec<u64>, t: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if a.len() != b.len() {
            return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
        }
        if a.len() < 2 {
            return bad(format!("sequences need length at least 2, got {}", a.len()));
        }
        if t < 3 {
            return bad(format!("T must be at least 3, got {t}"));
        }
        if a[0] != 1 || b[b.len() - 1] != 1 {
            return bad("boundary conditions a_1 = b_k = 1 violated".into());
        }
        for (i, (&x, &y)) in a.iter().zip(&b).enumerate() {
            if x == 0 || y == 0 {
                return bad(format!("entries must be positive (index {})", i + 1));
            }
            if x.checked_mul(y).is_none_or(|p| p > t) {
                return bad(format!("a_{0} b_{0} = {x}·{y} exceeds T = {t}", i + 1));
            }
        }
        Ok(SequencePair { a, b, t })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceStats {
    /// `Σ a_i b_i`.
    pub delta: u128,
    /// `Σ_{i≤j} a_i b_j`.
    pub n_total: u128,
}

impl SequenceStats {
    /// `N / Δ²`, exact.
    pub fn ratio_exact(&self) -> Ratio<u128> {
        Ratio::new(self.n_total, self.delta * self.delta)
    }

    pub fn ratio(&self) -> f64 {
        self.n_total as f64 / (self.delta as f64 * self.delta as f64)
    }
}

pub fn sequence_stats(pair: &SequencePair) -> SequenceStats {
    let delta = pair.a.iter().zip(&pair.b).map(|(&x, &y)| x as u128 * y as u128).sum();
    // N = Σ_i a_i · (b_i + ... + b_k)
    let mut suffix = 0u128;
    let mut n_total = 0u128;
    for (&x, &y) in pair.a.iter().zip(&pair.b).rev() {
        suffix += y as u128;
        n_total += x as u128 * suffix;
    }
    SequenceStats { delta, n_total }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub delta: u128,
    /// `√(32 N T ln T)`.
    pub bound: f64,
    pub slack: f64,
}

/// `Δ ≤ √(32 N T ln T)` with the natural logarithm.
pub fn check_bound(pair: &SequencePair) -> Result<BoundCheck> {
    let pair = SequencePair::new(pair.a.clone(), pair.b.clone(), pair.t)?;
    let stats = sequence_stats(&pair);
    let t = pair.t as f64;
    let bound = (32.0 * stats.n_total as f64 * t * t.ln()).sqrt();
    let delta = stats.delta as f64;
    Ok(BoundCheck {
        holds: delta <= bound,
        delta: stats.delta,
        bound,
        slack: bound - delta,
    })
}

/// Lower bound on [`tightness_ratio`] of [`tight_sequence`] for `3 ≤ k ≤ 12`.
/// The ratio decreases in `k` towards `1/(2 ln 2) ≈ 0.72`; at `k = 12` it is
/// about `0.858`.
pub const TIGHT_RATIO_FLOOR: f64 = 0.85;

/// `Δ² / (N T ln T)`; bounded above by 32 when the lemma holds.
pub fn tightness_ratio(pair: &SequencePair) -> f64 {
    let s = sequence_stats(pair);
    let t = pair.t as f64;
    (s.delta as f64).powi(2) / (s.n_total as f64 * t * t.ln())
}

/// All `(a_i, b_i)` choices at position `pos` of a length-`k` pair with cap `t`.
fn position_choices(pos: usize, k: usize, t: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in 1..=t {
        for y in 1..=t / x {
            if (pos == 0 && x != 1) || (pos == k - 1 && y != 1) {
                continue;
            }
            out.push((x, y));
        }
    }
    out
}

/// Every valid integer pair of length `k` and cap `t`, in lexicographic order.
pub fn enumerate_pairs(k: usize, t: u64) -> Vec<SequencePair> {
    enumerate_from(k, t, &[])
}

fn enumerate_from(k: usize, t: u64, prefix: &[(u64, u64)]) -> Vec<SequencePair> {
    let choices: Vec<Vec<(u64, u64)>> = (0..k).map(|p| position_choices(p, k, t)).collect();
    let mut out = Vec::new();
    let mut current: Vec<(u64, u64)> = prefix.to_vec();
    fn rec(
        pos: usize,
        choices: &[Vec<(u64, u64)>],
        current: &mut Vec<(u64, u64)>,
        t: u64,
        out: &mut Vec<SequencePair>,
    ) {
        if pos == choices.len() {
            out.push(SequencePair {
                a: current.iter().map(|p| p.0).collect(),
                b: current.iter().map(|p| p.1).collect(),
                t,
            });
            return;
        }
        for &c in &choices[pos] {
            current.push(c);
            rec(pos + 1, choices, current, t, out);
            current.pop();
        }
    }
    rec(prefix.len(), &choices, &mut current, t, &mut out);
    out
}

fn count_pairs(k: usize, t: u64) -> u128 {
    (0..k).map(|p| position_choices(p, k, t).len() as u128).product()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveBoundReport {
    pub k_max: usize,
    pub t_values: Vec<u64>,
    pub pairs_checked: u64,
    pub violations: Vec<SequencePair>,
    /// Largest `Δ / √(32 N T ln T)` seen.
    pub worst_fraction: f64,
}

/// Checks the bound on every integer pair with `2 ≤ k ≤ k_max` and `T` in
/// `t_values`.
pub fn verify_bound_exhaustive(k_max: usize, t_values: &[u64]) -> Result<ExhaustiveBoundReport> {
    if k_max < 2 || t_values.iter().any(|&t| t < 3) {
        return Err(Error::InvalidParameter("need k_max ≥ 2 and T ≥ 3".into()));
    }
    let mut report = ExhaustiveBoundReport {
        k_max,
        t_values: t_values.to_vec(),
        pairs_checked: 0,
        violations: Vec::new(),
        worst_fraction: 0.0,
    };
    for &t in t_values {
        for k in 2..=k_max {
            for pair in enumerate_pairs(k, t) {
                let c = check_bound(&pair)?;
                report.pairs_checked += 1;
                report.worst_fraction = report.worst_fraction.max(c.delta as f64 / c.bound);
                if !c.holds {
                    report.violations.push(pair);
                }
            }
        }
    }
    Ok(report)
}

pub const MINIMIZE_MAX_K: usize = 4;
pub const MINIMIZE_MAX_T: u64 = 12;

/// Exact minimizer of `N/Δ²` over integer pairs with `2 ≤ k ≤ k_max` and cap
/// `t`. Ties go to the shortest, then lexicographically smallest, pair.
pub fn minimize_ratio(k_max: usize, t: u64) -> Result<(SequencePair, SequenceStats)> {
    if k_max < 2 || t < 3 {
        return Err(Error::InvalidParameter(format!(
            "need k_max ≥ 2 and T ≥ 3, got k_max = {k_max}, T = {t}"
        )));
    }
    if k_max > MINIMIZE_MAX_K || t > MINIMIZE_MAX_T {
        let estimate = (2..=k_max).map(|k| count_pairs(k, t)).sum();
        let limit = (2..=MINIMIZE_MAX_K).map(|k| count_pairs(k, MINIMIZE_MAX_T)).sum();
        return Err(Error::TooLarge {
            what: format!("sequence enumeration k ≤ {k_max}, T = {t}"),
            estimate,
            limit,
        });
    }
    type Key = (Ratio<u128>, usize, Vec<u64>, Vec<u64>);
    let key = |p: &SequencePair| -> Key {
        (sequence_stats(p).ratio_exact(), p.len(), p.a.clone(), p.b.clone())
    };
    let work: Vec<(usize, (u64, u64))> = (2..=k_max)
        .flat_map(|k| position_choices(0, k, t).into_iter().map(move |c| (k, c)))
        .collect();
    let best = work
        .par_iter()
        .filter_map(|&(k, first)| {
            enumerate_from(k, t, &[first]).into_iter().map(|p| (key(&p), p)).min_by(|x, y| x.0.cmp(&y.0))
        })
        .min_by(|x, y| x.0.cmp(&y.0))
        .map(|(_, p)| p)
        .expect("at least one pair exists for T ≥ 3");
    let stats = sequence_stats(&best);
    Ok((best, stats))
}

/// `a_i = 2^{i−1}`, `b_i = 2^{k−i}`, `T = 2^{k−1}`.
pub fn tight_sequence(k: usize) -> Result<SequencePair> {
    if !(3..=63).contains(&k) {
        return Err(Error::InvalidParameter(format!("tight sequences need 3 ≤ k ≤ 63, got {k}")));
    }
    let a = (0..k).map(|i| 1u64 << i).collect();
    let b = (0..k).map(|i| 1u64 << (k - 1 - i)).collect();
    SequencePair::new(a, b, 1u64 << (k - 1))
}

/// Geometric stationary point with `ℓ1` leading `(1, T)` entries, `k`
/// interior entries and `ℓ2` trailing `(T, 1)` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousOptimum {
    pub k: usize,
    pub ell1: usize,
    pub ell2: usize,
    pub c: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    #[serde(rename = "T")]
    pub t: f64,
}

impl ContinuousOptimum {
    pub fn interior(&self) -> std::ops::Range<usize> {
        self.ell1..self.ell1 + self.k
    }

    /// `c^{k−1} (c−1)² ℓ1 ℓ2`.
    pub fn closed_form_t(&self) -> f64 {
        self.c.powi(self.k as i32 - 1) * (self.c - 1.0).powi(2) * (self.ell1 * self.ell2) as f64
    }

    /// Whether the interior boundary terms exceed 1, the hypothesis under
    /// which `k − 1 < ln T / ln c` is claimed.
    pub fn k_bound_applies(&self) -> bool {
        let r = self.interior();
        self.a[r.start] > 1.0 && self.b[r.end - 1] > 1.0
    }

    pub fn k_bound_holds(&self) -> bool {
        ((self.k - 1) as f64) < self.t.ln() / self.c.ln()
    }
}

pub fn continuous_optimum(k: usize, ell1: usize, ell2: usize, c: f64) -> Result<ContinuousOptimum> {
    if !(c.is_finite() && c > 1.0) {
        return Err(Error::InvalidParameter(format!("ratio c must exceed 1, got {c}")));
    }
    if k == 0 || ell1 == 0 || ell2 == 0 {
        return Err(Error::InvalidParameter("k, ℓ1 and ℓ2 must be positive".into()));
    }
    let a1 = (c - 1.0) * ell1 as f64;
    let bk = (c - 1.0) * ell2 as f64;
    let inner_a: Vec<f64> = (0..k).map(|i| a1 * c.powi(i as i32)).collect();
    let inner_b: Vec<f64> = (0..k).map(|i| bk * c.powi((k - 1 - i) as i32)).collect();
    let t = inner_a[0] * inner_b[0];
    let mut a = vec![1.0; ell1];
    let mut b = vec![t; ell1];
    a.extend(&inner_a);
    b.extend(&inner_b);
    a.extend(std::iter::repeat_n(t, ell2));
    b.extend(std::iter::repeat_n(1.0, ell2));
    Ok(ContinuousOptimum { k, ell1, ell2, c, a, b, t })
}

/// Relative residual of `a_i (b_i + ... + b_end) = b_i (a_start + ... + a_i)`
/// at each interior index, with sums over the extended sequences.
pub fn kkt_residuals(opt: &ContinuousOptimum) -> Vec<f64> {
    opt.interior()
        .map(|i| {
            let lhs = opt.a[i] * opt.b[i..].iter().sum::<f64>();
            let rhs = opt.b[i] * opt.a[..=i].iter().sum::<f64>();
            (lhs - rhs).abs() / lhs.abs().max(rhs.abs())
        })
        .collect()
}

/// Exact differences `lhs − rhs` of the stationarity identity for a rational
/// ratio `c`.
pub fn kkt_residuals_exact(k: usize, ell1: usize, ell2: usize, c: &BigRational) -> Result<Vec<BigRational>> {
    if *c <= BigRational::one() || k == 0 || ell1 == 0 || ell2 == 0 {
        return Err(Error::InvalidParameter("need c > 1 and k, ℓ1, ℓ2 positive".into()));
    }
    let cm1 = c - BigRational::one();
    let a1 = &cm1 * BigRational::from_integer(ell1.into());
    let bk = &cm1 * BigRational::from_integer(ell2.into());
    let pow = |e: usize| (0..e).fold(BigRational::one(), |acc, _| acc * c);
    let inner_a: Vec<BigRational> = (0..k).map(|i| &a1 * pow(i)).collect();
    let inner_b: Vec<BigRational> = (0..k).map(|i| &bk * pow(k - 1 - i)).collect();
    let t = &inner_a[0] * &inner_b[0];
    let mut a = vec![BigRational::one(); ell1];
    let mut b = vec![t.clone(); ell1];
    a.extend(inner_a);
    b.extend(inner_b);
    a.extend(std::iter::repeat_n(t, ell2));
    b.extend(std::iter::repeat_n(BigRational::one(), ell2));
    Ok((ell1..ell1 + k)
        .map(|i| {
            let sb = b[i..].iter().fold(BigRational::zero(), |s, x| s + x);
            let sa = a[..=i].iter().fold(BigRational::zero(), |s, x| s + x);
            &a[i] * sb - &b[i] * sa
        })
        .collect())
}

/// A snapshot of the diagram pair between reduction steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStage {
    pub name: String,
    pub lam: Partition,
    pub mu: Partition,
    /// `A(W)`, the intersection area.
    pub w_area: usize,
    /// `Σ A(B_i)`.
    pub block_area: usize,
    pub blocks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedPair {
    pub lam: Partition,
    pub mu: Partition,
    pub blocks: Vec<Block>,
    pub stages: Vec<ReductionStage>,
    /// Whether every block was reshaped into equal rows plus one shorter row.
    /// When no such shape fits, the block's row differences are sorted
    /// instead.
    pub near_rectangular: bool,
}

/// Rows of `λ` and `μ` padded to a common length.
#[derive(Clone)]
struct Rows {
    lam: Vec<usize>,
    mu: Vec<usize>,
}

impl Rows {
    fn new(lam: &Partition, mu: &Partition) -> Self {
        let n = lam.len().max(mu.len());
        Rows {
            lam: (1..=n).map(|i| lam.part(i)).collect(),
            mu: (1..=n).map(|i| mu.part(i)).collect(),
        }
    }

    fn partitions(&self) -> (Partition, Partition) {
        let trim = |v: &[usize]| {
            Partition::trimmed(v.to_vec()).expect("reductions keep rows weakly decreasing")
        };
        (trim(&self.lam), trim(&self.mu))
    }

    fn conjugate(&self) -> Self {
        let (l, m) = self.partitions();
        Rows::new(&l.conjugate(), &m.conjugate())
    }

    /// Drops rows with `λ_i = μ_i` and columns with `λ'_j = μ'_j` until none
    /// remain.
    fn drop_equal_lines(&mut self) {
        loop {
            let keep: Vec<usize> = (0..self.lam.len()).filter(|&i| self.lam[i] != self.mu[i]).collect();
            let rows_changed = keep.len() != self.lam.len();
            self.lam = keep.iter().map(|&i| self.lam[i]).collect();
            self.mu = keep.iter().map(|&i| self.mu[i]).collect();

            let (l, m) = self.partitions();
            let (lc, mc) = (l.conjugate(), m.conjugate());
            let width = lc.len().max(mc.len());
            let equal_cols: Vec<usize> = (1..=width).filter(|&j| lc.part(j) == mc.part(j)).collect();
            let shrink = |v: &mut Vec<usize>| {
                for x in v.iter_mut() {
                    *x -= equal_cols.partition_point(|&j| j <= *x);
                }
            };
            shrink(&mut self.lam);
            shrink(&mut self.mu);
            if !rows_changed && equal_cols.is_empty() {
                return;
            }
        }
    }

    /// Maximal runs of rows `(first, last, lambda_side)`, 0-based; assumes
    /// no equal rows.
    fn runs(&self) -> Vec<(usize, usize, bool)> {
        let mut out: Vec<(usize, usize, bool)> = Vec::new();
        for i in 0..self.lam.len() {
            let side = self.lam[i] > self.mu[i];
            match out.last_mut() {
                Some(run) if run.2 == side => run.1 = i,
                _ => out.push((i, i, side)),
            }
        }
        out
    }

    fn sides(&mut self, lambda_side: bool) -> (&mut Vec<usize>, &mut Vec<usize>) {
        if lambda_side {
            (&mut self.lam, &mut self.mu)
        } else {
            (&mut self.mu, &mut self.lam)
        }
    }

    /// Replaces each block and its shade by a Young diagram of the same area
    /// hanging off column `small_last + 1`. Returns whether every block got
    /// the equal-rows shape.
    fn straighten_blocks(&mut self) -> bool {
        let mut all_near = true;
        for (p, q, side) in self.runs() {
            let (big, small) = self.sides(side);
            let base = small[q];
            let caps: Vec<usize> = (p..=q).map(|i| big[i] - base).collect();
            let diffs: Vec<usize> = (p..=q).map(|i| big[i] - small[i]).collect();
            let area: usize = diffs.iter().sum();
            let fill = match near_rectangle(area, &caps) {
                Some(f) => f,
                None => {
                    all_near = false;
                    let mut d = diffs;
                    d.sort_unstable_by(|x, y| y.cmp(x));
                    d
                }
            };
            for (off, i) in (p..=q).enumerate() {
                small[i] = base;
                big[i] = base + fill.get(off).copied().unwrap_or(0);
            }
        }
        all_near
    }

    /// Moves every cell of the topmost block into its first row.
    fn flatten_top(&mut self) {
        let Some(&(p, q, side)) = self.runs().first() else { return };
        let (big, small) = self.sides(side);
        let area: usize = (p..=q).map(|i| big[i] - small[i]).sum();
        big[p..=q].copy_from_slice(&small[p..=q]);
        big[p] = small[p] + area;
    }

    fn stage(&self, name: &str) -> ReductionStage {
        let (lam, mu) = self.partitions();
        let blocks = decompose_blocks(&lam, &mu);
        ReductionStage {
            name: name.to_string(),
            w_area: self.lam.iter().zip(&self.mu).map(|(&x, &y)| x.min(y)).sum(),
            block_area: blocks.iter().map(|b| b.area).sum(),
            blocks: blocks.len(),
            lam,
            mu,
        }
    }
}

/// Widest `w` such that rows of length `w` followed by one remainder row fit
/// under the weakly decreasing capacities `caps`.
fn near_rectangle(area: usize, caps: &[usize]) -> Option<Vec<usize>> {
    let top = area.min(*caps.first()?);
    (1..=top).rev().find_map(|w| {
        let (full, rem) = (area / w, area % w);
        let rows = full + usize::from(rem > 0);
        let fits = rows <= caps.len()
            && (full == 0 || caps[full - 1] >= w)
            && (rem == 0 || caps[full] >= rem);
        fits.then(|| {
            let mut f = vec![w; full];
            if rem > 0 {
                f.push(rem);
            }
            f
        })
    })
}

/// Applies the three reductions in order: drop equal rows and columns;
/// straighten every block into a Young diagram inside the block and its
/// shade; flatten the top block into one row and the bottom block into one
/// column. Each structural step is followed by dropping equal lines again.
pub fn reduce_diagrams(lam: &Partition, mu: &Partition) -> Result<ReducedPair> {
    if lam == mu {
        return Err(Error::InvalidParameter("diagrams are equal; nothing to reduce".into()));
    }
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch { left: lam.size(), right: mu.size() });
    }
    let mut rows = Rows::new(lam, mu);
    let mut stages = vec![rows.stage("input")];
    rows.drop_equal_lines();
    stages.push(rows.stage("equal lines removed"));
    let near_rectangular = rows.straighten_blocks();
    rows.drop_equal_lines();
    stages.push(rows.stage("blocks straightened"));
    rows.flatten_top();
    rows.drop_equal_lines();
    stages.push(rows.stage("top block flattened"));
    let mut conj = rows.conjugate();
    conj.flatten_top();
    conj.drop_equal_lines();
    rows = conj.conjugate();
    stages.push(rows.stage("bottom block flattened"));

    let (lam, mu) = rows.partitions();
    let blocks = decompose_blocks(&lam, &mu);
    Ok(ReducedPair { lam, mu, blocks, stages, near_rectangular })
}

/// Reduces the pair and reads off block heights `a_i` and widths `b_i`, with
/// `T = max(3, max a_i b_i)`.
pub fn reduce_pair(lam: &Partition, mu: &Partition) -> Result<(ReducedPair, SequencePair)> {
    let reduced = reduce_diagrams(lam, mu)?;
    let a: Vec<u64> = reduced.blocks.iter().map(|b| b.height as u64).collect();
    let b: Vec<u64> = reduced.blocks.iter().map(|b| b.width as u64).collect();
    let t = a.iter().zip(&b).map(|(x, y)| x * y).max().unwrap_or(0).max(3);
    let seq = SequencePair::new(a, b, t)?;
    Ok((reduced, seq))
}
