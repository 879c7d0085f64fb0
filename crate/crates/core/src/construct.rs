//! Extremal permutation pairs: one adjacent transposition apart (in the value
//! sense) yet with RSK shapes at distance `(k+1)/2 = √(n/2)`, and their
//! block-diagonal extension to `t` transpositions.
//!
//! For odd `k` and `n0 = (k+1)²/2` the values split into three ranges:
//! small `[1, n0/2 − (k+1)/2]`, the `k+1` intermediates, and big
//! `[n0/2 + (k+3)/2, n0]`. Big values are cut (in order) into blocks
//! `b_1, ..., b_h'` and small values into `s_h', ..., s_1` with
//! `|b_i| = |s_i| = 2i` and `h' = (k−1)/2`. The one-line layout is
//!
//! ```text
//! m_1 b_h' m_2 b_h'-1 ... m_h' b_1  m_h m_h+1  s_1 m_h+2 s_2 ... s_h' m_k+1
//! ```
//!
//! where `m_1 < ... < m_k+1` are the intermediates and `h = (k+1)/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greene::{Decomposition, Direction};
use crate::partition::Partition;
use crate::perm::{Permutation, Side};

/// The single-transposition construction on `n0 = (k+1)²/2` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1Construction {
    pub k: usize,
    pub n0: usize,
    pub pi: Permutation,
    pub tau: Permutation,
    /// Shape of `pi`: `(k+1, k−1, k−1, ..., 2, 2)`.
    pub lam: Partition,
    /// Shape of `tau`: `(k, k, k−2, k−2, ..., 1, 1)`.
    pub mu: Partition,
    /// `s_1, ..., s_h'` as ascending value runs.
    pub small_blocks: Vec<Vec<usize>>,
    /// `b_1, ..., b_h'` as ascending value runs.
    pub big_blocks: Vec<Vec<usize>>,
    /// `m_1 < ... < m_{k+1}`.
    pub intermediates: Vec<usize>,
}

fn check_odd(k: usize) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("k must be odd and positive, got {k}")));
    }
    Ok(())
}

/// `n0 = (k+1)²/2`.
pub fn base_size(k: usize) -> usize {
    (k + 1) * (k + 1) / 2
}

/// Largest odd `k` with `(k+1)²/2 · t ≤ n`, if any.
pub fn largest_odd_k(n: usize, t: usize) -> Option<usize> {
    if t == 0 || base_size(1) * t > n {
        return None;
    }
    let mut k = 1;
    while base_size(k + 2) * t <= n {
        k += 2;
    }
    Some(k)
}

impl T1Construction {
    pub fn new(k: usize) -> Result<Self> {
        check_odd(k)?;
        let n0 = base_size(k);
        let h = k.div_ceil(2);
        let half = n0 / 2;
        let small_top = half - h;
        let intermediates: Vec<usize> = (small_top + 1..=half + h).collect();

        // small values are cut from the bottom as s_{h-1}, ..., s_1
        let mut small_blocks = vec![Vec::new(); h - 1];
        let mut next = 1;
        for i in (1..h).rev() {
            small_blocks[i - 1] = (next..next + 2 * i).collect();
            next += 2 * i;
        }
        let mut big_blocks = Vec::with_capacity(h - 1);
        let mut next = half + h + 1;
        for i in 1..h {
            big_blocks.push((next..next + 2 * i).collect::<Vec<_>>());
            next += 2 * i;
        }

        let mut values = Vec::with_capacity(n0);
        for i in 1..h {
            values.push(intermediates[i - 1]);
            values.extend_from_slice(&big_blocks[h - i - 1]);
        }
        values.push(intermediates[h - 1]);
        values.push(intermediates[h]);
        for j in 1..h {
            values.extend_from_slice(&small_blocks[j - 1]);
            values.push(intermediates[h + j]);
        }
        let pi = Permutation::from_vec_unchecked(values);
        let tau = pi.apply_adjacent(half, Side::Left)?;
        let (lam, mu) = expected_shapes(k)?;
        Ok(T1Construction {
            k,
            n0,
            pi,
            tau,
            lam,
            mu,
            small_blocks,
            big_blocks,
            intermediates,
        })
    }

    /// Increasing and decreasing decompositions certifying the shapes of
    /// `pi` and `tau`.
    pub fn decompositions(&self) -> ConstructionWitnesses {
        let k = self.k;
        let h = k.div_ceil(2);
        let m = &self.intermediates;

        let mut pi_inc: Vec<Vec<usize>> = vec![m.clone()];
        pi_inc.extend(self.small_blocks.iter().cloned());
        pi_inc.extend(self.big_blocks.iter().cloned());

        let mut tau_inc: Vec<Vec<usize>> = Vec::new();
        for i in 1..h {
            let mut piece = vec![m[i - 1]];
            piece.extend_from_slice(&self.big_blocks[h - i - 1]);
            tau_inc.push(piece);
        }
        for j in 1..h {
            let mut piece = self.small_blocks[j - 1].clone();
            piece.push(m[h + j]);
            tau_inc.push(piece);
        }
        tau_inc.push(vec![m[h]]);
        tau_inc.push(vec![m[h - 1]]);

        // d_1..d_{k+1}: i-th largest of every block goes to d_i; the lower
        // intermediates go to d_k, d_{k-2}, ..., d_1 and the upper ones to
        // d_2, d_4, ..., d_{k+1}.
        let mut d = vec![Vec::new(); k + 1];
        for block in self.big_blocks.iter().chain(&self.small_blocks) {
            for (i, &v) in block.iter().rev().enumerate() {
                d[i].push(v);
            }
        }
        for (idx, &v) in m[..h].iter().enumerate() {
            d[k - 1 - 2 * idx].push(v);
        }
        for (idx, &v) in m[h..].iter().enumerate() {
            d[1 + 2 * idx].push(v);
        }

        // f_1..f_k: i-th largest of every big block to f_i; the smallest of
        // s_j to f_{2j+1} and the rest of s_j by rank; lower intermediates to
        // f_k, ..., f_3, upper ones to f_2, ..., f_{k-1}, middle pair to f_1.
        let mut f = vec![Vec::new(); k];
        for block in &self.big_blocks {
            for (i, &v) in block.iter().rev().enumerate() {
                f[i].push(v);
            }
        }
        for (j, block) in self.small_blocks.iter().enumerate() {
            f[2 * (j + 1)].push(block[0]);
            for (i, &v) in block[1..].iter().rev().enumerate() {
                f[i].push(v);
            }
        }
        for (idx, &v) in m[..h - 1].iter().enumerate() {
            f[k - 1 - 2 * idx].push(v);
        }
        for (idx, &v) in m[h + 1..].iter().enumerate() {
            f[1 + 2 * idx].push(v);
        }
        f[0].push(m[h - 1]);
        f[0].push(m[h]);

        let build = |p: &Permutation, pieces: &[Vec<usize>], dir| {
            Decomposition::from_values(p, pieces, dir).expect("construction values are in range")
        };
        ConstructionWitnesses {
            pi_increasing: build(&self.pi, &pi_inc, Direction::Increasing),
            pi_decreasing: build(&self.pi, &d, Direction::Decreasing),
            tau_increasing: build(&self.tau, &tau_inc, Direction::Increasing),
            tau_decreasing: build(&self.tau, &f, Direction::Decreasing),
        }
    }
}

/// Monotone decompositions of a [`T1Construction`] pair. The decreasing
/// pieces are `d_1, ..., d_{k+1}` for `pi` and `f_1, ..., f_k` for `tau`, in
/// index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionWitnesses {
    pub pi_increasing: Decomposition,
    pub pi_decreasing: Decomposition,
    pub tau_increasing: Decomposition,
    pub tau_decreasing: Decomposition,
}

/// `λ = (k+1, k−1, k−1, ..., 2, 2)` and `μ = (k, k, k−2, k−2, ..., 1, 1)`.
pub fn expected_shapes(k: usize) -> Result<(Partition, Partition)> {
    check_odd(k)?;
    let mut lam = vec![k + 1];
    for e in (1..=(k - 1) / 2).rev() {
        lam.extend([2 * e, 2 * e]);
    }
    let mut mu = Vec::new();
    for o in (0..=(k - 1) / 2).rev() {
        mu.extend([2 * o + 1, 2 * o + 1]);
    }
    Ok((Partition::new(lam)?, Partition::new(mu)?))
}

/// Decompositions for the `k` construction; `k` must be odd and at least 3.
pub fn construction_decompositions(k: usize) -> Result<ConstructionWitnesses> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "decompositions need k ≥ 3, got {k}"
        )));
    }
    Ok(T1Construction::new(k)?.decompositions())
}

/// [`construct_t1`] together with certifying decompositions. The fixed
/// points `n0+1, ..., n` extend the longest increasing piece of each
/// permutation and form singleton decreasing pieces. Needs `n ≥ 8`.
pub fn construct_t1_with_witnesses(
    n: usize,
) -> Result<(Permutation, Permutation, ConstructionWitnesses)> {
    let k = largest_odd_k(n, 1).filter(|&k| k >= 3).ok_or_else(|| {
        Error::InvalidParameter(format!("witnesses need n ≥ 8, got {n}"))
    })?;
    let base = T1Construction::new(k)?;
    let w = base.decompositions();
    let (pi, tau) = construct_t1(n)?;
    let pad: Vec<usize> = (base.n0 + 1..=n).collect();
    let extend = |p: &Permutation, inc: &Decomposition, dec: &Decomposition| {
        let mut inc_vals = inc.values(p);
        let longest = (0..inc_vals.len())
            .max_by_key(|&i| (inc_vals[i].len(), std::cmp::Reverse(i)))
            .expect("at least one piece");
        inc_vals[longest].extend(&pad);
        let mut dec_vals = dec.values(p);
        dec_vals.extend(pad.iter().map(|&v| vec![v]));
        (inc_vals, dec_vals)
    };
    let (pi_inc, pi_dec) = extend(&base.pi, &w.pi_increasing, &w.pi_decreasing);
    let (tau_inc, tau_dec) = extend(&base.tau, &w.tau_increasing, &w.tau_decreasing);
    let witnesses = ConstructionWitnesses {
        pi_increasing: Decomposition::from_values(&pi, &pi_inc, Direction::Increasing)?,
        pi_decreasing: Decomposition::from_values(&pi, &pi_dec, Direction::Decreasing)?,
        tau_increasing: Decomposition::from_values(&tau, &tau_inc, Direction::Increasing)?,
        tau_decreasing: Decomposition::from_values(&tau, &tau_dec, Direction::Decreasing)?,
    };
    Ok((pi, tau, witnesses))
}

/// A pair in `S_n` at left distance 1. Built on the largest `n0 ≤ n` of the
/// form `(k+1)²/2` with `k` odd, followed by the fixed points `n0+1, ..., n`.
pub fn construct_t1(n: usize) -> Result<(Permutation, Permutation)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let g = construct_general_t(n, 1)?;
    Ok((g.pi, g.tau))
}

/// The `t`-block construction: `t` value-shifted copies of the `k` pattern
/// followed by the ascending tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralConstruction {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    /// Block size `(k+1)²/2`.
    pub m: usize,
    pub pi: Permutation,
    pub tau: Permutation,
}

pub fn construct_general_t(n: usize, t: usize) -> Result<GeneralConstruction> {
    if t == 0 || 2 * t > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ t ≤ n/2, got n = {n}, t = {t}"
        )));
    }
    let k = largest_odd_k(n, t).ok_or_else(|| {
        Error::InvalidParameter(format!("no odd k fits n = {n}, t = {t}"))
    })?;
    let base = T1Construction::new(k)?;
    let m = base.n0;
    let mut pi = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    for block in 0..t {
        let shift = block * m;
        pi.extend(base.pi.values().iter().map(|v| v + shift));
        tau.extend(base.tau.values().iter().map(|v| v + shift));
    }
    pi.extend(m * t + 1..=n);
    tau.extend(m * t + 1..=n);
    Ok(GeneralConstruction {
        n,
        t,
        k,
        m,
        pi: Permutation::from_vec_unchecked(pi),
        tau: Permutation::from_vec_unchecked(tau),
    })
}

/// `t` blocks of possibly different odd sizes `k_i`, each carrying one
/// middle swap, followed by the ascending tail. Every block's shapes differ
/// by `+1, −1, +1, ...` down the rows, so the blocks' contributions to `Δ`
/// add up to `Σ (k_i + 1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedConstruction {
    pub n: usize,
    pub t: usize,
    /// Block parameters, largest first.
    pub ks: Vec<usize>,
    pub pi: Permutation,
    pub tau: Permutation,
}

impl BalancedConstruction {
    /// `Σ (k_i + 1)/2`.
    pub fn predicted_delta(&self) -> usize {
        self.ks.iter().map(|k| k.div_ceil(2)).sum()
    }
}

/// Maximizes `Σ x_i` over `t` positive integers with `Σ 2x_i² ≤ n`, using
/// `x_i ∈ {x, x+1}`, and builds one block with `k_i = 2x_i − 1` for each.
pub fn construct_balanced_t(n: usize, t: usize) -> Result<BalancedConstruction> {
    if t == 0 || 2 * t > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ t ≤ n/2, got n = {n}, t = {t}"
        )));
    }
    let mut best: Option<(usize, usize, usize)> = None; // (value, x, upgraded)
    let mut x = 1;
    while 2 * t * x * x <= n {
        let upgraded = (0..=t)
            .rev()
            .find(|&q| 2 * (t - q) * x * x + 2 * q * (x + 1) * (x + 1) <= n)
            .unwrap_or(0);
        let value = t * x + upgraded;
        if best.is_none_or(|b| value > b.0) {
            best = Some((value, x, upgraded));
        }
        x += 1;
    }
    let (_, x, upgraded) = best.expect("x = 1 always fits when 2t ≤ n");
    let ks: Vec<usize> = (0..t).map(|i| if i < upgraded { 2 * x + 1 } else { 2 * x - 1 }).collect();
    let mut pi = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    let mut shift = 0;
    for &k in &ks {
        let base = T1Construction::new(k)?;
        pi.extend(base.pi.values().iter().map(|v| v + shift));
        tau.extend(base.tau.values().iter().map(|v| v + shift));
        shift += base.n0;
    }
    pi.extend(shift + 1..=n);
    tau.extend(shift + 1..=n);
    Ok(BalancedConstruction {
        n,
        t,
        ks,
        pi: Permutation::from_vec_unchecked(pi),
        tau: Permutation::from_vec_unchecked(tau),
    })
}

/// `(1 − √(t/2n)) · √(nt/2)`.
pub fn general_t_lower_bound(n: usize, t: usize) -> f64 {
    let (n, t) = (n as f64, t as f64);
    (1.0 - (t / (2.0 * n)).sqrt()) * (n * t / 2.0).sqrt()
}
