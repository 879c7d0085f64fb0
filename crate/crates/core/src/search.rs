//! Exhaustive and randomized exploration of pairs at small transposition
//! distance, tracking `Δ` between their RSK shapes.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::construct_t1;
use crate::error::{Error, Result};
use crate::greene::greene_shape;
use crate::metrics::{
    adjacent_distance, check_prefix_inequalities, decompose_blocks, delta, max_prefix_deviation,
    transposition_distance,
};
use crate::partition::Partition;
use crate::perm::{factorial, Permutation, Permutations, Side};
use crate::rsk::shape;

/// Largest `n` accepted by [`exhaustive_t1`].
pub const EXHAUSTIVE_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub pi: Permutation,
    pub tau: Permutation,
    pub lam: Partition,
    pub mu: Partition,
    pub delta: usize,
    /// Distance between `pi` and `tau` on the search side.
    pub distance: u64,
}

impl Witness {
    fn new(pi: Permutation, tau: Permutation, side: Side) -> Self {
        let (lam, mu) = (shape(&pi), shape(&tau));
        let distance = adjacent_distance(&pi, &tau, side).expect("same size");
        Witness { delta: delta(&lam, &mu), pi, tau, lam, mu, distance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub t: usize,
    pub side: Side,
    pub max_delta: usize,
    pub witnesses: Vec<Witness>,
    /// The cap `t·√(n/2)`, a theorem for every `t`.
    pub bound: f64,
    pub seed: Option<u64>,
    /// Ordered pairs (or trials) examined.
    pub examined: u64,
    /// Pairs (or trials) with `Δ` above `bound`.
    pub violations: u64,
}

fn cap(n: usize, t: u64) -> f64 {
    t as f64 * (n as f64 / 2.0).sqrt()
}

/// `Δ ≤ t·√(n/2)` without rounding: `2Δ² ≤ n t²`.
fn within_cap(delta: usize, n: usize, t: u64) -> bool {
    2 * (delta as u128).pow(2) <= n as u128 * (t as u128).pow(2)
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveOptions {
    /// Visit only `π` that are least in their orbit under reversal and
    /// complement.
    pub prune: bool,
    pub workers: Option<usize>,
}

/// Maximum `Δ` over all `π ∈ S_n` and all adjacent transpositions on `side`,
/// with every maximizing pair up to side-preserving symmetry.
pub fn exhaustive_t1(n: usize, side: Side, opts: ExhaustiveOptions) -> Result<SearchResult> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: format!("exhaustive search over S_{n}"),
            estimate: factorial(n) * (n as u128 - 1),
            limit: factorial(EXHAUSTIVE_MAX_N) * (EXHAUSTIVE_MAX_N as u128 - 1),
        });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n ≥ 2, got {n}")));
    }

    struct Partial {
        max: usize,
        witnesses: BTreeSet<(Vec<usize>, Vec<usize>)>,
        examined: u64,
        violations: u64,
    }
    let scan = |first: usize| -> Partial {
        let mut part = Partial { max: 0, witnesses: BTreeSet::new(), examined: 0, violations: 0 };
        for pi in Permutations::with_first(n, first) {
            if opts.prune && !is_orbit_minimal(&pi) {
                continue;
            }
            let lam = shape(&pi);
            for i in 1..n {
                let tau = pi.apply_adjacent(i, side).expect("index in range");
                let d = delta(&lam, &shape(&tau));
                part.examined += 1;
                if !within_cap(d, n, 1) {
                    part.violations += 1;
                }
                if d > part.max {
                    part.max = d;
                    part.witnesses.clear();
                }
                if d == part.max {
                    let (p, q) = canonicalize_on_side(&pi, &tau);
                    part.witnesses.insert((p.into_values(), q.into_values()));
                }
            }
        }
        part
    };
    let parts: Vec<Partial> = in_pool(opts.workers, || (1..=n).into_par_iter().map(scan).collect());

    let max_delta = parts.iter().map(|p| p.max).max().unwrap_or(0);
    let mut keys = BTreeSet::new();
    for p in parts.iter().filter(|p| p.max == max_delta) {
        keys.extend(p.witnesses.iter().cloned());
    }
    let witnesses = keys
        .into_iter()
        .map(|(p, q)| {
            Witness::new(Permutation::from_vec_unchecked(p), Permutation::from_vec_unchecked(q), side)
        })
        .collect();
    Ok(SearchResult {
        n,
        t: 1,
        side,
        max_delta,
        witnesses,
        bound: cap(n, 1),
        seed: None,
        examined: parts.iter().map(|p| p.examined).sum(),
        violations: parts.iter().map(|p| p.violations).sum(),
    })
}

fn is_orbit_minimal(pi: &Permutation) -> bool {
    let (r, c) = (pi.reverse(), pi.complement());
    let rc = r.complement();
    pi.values() <= r.values() && pi.values() <= c.values() && pi.values() <= rc.values()
}

fn least_pair(candidates: impl Iterator<Item = (Permutation, Permutation)>) -> (Permutation, Permutation) {
    candidates
        .flat_map(|(p, q)| [(p.clone(), q.clone()), (q, p)])
        .min_by(|x, y| (x.0.values(), x.1.values()).cmp(&(y.0.values(), y.1.values())))
        .expect("orbit is non-empty")
}

fn reflections(pi: &Permutation, tau: &Permutation) -> [(Permutation, Permutation); 4] {
    [
        (pi.clone(), tau.clone()),
        (pi.reverse(), tau.reverse()),
        (pi.complement(), tau.complement()),
        (pi.reverse().complement(), tau.reverse().complement()),
    ]
}

/// Least pair in the orbit of `(π, τ)` under reversing both, inverting both,
/// complementing both and swapping `π ↔ τ`. Each of these preserves `Δ`.
pub fn canonicalize_pair(pi: &Permutation, tau: &Permutation) -> Result<(Permutation, Permutation)> {
    crate::perm::check_same_size(pi, tau)?;
    let (pi_inv, tau_inv) = (pi.inverse(), tau.inverse());
    let orbit = reflections(pi, tau).into_iter().chain(reflections(&pi_inv, &tau_inv));
    Ok(least_pair(orbit))
}

/// As [`canonicalize_pair`] without inversion, which exchanges position and
/// value swaps; the result stays at the same left and right distances.
pub fn canonicalize_on_side(pi: &Permutation, tau: &Permutation) -> (Permutation, Permutation) {
    least_pair(reflections(pi, tau).into_iter())
}

/// Whether `greene_shape` reproduces both RSK shapes of every witness.
pub fn certify_witnesses(result: &SearchResult) -> bool {
    result
        .witnesses
        .iter()
        .all(|w| greene_shape(&w.pi) == w.lam && greene_shape(&w.tau) == w.mu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub side: Side,
    pub seed: u64,
    pub workers: Option<usize>,
}

/// One random walk `σ_0, ..., σ_t` of adjacent transpositions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub realized_d: u64,
    pub delta: usize,
    /// `Δ / √(n d ln max(d, 3))` with `d` the realized distance; 0 when `d = 0`.
    pub ratio: f64,
    /// `Δ / √(n t ln max(t, 3))`.
    pub envelope_ratio: f64,
    /// Steps that put their pair in increasing order.
    pub r: usize,
    /// Steps that put their pair in decreasing order.
    pub s: usize,
    pub prefix_ok: bool,
    pub max_block_area: usize,
    /// Every block area is at most the realized distance.
    pub blocks_ok: bool,
    /// `Δ ≤ d·√(n/2)`.
    pub cap_ok: bool,
    /// `Σ Δ(σ_i, σ_{i+1})`.
    pub step_delta_sum: usize,
    pub triangle_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkSummary {
    pub trials: usize,
    pub max_delta: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub max_envelope_ratio: f64,
    pub mean_envelope_ratio: f64,
    pub max_block_area: usize,
    /// Number of trials with each value of `Δ`.
    pub delta_histogram: BTreeMap<usize, u64>,
    pub prefix_failures: u64,
    pub block_failures: u64,
    pub cap_failures: u64,
    pub triangle_failures: u64,
}

impl WalkSummary {
    pub fn all_ok(&self) -> bool {
        self.prefix_failures == 0
            && self.block_failures == 0
            && self.cap_failures == 0
            && self.triangle_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkSweep {
    pub result: SearchResult,
    pub summary: WalkSummary,
    pub records: Vec<TrialRecord>,
}

/// Generator for trial `trial`: the seed picks the key, the trial index
/// picks the stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn normalized(delta: usize, n: usize, d: u64) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let d = d as f64;
    delta as f64 / (n as f64 * d * d.max(3.0).ln()).sqrt()
}

fn run_trial(cfg: &WalkConfig, trial: usize) -> (TrialRecord, Witness) {
    let mut rng = trial_rng(cfg.seed, trial);
    let start = Permutation::random(cfg.n, &mut rng);
    let mut current = start.clone();
    let mut current_shape = shape(&current);
    let (mut r, mut s, mut step_delta_sum) = (0, 0, 0);
    for _ in 0..cfg.t {
        let i = rng.gen_range(1..cfg.n);
        if current.adjacent_pair_increasing(i, cfg.side) {
            s += 1;
        } else {
            r += 1;
        }
        current = current.apply_adjacent(i, cfg.side).expect("index in range");
        let next_shape = shape(&current);
        step_delta_sum += delta(&current_shape, &next_shape);
        current_shape = next_shape;
    }
    let witness = Witness::new(start, current, cfg.side);
    let d = witness.distance;
    let blocks = decompose_blocks(&witness.lam, &witness.mu);
    let max_block_area = blocks.iter().map(|b| b.area).max().unwrap_or(0);
    let record = TrialRecord {
        trial,
        realized_d: d,
        delta: witness.delta,
        ratio: normalized(witness.delta, cfg.n, d),
        envelope_ratio: normalized(witness.delta, cfg.n, cfg.t as u64),
        r,
        s,
        prefix_ok: check_prefix_inequalities(&witness.lam, &witness.mu, r, s).holds,
        max_block_area,
        blocks_ok: max_block_area as u64 <= d,
        cap_ok: within_cap(witness.delta, cfg.n, d),
        step_delta_sum,
        triangle_ok: witness.delta <= step_delta_sum,
    };
    (record, witness)
}

fn summarize<'a>(records: impl Iterator<Item = &'a TrialRecord>) -> WalkSummary {
    let mut s = WalkSummary {
        trials: 0,
        max_delta: 0,
        max_ratio: 0.0,
        mean_ratio: 0.0,
        max_envelope_ratio: 0.0,
        mean_envelope_ratio: 0.0,
        max_block_area: 0,
        delta_histogram: BTreeMap::new(),
        prefix_failures: 0,
        block_failures: 0,
        cap_failures: 0,
        triangle_failures: 0,
    };
    for rec in records {
        s.trials += 1;
        s.max_delta = s.max_delta.max(rec.delta);
        s.max_ratio = s.max_ratio.max(rec.ratio);
        s.mean_ratio += rec.ratio;
        s.max_envelope_ratio = s.max_envelope_ratio.max(rec.envelope_ratio);
        s.mean_envelope_ratio += rec.envelope_ratio;
        s.max_block_area = s.max_block_area.max(rec.max_block_area);
        *s.delta_histogram.entry(rec.delta).or_default() += 1;
        s.prefix_failures += u64::from(!rec.prefix_ok);
        s.block_failures += u64::from(!rec.blocks_ok);
        s.cap_failures += u64::from(!rec.cap_ok);
        s.triangle_failures += u64::from(!rec.triangle_ok);
    }
    if s.trials > 0 {
        s.mean_ratio /= s.trials as f64;
        s.mean_envelope_ratio /= s.trials as f64;
    }
    s
}

fn check_walk_params(n: usize, trials: usize) -> Result<()> {
    if n < 2 || trials == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n ≥ 2 and at least one trial, got n = {n}, trials = {trials}"
        )));
    }
    Ok(())
}

/// Random walks of `t` uniform adjacent transpositions from uniform starts.
/// Output depends only on the configuration, not on scheduling.
pub fn random_walk_sweep(cfg: &WalkConfig) -> Result<WalkSweep> {
    check_walk_params(cfg.n, cfg.trials)?;
    let runs: Vec<(TrialRecord, Witness)> =
        in_pool(cfg.workers, || (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect());
    let summary = summarize(runs.iter().map(|x| &x.0));
    let witnesses = runs
        .iter()
        .filter(|(rec, _)| rec.delta == summary.max_delta)
        .map(|(_, w)| w.clone())
        .collect();
    let violations = runs
        .iter()
        .filter(|(rec, _)| !within_cap(rec.delta, cfg.n, cfg.t as u64))
        .count() as u64;
    let result = SearchResult {
        n: cfg.n,
        t: cfg.t,
        side: cfg.side,
        max_delta: summary.max_delta,
        witnesses,
        bound: cap(cfg.n, cfg.t as u64),
        seed: Some(cfg.seed),
        examined: cfg.trials as u64,
        violations,
    };
    Ok(WalkSweep {
        result,
        summary,
        records: runs.into_iter().map(|x| x.0).collect(),
    })
}

/// One walk of `t` uniform (not necessarily adjacent) position swaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranspositionTrial {
    pub trial: usize,
    /// Minimum number of arbitrary transpositions between the endpoints.
    pub realized_d: usize,
    pub delta: usize,
    /// `Δ / d`, 0 when `d = 0`.
    pub delta_per_step: f64,
    /// `max_j |Σ_{i≤j} λ_i − Σ_{i≤j} μ_i|`.
    pub prefix_deviation: usize,
    /// `prefix_deviation ≤ 2d`.
    pub prefix_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranspositionSweep {
    pub n: usize,
    pub t: usize,
    pub seed: u64,
    pub max_delta: usize,
    pub max_delta_per_step: f64,
    pub max_prefix_deviation: usize,
    pub prefix_failures: u64,
    pub records: Vec<TranspositionTrial>,
}

pub fn general_transposition_sweep(
    n: usize,
    t: usize,
    trials: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<TranspositionSweep> {
    check_walk_params(n, trials)?;
    let run = |trial: usize| {
        let mut rng = trial_rng(seed, trial);
        let start = Permutation::random(n, &mut rng);
        let mut current = start.clone();
        for _ in 0..t {
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            current = current.swap_positions(i, j).expect("indices in range");
        }
        let (lam, mu) = (shape(&start), shape(&current));
        let d = transposition_distance(&start, &current).expect("same size");
        let dev = max_prefix_deviation(&lam, &mu);
        let delta = delta(&lam, &mu);
        TranspositionTrial {
            trial,
            realized_d: d,
            delta,
            delta_per_step: if d == 0 { 0.0 } else { delta as f64 / d as f64 },
            prefix_deviation: dev,
            prefix_ok: dev <= 2 * d,
        }
    };
    let records: Vec<TranspositionTrial> =
        in_pool(workers, || (0..trials).into_par_iter().map(run).collect());
    Ok(TranspositionSweep {
        n,
        t,
        seed,
        max_delta: records.iter().map(|r| r.delta).max().unwrap_or(0),
        max_delta_per_step: records.iter().map(|r| r.delta_per_step).fold(0.0, f64::max),
        max_prefix_deviation: records.iter().map(|r| r.prefix_deviation).max().unwrap_or(0),
        prefix_failures: records.iter().filter(|r| !r.prefix_ok).count() as u64,
        records,
    })
}

/// An extremal pair in `S_18` at right distance 1 found by random search,
/// unlike the constructed family.
pub const SIMULATION_EXAMPLE: [usize; 18] = [13, 14, 10, 15, 6, 1, 18, 2, 16, 9, 11, 12, 3, 7, 17, 8, 4, 5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleVerdict {
    pub pi: Permutation,
    pub tau: Permutation,
    pub lam: Partition,
    pub mu: Partition,
    pub delta: usize,
    pub right_distance: u64,
    /// `Δ = 3 = √(18/2)` and right distance 1.
    pub holds: bool,
    /// Whether the pair lies in the symmetry orbit of the constructed pair
    /// on 18 points. Recorded, not asserted.
    pub in_construction_orbit: bool,
}

pub fn verify_simulation_example() -> ExampleVerdict {
    let pi = Permutation::from_vec_unchecked(SIMULATION_EXAMPLE.to_vec());
    let tau = pi.apply_adjacent(10, Side::Right).expect("index in range");
    let (lam, mu) = (shape(&pi), shape(&tau));
    let delta = delta(&lam, &mu);
    let right_distance = adjacent_distance(&pi, &tau, Side::Right).expect("same size");
    let (cp, ct) = construct_t1(18).expect("n = 18 is valid");
    let in_construction_orbit = canonicalize_pair(&pi, &tau).expect("same size")
        == canonicalize_pair(&cp, &ct).expect("same size");
    ExampleVerdict {
        holds: delta == 3 && right_distance == 1,
        pi,
        tau,
        lam,
        mu,
        delta,
        right_distance,
        in_construction_orbit,
    }
}
