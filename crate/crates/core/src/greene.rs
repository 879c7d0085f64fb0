//! Greene invariants computed without RSK.
//!
//! `μ_j(π)` is the largest total size of `j` disjoint increasing subsequences.
//! It is found by min-cost flow on the comparability DAG of `π`: each position
//! is split into an in/out node pair joined by a unit-capacity arc of cost
//! `-1`, and `j` units of flow are routed from source to sink. Successive
//! shortest augmenting paths give `μ_1, μ_2, ...` in a single run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i32,
    cost: i64,
}

/// Successive-shortest-path min-cost flow with Bellman–Ford (SPFA) searches,
/// so negative arc costs are fine as long as the initial graph is acyclic.
struct MinCostFlow {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl MinCostFlow {
    fn new(nodes: usize) -> Self {
        MinCostFlow {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i32, cost: i64) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
    }

    /// Pushes one unit along a cheapest residual path; returns its cost.
    fn augment(&mut self, source: usize, sink: usize) -> Option<i64> {
        let n = self.adj.len();
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &e in &self.adj[u] {
                let arc = &self.arcs[e];
                if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                    dist[arc.to] = dist[u] + arc.cost;
                    via[arc.to] = e;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if dist[sink] == i64::MAX {
            return None;
        }
        let mut v = sink;
        while v != source {
            let e = via[v];
            self.arcs[e].cap -= 1;
            self.arcs[e ^ 1].cap += 1;
            v = self.arcs[e ^ 1].to;
        }
        Some(dist[sink])
    }
}

/// `μ_1, ..., μ_j` for `j = min(max_chains, n)`.
fn union_profile(pi: &Permutation, max_chains: usize) -> Vec<usize> {
    let n = pi.len();
    let (source, sink) = (0, 1);
    let inn = |v: usize| 2 + 2 * v;
    let out = |v: usize| 3 + 2 * v;
    let mut flow = MinCostFlow::new(2 + 2 * n);
    let vals = pi.values();
    for u in 0..n {
        flow.add_arc(source, inn(u), 1, 0);
        flow.add_arc(inn(u), out(u), 1, -1);
        flow.add_arc(out(u), sink, 1, 0);
        for v in u + 1..n {
            if vals[u] < vals[v] {
                flow.add_arc(out(u), inn(v), 1, 0);
            }
        }
    }
    let mut profile = Vec::new();
    let mut covered = 0i64;
    for _ in 0..max_chains.min(n) {
        match flow.augment(source, sink) {
            Some(cost) => {
                covered -= cost;
                profile.push(covered as usize);
            }
            None => break,
        }
    }
    profile
}

/// `μ_j(π)` by min-cost flow. `j = 0` gives 0 and `j ≥ n` gives `n`.
pub fn max_union_increasing(pi: &Permutation, j: usize) -> usize {
    if j == 0 {
        return 0;
    }
    union_profile(pi, j).last().copied().unwrap_or(0)
}

/// Exhaustive search over assignments of positions to at most `j` chains.
pub fn brute_force_max_union(pi: &Permutation, j: usize) -> Result<usize> {
    const LIMIT: usize = 10;
    if pi.len() > LIMIT {
        return Err(Error::TooLarge {
            what: format!("brute-force union of increasing subsequences on n = {}", pi.len()),
            estimate: (j.min(pi.len()) as u128 + 1).pow(pi.len() as u32),
            limit: 11u128.pow(LIMIT as u32),
        });
    }

    fn search(vals: &[usize], idx: usize, tails: &mut Vec<usize>, j: usize, taken: usize, best: &mut usize) {
        if taken + (vals.len() - idx) <= *best {
            return;
        }
        if idx == vals.len() {
            *best = taken;
            return;
        }
        let v = vals[idx];
        for c in 0..tails.len() {
            // chains with equal tails are interchangeable
            if tails[c] < v && !tails[..c].contains(&tails[c]) {
                let old = std::mem::replace(&mut tails[c], v);
                search(vals, idx + 1, tails, j, taken + 1, best);
                tails[c] = old;
            }
        }
        if tails.len() < j {
            tails.push(v);
            search(vals, idx + 1, tails, j, taken + 1, best);
            tails.pop();
        }
        search(vals, idx + 1, tails, j, taken, best);
    }

    let mut best = 0;
    search(pi.values(), 0, &mut Vec::new(), j, 0, &mut best);
    Ok(best)
}

/// The Greene invariants of a permutation and the shape they determine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreeneProfile {
    /// `μ_1 ≤ μ_2 ≤ ...`, stopping at the first `j` with `μ_j = n`.
    pub mu: Vec<usize>,
    /// `λ_1 = μ_1`, `λ_j = μ_j − μ_{j−1}`.
    pub derived_shape: Partition,
}

pub fn greene_profile(pi: &Permutation) -> GreeneProfile {
    let n = pi.len();
    let mut mu = union_profile(pi, n);
    if let Some(stop) = mu.iter().position(|&m| m == n) {
        mu.truncate(stop + 1);
    }
    let parts: Vec<usize> = mu
        .iter()
        .scan(0, |prev, &m| {
            let part = m - *prev;
            *prev = m;
            Some(part)
        })
        .collect();
    GreeneProfile {
        derived_shape: Partition::new(parts).expect("Greene increments form a partition"),
        mu,
    }
}

/// `λ(π)` via Greene's theorem.
pub fn greene_shape(pi: &Permutation) -> Partition {
    greene_profile(pi).derived_shape
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A split of the positions of a permutation into monotone subsequences.
/// Pieces hold 1-based positions in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Vec<usize>>,
    pub direction: Direction,
}

impl Decomposition {
    pub fn new(mut pieces: Vec<Vec<usize>>, direction: Direction) -> Self {
        for piece in &mut pieces {
            piece.sort_unstable();
        }
        Decomposition { pieces, direction }
    }

    /// Builds a decomposition from pieces given as *values* of `pi`.
    pub fn from_values(pi: &Permutation, value_pieces: &[Vec<usize>], direction: Direction) -> Result<Self> {
        let inv = pi.inverse();
        let pieces = value_pieces
            .iter()
            .map(|piece| {
                piece
                    .iter()
                    .map(|&v| {
                        if v == 0 || v > pi.len() {
                            Err(Error::InvalidParameter(format!("value {v} not in 1..={}", pi.len())))
                        } else {
                            Ok(inv.at(v))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition::new(pieces, direction))
    }

    /// Piece cardinalities sorted into a partition.
    pub fn sizes(&self) -> Partition {
        let mut sizes: Vec<usize> = self.pieces.iter().map(Vec::len).filter(|&s| s > 0).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(sizes).expect("sorted positive sizes")
    }

    /// The pieces read as values of `pi`, in position order.
    pub fn values(&self, pi: &Permutation) -> Vec<Vec<usize>> {
        self.pieces
            .iter()
            .map(|piece| piece.iter().map(|&p| pi.at(p)).collect())
            .collect()
    }
}

/// Outcome of [`verify_witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    /// All three checks hold, which certifies `λ(π) = shape`.
    pub certified: bool,
    /// The size profile of the increasing decomposition.
    pub shape: Partition,
    pub increasing_ok: bool,
    pub decreasing_ok: bool,
    pub conjugate_ok: bool,
    pub problems: Vec<String>,
}

fn check_cover(pi: &Permutation, d: &Decomposition, label: &str) -> Result<()> {
    let n = pi.len();
    let mut seen = vec![false; n + 1];
    for &p in d.pieces.iter().flatten() {
        if p == 0 || p > n {
            return Err(Error::InvalidParameter(format!(
                "{label} decomposition: position {p} outside 1..={n}"
            )));
        }
        if seen[p] {
            return Err(Error::InvalidParameter(format!(
                "{label} decomposition: position {p} used twice"
            )));
        }
        seen[p] = true;
    }
    if let Some(missing) = (1..=n).find(|&p| !seen[p]) {
        return Err(Error::InvalidParameter(format!(
            "{label} decomposition: position {missing} not covered"
        )));
    }
    Ok(())
}

fn monotone(pi: &Permutation, piece: &[usize], direction: Direction) -> bool {
    piece.windows(2).all(|w| match direction {
        Direction::Increasing => pi.at(w[0]) < pi.at(w[1]),
        Direction::Decreasing => pi.at(w[0]) > pi.at(w[1]),
    })
}

/// Certifies `λ(π)` from an increasing decomposition with sizes `λ` and a
/// decreasing decomposition with sizes `λ'`.
pub fn verify_witness(pi: &Permutation, inc: &Decomposition, dec: &Decomposition) -> Result<WitnessVerdict> {
    check_cover(pi, inc, "increasing")?;
    check_cover(pi, dec, "decreasing")?;
    let mut problems = Vec::new();
    let check_dir = |d: &Decomposition, want: Direction, problems: &mut Vec<String>| -> bool {
        let mut ok = d.direction == want;
        if !ok {
            problems.push(format!("expected a {want:?} decomposition, got {:?}", d.direction));
        }
        for (i, piece) in d.pieces.iter().enumerate() {
            if !monotone(pi, piece, want) {
                ok = false;
                problems.push(format!("piece {} is not {want:?}: {:?}", i + 1, piece));
            }
        }
        ok
    };
    let increasing_ok = check_dir(inc, Direction::Increasing, &mut problems);
    let decreasing_ok = check_dir(dec, Direction::Decreasing, &mut problems);
    let shape = inc.sizes();
    let conjugate_ok = shape.conjugate() == dec.sizes();
    if !conjugate_ok {
        problems.push(format!(
            "size profiles {} and {} are not conjugate",
            shape,
            dec.sizes()
        ));
    }
    Ok(WitnessVerdict {
        certified: increasing_ok && decreasing_ok && conjugate_ok,
        shape,
        increasing_ok,
        decreasing_ok,
        conjugate_ok,
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutations;
    use crate::rsk::shape;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn eighteen_pi() -> Permutation {
        p(&[7, 15, 16, 17, 18, 8, 13, 14, 9, 10, 5, 6, 11, 1, 2, 3, 4, 12])
    }

    #[test]
    fn trivial_profiles() {
        let n = 7;
        assert_eq!(max_union_increasing(&Permutation::identity(n), 1), n);
        for j in 1..=n {
            assert_eq!(max_union_increasing(&Permutation::reversal(n), j), j);
        }
        assert_eq!(greene_shape(&Permutation::identity(n)).parts(), &[n]);
        assert_eq!(brute_force_max_union(&p(&[2, 1]), 1).unwrap(), 1);
        assert_eq!(brute_force_max_union(&p(&[3, 1, 2]), 2).unwrap(), 3);
        assert_eq!(max_union_increasing(&p(&[3, 1, 2]), 0), 0);
    }

    #[test]
    fn eighteen_profile() {
        let pi = eighteen_pi();
        assert_eq!(max_union_increasing(&pi, 1), 6);
        assert_eq!(max_union_increasing(&pi, 3), 14);
        let tau = pi.apply_adjacent(9, crate::Side::Left).unwrap();
        assert_eq!(greene_shape(&tau).parts(), &[5, 5, 3, 3, 1, 1]);
    }

    #[test]
    fn flow_matches_brute_force_on_s6() {
        for pi in Permutations::new(6) {
            for j in 1..=6 {
                assert_eq!(
                    max_union_increasing(&pi, j),
                    brute_force_max_union(&pi, j).unwrap(),
                    "{pi:?} j={j}"
                );
            }
        }
    }

    #[test]
    fn greene_shape_matches_rsk() {
        for n in 1..=6 {
            for pi in Permutations::new(n) {
                assert_eq!(greene_shape(&pi), shape(&pi));
            }
        }
    }

    #[test]
    fn profile_is_concave_and_consistent_with_reversal() {
        for pi in Permutations::new(6) {
            let prof = greene_profile(&pi);
            let mut full = prof.mu.clone();
            full.insert(0, 0);
            assert!(full.windows(2).all(|w| w[0] <= w[1]));
            assert!(full.windows(3).all(|w| w[2] - w[1] <= w[1] - w[0]));
            let conj = shape(&pi).conjugate();
            let rev = pi.reverse();
            for (j, want) in conj.prefix_sums(conj.len()).into_iter().enumerate() {
                assert_eq!(max_union_increasing(&rev, j + 1), want);
            }
        }
    }

    #[test]
    fn brute_force_refuses_large_inputs() {
        assert!(matches!(
            brute_force_max_union(&Permutation::identity(11), 2),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn identity_witness() {
        let n = 5;
        let id = Permutation::identity(n);
        let inc = Decomposition::new(vec![(1..=n).collect()], Direction::Increasing);
        let dec = Decomposition::new((1..=n).map(|i| vec![i]).collect(), Direction::Decreasing);
        let v = verify_witness(&id, &inc, &dec).unwrap();
        assert!(v.certified);
        assert_eq!(v.shape.parts(), &[n]);
    }

    #[test]
    fn eighteen_witnesses() {
        let pi = eighteen_pi();
        let inc = Decomposition::from_values(
            &pi,
            &[
                vec![7, 8, 9, 10, 11, 12],
                vec![1, 2, 3, 4],
                vec![5, 6],
                vec![15, 16, 17, 18],
                vec![13, 14],
            ],
            Direction::Increasing,
        )
        .unwrap();
        let dec = Decomposition::from_values(
            &pi,
            &[
                vec![18, 14, 9, 6, 4],
                vec![17, 13, 10, 5, 3],
                vec![16, 8, 2],
                vec![15, 11, 1],
                vec![7],
                vec![12],
            ],
            Direction::Decreasing,
        )
        .unwrap();
        let v = verify_witness(&pi, &inc, &dec).unwrap();
        assert!(v.certified, "{:?}", v.problems);
        assert_eq!(v.shape.parts(), &[6, 4, 4, 2, 2]);

        let tau = pi.apply_adjacent(9, crate::Side::Left).unwrap();
        let inc = Decomposition::from_values(
            &tau,
            &[
                vec![7, 15, 16, 17, 18],
                vec![8, 13, 14],
                vec![5, 6, 11],
                vec![1, 2, 3, 4, 12],
                vec![10],
                vec![9],
            ],
            Direction::Increasing,
        )
        .unwrap();
        let dec = Decomposition::from_values(
            &tau,
            &[
                vec![18, 14, 10, 9, 6, 4],
                vec![17, 13, 11, 3],
                vec![16, 8, 5, 2],
                vec![15, 12],
                vec![7, 1],
            ],
            Direction::Decreasing,
        )
        .unwrap();
        let v = verify_witness(&tau, &inc, &dec).unwrap();
        assert!(v.certified, "{:?}", v.problems);
        assert_eq!(v.shape.parts(), &[5, 5, 3, 3, 1, 1]);
    }

    #[test]
    fn witness_failures() {
        let pi = p(&[2, 1, 3]);
        let inc = Decomposition::new(vec![vec![1, 2, 3]], Direction::Increasing);
        let dec = Decomposition::new(vec![vec![1], vec![2], vec![3]], Direction::Decreasing);
        let v = verify_witness(&pi, &inc, &dec).unwrap();
        assert!(!v.certified);
        assert!(!v.increasing_ok);

        let overlapping = Decomposition::new(vec![vec![1, 2], vec![2, 3]], Direction::Increasing);
        assert!(verify_witness(&pi, &overlapping, &dec).is_err());
        let short = Decomposition::new(vec![vec![1]], Direction::Decreasing);
        assert!(verify_witness(&pi, &inc, &short).is_err());

        // monotone pieces whose size profiles (2,1) and (1,1,1) are not conjugate
        let inc = Decomposition::new(vec![vec![1, 3], vec![2]], Direction::Increasing);
        let dec = Decomposition::new(vec![vec![1], vec![2], vec![3]], Direction::Decreasing);
        let v = verify_witness(&pi, &inc, &dec).unwrap();
        assert!(v.increasing_ok && v.decreasing_ok);
        assert!(!v.conjugate_ok);
    }
}
