use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;
use rsk_core::metrics::{
    adjacent_distance, count_inversions, count_inversions_naive, delta, delta_checked,
    transposition_distance,
};
use rsk_core::perm::Permutations;
use rsk_core::{Partition, Permutation, Side};

fn bfs(start: &Permutation, side: Side) -> HashMap<Permutation, u64> {
    let n = start.len();
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for i in 1..n {
            let q = p.apply_adjacent(i, side).unwrap();
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

#[test]
fn adjacent_distance_matches_bfs() {
    for n in 1..=5 {
        for side in [Side::Left, Side::Right] {
            for start in Permutations::new(n).step_by(7) {
                for (tau, d) in bfs(&start, side) {
                    assert_eq!(adjacent_distance(&start, &tau, side).unwrap(), d);
                }
            }
        }
    }
}

#[test]
fn transposition_distance_matches_bfs() {
    for start in Permutations::new(5).step_by(11) {
        let mut dist = HashMap::from([(start.clone(), 0usize)]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(p) = queue.pop_front() {
            let d = dist[&p];
            for i in 1..5 {
                for j in i + 1..=5 {
                    let q = p.swap_positions(i, j).unwrap();
                    if !dist.contains_key(&q) {
                        dist.insert(q.clone(), d + 1);
                        queue.push_back(q);
                    }
                }
            }
        }
        for (tau, d) in dist {
            assert_eq!(transposition_distance(&start, &tau).unwrap(), d);
        }
    }
}

#[test]
fn delta_examples() {
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    assert_eq!(delta(&p(&[6, 4, 4, 2, 2]), &p(&[5, 5, 3, 3, 1, 1])), 3);
    assert_eq!(delta(&p(&[3]), &p(&[1, 1, 1])), 2);
    assert_eq!(delta(&p(&[2, 1]), &p(&[2, 1])), 0);
    let r = delta_checked(&p(&[3]), &p(&[1]));
    assert!((r.value() - 1.0).abs() < 1e-12);
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn inversions_agree(v in Just((1..=80usize).collect::<Vec<_>>()).prop_shuffle()) {
        prop_assert_eq!(count_inversions(&v), count_inversions_naive(&v));
    }

    #[test]
    fn sides_are_exchanged_by_inversion((a, b) in (2usize..30).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assert_eq!(
            adjacent_distance(&a, &b, Side::Left).unwrap(),
            adjacent_distance(&a.inverse(), &b.inverse(), Side::Right).unwrap()
        );
    }

    #[test]
    fn one_adjacent_swap_is_distance_one(p in (2usize..30).prop_flat_map(perm), i in 1usize..29) {
        let i = 1 + (i - 1) % (p.len() - 1);
        for side in [Side::Left, Side::Right] {
            let q = p.apply_adjacent(i, side).unwrap();
            prop_assert_eq!(adjacent_distance(&p, &q, side).unwrap(), 1);
        }
    }
}
