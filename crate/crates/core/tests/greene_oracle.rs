use proptest::prelude::*;
use rsk_core::construct::{construct_t1_with_witnesses, T1Construction};
use rsk_core::greene::{
    brute_force_max_union, greene_profile, greene_shape, max_union_increasing, verify_witness,
};
use rsk_core::perm::Permutations;
use rsk_core::rsk::shape;
use rsk_core::Permutation;

fn perm_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Permutation> {
    (min_n..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

#[test]
fn matches_rsk_on_s7() {
    for pi in Permutations::new(7) {
        assert_eq!(greene_shape(&pi), shape(&pi), "{:?}", pi.values());
    }
}

#[test]
fn flow_matches_brute_force_on_s6() {
    for pi in Permutations::new(6) {
        for j in 1..=6 {
            assert_eq!(max_union_increasing(&pi, j), brute_force_max_union(&pi, j).unwrap());
        }
    }
}

#[test]
fn brute_force_refuses_large_inputs() {
    assert!(brute_force_max_union(&Permutation::identity(11), 1).is_err());
}

#[test]
fn eighteen_point_pair() {
    let c = T1Construction::new(5).unwrap();
    assert_eq!(max_union_increasing(&c.pi, 1), 6);
    assert_eq!(max_union_increasing(&c.pi, 3), 14);
    assert_eq!(greene_shape(&c.tau).parts(), &[5, 5, 3, 3, 1, 1]);
}

#[test]
fn padded_witnesses() {
    for n in [8, 19, 33, 64] {
        let (pi, tau, w) = construct_t1_with_witnesses(n).unwrap();
        let a = verify_witness(&pi, &w.pi_increasing, &w.pi_decreasing).unwrap();
        let b = verify_witness(&tau, &w.tau_increasing, &w.tau_decreasing).unwrap();
        assert!(a.certified && b.certified);
        assert_eq!(a.shape, shape(&pi));
        assert_eq!(b.shape, shape(&tau));
    }
}

proptest! {
    #[test]
    fn flow_matches_brute_force(pi in perm_strategy(1, 9), j in 1usize..=9) {
        prop_assert_eq!(max_union_increasing(&pi, j.min(pi.len())), brute_force_max_union(&pi, j.min(pi.len())).unwrap());
    }

    #[test]
    fn matches_rsk(pi in perm_strategy(1, 25)) {
        prop_assert_eq!(greene_shape(&pi), shape(&pi));
    }

    #[test]
    fn profile_is_concave(pi in perm_strategy(2, 20)) {
        let mu = greene_profile(&pi).mu;
        let mut prev_gain = usize::MAX;
        let mut prev = 0;
        for &m in &mu {
            prop_assert!(m >= prev);
            prop_assert!(m - prev <= prev_gain);
            prev_gain = m - prev;
            prev = m;
        }
        prop_assert_eq!(*mu.last().unwrap(), pi.len());
    }

    #[test]
    fn reversal_gives_conjugate_prefix_sums(pi in perm_strategy(1, 15)) {
        let conj = shape(&pi).conjugate();
        let rev = pi.reverse();
        let mut acc = 0;
        for j in 1..=conj.len() {
            acc += conj.part(j);
            prop_assert_eq!(max_union_increasing(&rev, j), acc);
        }
    }
}
