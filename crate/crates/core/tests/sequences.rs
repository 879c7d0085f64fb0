use proptest::prelude::*;
use rsk_core::seqlemma::{
    check_bound, continuous_optimum, kkt_residuals, reduce_pair, sequence_stats, tight_sequence,
    tightness_ratio, verify_bound_exhaustive, SequencePair, TIGHT_RATIO_FLOOR,
};
use rsk_core::Partition;

#[test]
fn bound_holds_on_small_pairs() {
    let r = verify_bound_exhaustive(4, &[3, 4, 5, 6, 7, 8, 9, 10]).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.pairs_checked > 1000);
    assert!(r.worst_fraction < 1.0);
}

#[test]
fn tight_family_ratio() {
    for k in 3..=12 {
        let pair = tight_sequence(k).unwrap();
        assert!(check_bound(&pair).unwrap().holds);
        assert!(tightness_ratio(&pair) >= TIGHT_RATIO_FLOOR, "k = {k}");
    }
}

#[test]
fn stationary_points() {
    for k in 2..=6 {
        for ell1 in 1..=3 {
            for ell2 in 1..=3 {
                for c in [1.5, 2.0, 3.0] {
                    let opt = continuous_optimum(k, ell1, ell2, c).unwrap();
                    assert!(kkt_residuals(&opt).iter().all(|r| r.abs() <= 1e-9));
                    assert!(((opt.t - opt.closed_form_t()) / opt.t).abs() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn reduction_of_constructed_shapes() {
    let lam = Partition::new(vec![6, 4, 4, 2, 2]).unwrap();
    let mu = Partition::new(vec![5, 5, 3, 3, 1, 1]).unwrap();
    let (_, pair) = reduce_pair(&lam, &mu).unwrap();
    // total block area is twice the diagram Δ
    assert_eq!(sequence_stats(&pair).delta, 6);
    assert!(check_bound(&pair).unwrap().holds);
}

proptest! {
    #[test]
    fn bound_on_random_pairs(entries in prop::collection::vec((1u64..=6, 1u64..=6), 2..7)) {
        let mut a: Vec<u64> = entries.iter().map(|e| e.0).collect();
        let mut b: Vec<u64> = entries.iter().map(|e| e.1).collect();
        a[0] = 1;
        *b.last_mut().unwrap() = 1;
        let pair = SequencePair::new(a, b, 36).unwrap();
        prop_assert!(check_bound(&pair).unwrap().holds);
    }
}
