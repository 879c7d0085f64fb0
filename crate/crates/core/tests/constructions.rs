use rsk_core::construct::{
    base_size, construct_balanced_t, construct_general_t, construct_t1, construct_t1_with_witnesses,
    construction_decompositions, expected_shapes, general_t_lower_bound, largest_odd_k, T1Construction,
};
use rsk_core::greene::verify_witness;
use rsk_core::metrics::{adjacent_distance, delta};
use rsk_core::rsk::shape;
use rsk_core::Side;

#[test]
fn family_shapes_and_delta() {
    for k in (3..=13).step_by(2) {
        let c = T1Construction::new(k).unwrap();
        let (lam, mu) = expected_shapes(k).unwrap();
        assert_eq!(shape(&c.pi), lam);
        assert_eq!(shape(&c.tau), mu);
        assert_eq!(lam.conjugate(), mu);
        assert_eq!(delta(&lam, &mu), k.div_ceil(2));
        assert_eq!(k.div_ceil(2).pow(2) * 2, c.n0);
        assert_eq!(adjacent_distance(&c.pi, &c.tau, Side::Left).unwrap(), 1);
        let w = construction_decompositions(k).unwrap();
        assert!(verify_witness(&c.pi, &w.pi_increasing, &w.pi_decreasing).unwrap().certified);
        assert!(verify_witness(&c.tau, &w.tau_increasing, &w.tau_decreasing).unwrap().certified);
    }
}

#[test]
fn padded_sizes() {
    for (n, n0) in [(20, 18), (50, 50), (99, 98), (31, 18), (32, 32)] {
        let k = largest_odd_k(n, 1).unwrap();
        assert_eq!(base_size(k), n0);
        let (pi, tau) = construct_t1(n).unwrap();
        assert_eq!(delta(&shape(&pi), &shape(&tau)), k.div_ceil(2));
        let (_, _, w) = construct_t1_with_witnesses(n).unwrap();
        assert!(verify_witness(&pi, &w.pi_increasing, &w.pi_decreasing).unwrap().certified);
    }
}

#[test]
fn general_blocks() {
    let g = construct_general_t(36, 2).unwrap();
    assert_eq!((g.k, g.m), (5, 18));
    assert_eq!(delta(&shape(&g.pi), &shape(&g.tau)), 6);
    assert_eq!(adjacent_distance(&g.pi, &g.tau, Side::Left).unwrap(), 2);
    for (n, t) in [(100, 3), (77, 5), (200, 4)] {
        let g = construct_general_t(n, t).unwrap();
        assert_eq!(delta(&shape(&g.pi), &shape(&g.tau)), t * (g.k + 1) / 2);
        assert_eq!(adjacent_distance(&g.pi, &g.tau, Side::Left).unwrap(), t as u64);
    }
    assert!(construct_general_t(10, 6).is_err());
    assert!(construct_general_t(10, 0).is_err());
}

#[test]
fn balanced_meets_bound_for_several_swaps() {
    for n in 18..=120 {
        for t in 2..=5 {
            let b = construct_balanced_t(n, t).unwrap();
            let d = delta(&shape(&b.pi), &shape(&b.tau));
            assert!(d as f64 >= general_t_lower_bound(n, t), "n = {n}, t = {t}");
        }
    }
}
