use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use tridct::random::{random_vector, seeded};
use tridct::{Filter, MultiIndex, Plan, PlanF32, Signal, Spectrum, WeightMatrices};

#[test]
fn size_two_matrix() {
    let p = Plan::build(2).unwrap();
    // nodes (0, 1/8), (0, 3/8), (1/4, 3/8); rows T00, T01 = x2, T10 = x1
    let want = DMatrix::from_row_slice(
        3,
        3,
        &[1.0, 1.0, 1.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0, 0.5, 0.5, -0.5],
    );
    assert!((p.f() - &want).amax() < 1e-15);
    assert_eq!(p.h_oplus().as_slice(), &[2.0, 8.0, 8.0]);
    // G = FᵀH⊕F = diag(2 + 4 + 2, 2 + 4 + 2, 2 + 2)
    let g = p.f().transpose() * p.h_oplus_matrix() * p.f();
    assert!((g - DMatrix::from_diagonal(&DVector::from_vec(vec![8.0, 8.0, 4.0]))).amax() < 1e-14);
}

#[test]
fn weights_match_pattern() {
    let w = WeightMatrices::build(3).unwrap();
    let h: Vec<f64> = w.h_oplus::<f64>().iter().copied().collect();
    assert_eq!(h, vec![2.0, 8.0, 8.0, 8.0, 16.0, 8.0]);
}

#[test]
fn transforms_match_dense_solve() {
    let mut rng = seeded(17);
    for n in [1, 3, 7, 12] {
        let p = Plan::build(n).unwrap();
        let lu = p.f().transpose().lu();
        let s = Signal::from_vec(random_vector(&mut rng, p.size()));
        let solved = lu.solve(&s.0).unwrap();
        let analyzed = p.analyze(&s).unwrap();
        assert!((analyzed.0 - &solved).amax() < 1e-9, "n = {n}");

        let c = Spectrum::from_vec(random_vector(&mut rng, p.size()));
        let direct = p.f().transpose() * &c.0;
        assert!((p.synthesize(&c).unwrap().0 - direct).amax() < 1e-12);
    }
}

#[test]
fn constant_signal_concentrates_on_constant_term() {
    let p = Plan::build(6).unwrap();
    let c = p.analyze(&Signal::from_vec(vec![2.5; p.size()])).unwrap();
    assert!((c.0[0] - 2.5).abs() < 1e-12);
    assert!(c.0.rows(1, p.size() - 1).amax() < 1e-12);
}

#[test]
fn filter_by_constant_scales() {
    let p = Plan::build(4).unwrap();
    let s = Signal::from_vec(random_vector(&mut seeded(2), p.size()));
    let h = Filter::new().with(MultiIndex::new(0, 0), 3.0);
    let out = tridct::apply_filter(&p, &h, &s).unwrap();
    assert!((out.0 - &s.0 * 3.0).amax() < 1e-14);
}

#[test]
fn single_precision_round_trip() {
    let p = PlanF32::build(8).unwrap();
    let c = Spectrum::from_vec(random_vector::<f32>(&mut seeded(4), p.size()));
    let back = p.analyze(&p.synthesize(&c).unwrap()).unwrap();
    assert!((back.0 - &c.0).amax() < 1e-4);
}
