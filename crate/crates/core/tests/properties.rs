//! Property-based invariants of the linear algebra and estimator.

mod common;

use common::*;
use proptest::prelude::*;
use quench_ht::linalg::{evolve, expectation, kron, min_right_singular_vector};
use quench_ht::model::{assemble, build_basis};
use quench_ht::{estimate, fidelity, ModelId, RandomStream};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kron_is_associative(seed in any::<u64>()) {
        let mut rng = RandomStream::new(seed);
        let a = random_complex_matrix(2, &mut rng);
        let b = random_complex_matrix(2, &mut rng);
        let c = random_complex_matrix(2, &mut rng);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn evolution_preserves_norm_and_composes(seed in any::<u64>(), t1 in 0.0..3.0f64, t2 in 0.0..3.0f64) {
        let mut rng = RandomStream::new(seed);
        let h = random_hermitian(4, &mut rng);
        let psi = random_state(4, &mut rng);
        let once = evolve(&h, t1 + t2, &psi).unwrap();
        let twice = evolve(&h, t2, &evolve(&h, t1, &psi).unwrap()).unwrap();
        prop_assert!((once.norm() - 1.0).abs() <= 1e-12);
        prop_assert!(max_abs_diff(once.amplitudes(), twice.amplitudes()) <= 1e-9);
    }

    #[test]
    fn expectation_is_linear_in_the_observable(seed in any::<u64>(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let mut rng = RandomStream::new(seed);
        let m1 = random_hermitian(8, &mut rng);
        let m2 = random_hermitian(8, &mut rng);
        let psi = random_state(8, &mut rng);
        let combined = &m1.scale(a) + &m2.scale(b);
        let lhs = expectation(&combined, &psi).unwrap();
        let rhs = a * expectation(&m1, &psi).unwrap() + b * expectation(&m2, &psi).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn min_singular_vector_beats_random_probes(seed in any::<u64>(), rows in 2usize..12, cols in 2usize..7) {
        let mut rng = RandomStream::new(seed);
        let p = random_real_matrix(rows, cols, &mut rng);
        let min = min_right_singular_vector(&p).unwrap();
        for _ in 0..1000 {
            let w: Vec<f64> = (0..cols).map(|_| rng.normal()).collect();
            let n = norm(&w);
            let w: Vec<f64> = w.iter().map(|x| x / n).collect();
            prop_assert!(norm(&p.mul_vec(&w)) >= min.s_min - 1e-9);
        }
    }

    #[test]
    fn assemble_is_linear(seed in any::<u64>(), k in 0usize..5, s in -2.0..2.0f64) {
        let id = ModelId::ALL[k];
        let basis = build_basis(id);
        let mut rng = RandomStream::new(seed);
        let x: Vec<f64> = (0..basis.len()).map(|_| rng.normal()).collect();
        let y: Vec<f64> = (0..basis.len()).map(|_| rng.normal()).collect();
        let combo: Vec<f64> = x.iter().zip(&y).map(|(a, b)| s * a + b).collect();
        let lhs = assemble(&basis, &combo);
        let rhs = &assemble(&basis, &x).scale(s) + &assemble(&basis, &y);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn estimate_is_scale_invariant(seed in any::<u64>(), c in 1e-3..1e3f64) {
        let mut rng = RandomStream::new(seed);
        let p = random_real_matrix(8, 4, &mut rng);
        let a = estimate(&p).unwrap();
        let b = estimate(&p.scale(c)).unwrap();
        prop_assert!(fidelity(&a.alpha_hat, &b.alpha_hat).unwrap() >= 1.0 - 1e-9);
        prop_assert!((b.s_min - c * a.s_min).abs() <= 1e-9 * c.max(1.0));
    }

    #[test]
    fn fidelity_is_symmetric_and_sign_blind(seed in any::<u64>(), len in 2usize..16) {
        let mut rng = RandomStream::new(seed);
        let a: Vec<f64> = (0..len).map(|_| rng.normal()).collect();
        let b: Vec<f64> = (0..len).map(|_| rng.normal()).collect();
        let neg: Vec<f64> = b.iter().map(|x| -x).collect();
        let f = fidelity(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert_eq!(f, fidelity(&b, &a).unwrap());
        prop_assert!((f - fidelity(&a, &neg).unwrap()).abs() <= 1e-15);
    }
}
