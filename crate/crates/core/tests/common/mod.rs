//! Random-input helpers shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use quench_ht::{ComplexMatrix, RandomStream, RealMatrix, StateVector};

pub fn random_complex_matrix(dim: usize, rng: &mut RandomStream) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(rng.normal(), rng.normal()))
        .collect();
    ComplexMatrix::from_row_major(data)
}

/// `(A + Aᴴ)/2` for a complex Gaussian `A`.
pub fn random_hermitian(dim: usize, rng: &mut RandomStream) -> ComplexMatrix {
    let a = random_complex_matrix(dim, rng);
    (&a + &a.adjoint()).scale(0.5)
}

pub fn random_state(dim: usize, rng: &mut RandomStream) -> StateVector {
    StateVector::normalized(
        (0..dim)
            .map(|_| Complex64::new(rng.normal(), rng.normal()))
            .collect(),
    )
}

pub fn random_real_matrix(rows: usize, cols: usize, rng: &mut RandomStream) -> RealMatrix {
    let data = (0..rows * cols).map(|_| rng.normal()).collect();
    RealMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
