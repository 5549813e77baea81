//! The five Hamiltonian families: their operator bases, coefficient sampling
//! and assembly of `H = Σ αⱼ Mⱼ`.
//!
//! | id             | qubits | η | basis                                            |
//! |----------------|--------|---|--------------------------------------------------|
//! | `sic`          | 1      | 3 | projectors onto the SIC vectors ξ₁, ξ₂, ξ₃       |
//! | `polarization` | 1      | 3 | projectors onto \|H⟩, \|D⟩, \|R⟩                 |
//! | `pauli`        | 1      | 3 | σ₁, σ₂, σ₃ (σ₂ = [[0, −i], [i, 0]])              |
//! | `tfim2`        | 2      | 3 | σ₁⊗I, I⊗σ₁, σ₃⊗σ₃                                |
//! | `rf3`          | 3      | 6 | σ₁II, Iσ₁I, IIσ₁, σ₃σ₃I, Iσ₃σ₃, σ₃Iσ₃            |
//!
//! For `rf3` the coefficient vector is ordered (α₁, α₂, α₃, β₁₂, β₂₃, β₁₃).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{kron_all, pauli, symmetric_eig, ComplexMatrix};
use crate::noise::RandomStream;

const BASIS_HERMITIAN_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of the Hilbert–Schmidt Gram matrix.
pub const GRAM_MIN_EIGENVALUE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("unknown model '{0}' (valid ids: sic, polarization, pauli, tfim2, rf3)")]
    UnknownModel(String),
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("coefficient vector must have unit norm, got {0}")]
    NotNormalized(f64),
    #[error("basis operator {0} is not Hermitian")]
    NonHermitianBasis(usize),
    #[error("basis is not linearly independent (Gram min eigenvalue {0:e})")]
    DependentBasis(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelId {
    Sic,
    Polarization,
    Pauli,
    Tfim2,
    Rf3,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [
        ModelId::Sic,
        ModelId::Polarization,
        ModelId::Pauli,
        ModelId::Tfim2,
        ModelId::Rf3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Sic => "sic",
            ModelId::Polarization => "polarization",
            ModelId::Pauli => "pauli",
            ModelId::Tfim2 => "tfim2",
            ModelId::Rf3 => "rf3",
        }
    }

    pub fn n_qubits(self) -> usize {
        match self {
            ModelId::Sic | ModelId::Polarization | ModelId::Pauli => 1,
            ModelId::Tfim2 => 2,
            ModelId::Rf3 => 3,
        }
    }

    pub fn dim(self) -> usize {
        1 << self.n_qubits()
    }

    /// Number of basis operators η.
    pub fn eta(self) -> usize {
        match self {
            ModelId::Rf3 => 6,
            _ => 3,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ModelError::UnknownModel(s.to_string()))
    }
}

/// Basis operators for the given family, in canonical order.
pub fn build_basis(id: ModelId) -> Vec<ComplexMatrix> {
    let (x, z, i) = (pauli::x(), pauli::z(), pauli::identity());
    match id {
        ModelId::Sic => {
            let a = 1.0 / 3f64.sqrt();
            let b = (2.0f64 / 3.0).sqrt();
            (0..3)
                .map(|k| {
                    let v = [
                        Complex64::new(a, 0.0),
                        Complex64::from_polar(b, 2.0 * PI * k as f64 / 3.0),
                    ];
                    ComplexMatrix::projector(&v)
                })
                .collect()
        }
        ModelId::Polarization => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let states = [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
                [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
            ];
            states.iter().map(|v| ComplexMatrix::projector(v)).collect()
        }
        ModelId::Pauli => vec![x, pauli::y(), z],
        ModelId::Tfim2 => vec![kron_all([&x, &i]), kron_all([&i, &x]), kron_all([&z, &z])],
        ModelId::Rf3 => vec![
            kron_all([&x, &i, &i]),
            kron_all([&i, &x, &i]),
            kron_all([&i, &i, &x]),
            kron_all([&z, &z, &i]),
            kron_all([&i, &z, &z]),
            kron_all([&z, &i, &z]),
        ],
    }
}

/// Hilbert–Schmidt Gram matrix `G_jk = Re tr(M_j M_k)`.
///
/// All basis operators are Hermitian, so the trace is real.
pub fn gram_matrix(basis: &[ComplexMatrix]) -> Vec<Vec<f64>> {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| (a * b).trace().re).collect())
        .collect()
}

/// Unit vector of `eta` independent standard normals, i.e. uniform on the
/// sphere.
pub fn sample_coefficients(eta: usize, rng: &mut RandomStream) -> Vec<f64> {
    assert!(eta >= 2, "need at least two coefficients");
    loop {
        let raw: Vec<f64> = (0..eta).map(|_| rng.normal()).collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return raw.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A Hamiltonian family together with one coefficient vector.
#[derive(Debug, Clone)]
pub struct HamiltonianModel {
    id: ModelId,
    basis: Vec<ComplexMatrix>,
    alpha: Vec<f64>,
}

impl HamiltonianModel {
    pub fn new(id: ModelId, alpha: Vec<f64>) -> Result<Self, ModelError> {
        Self::with_basis(id, build_basis(id), alpha)
    }

    fn with_basis(
        id: ModelId,
        basis: Vec<ComplexMatrix>,
        alpha: Vec<f64>,
    ) -> Result<Self, ModelError> {
        if alpha.len() != basis.len() {
            return Err(ModelError::CoefficientCount {
                expected: basis.len(),
                found: alpha.len(),
            });
        }
        let norm = alpha.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(ModelError::NotNormalized(norm));
        }
        if let Some(j) = basis
            .iter()
            .position(|m| !m.is_hermitian(BASIS_HERMITIAN_TOL))
        {
            return Err(ModelError::NonHermitianBasis(j));
        }
        let (gram_eigs, _) =
            symmetric_eig(&gram_matrix(&basis)).expect("Gram matrix of a fixed basis is symmetric");
        if gram_eigs[0] <= GRAM_MIN_EIGENVALUE {
            return Err(ModelError::DependentBasis(gram_eigs[0]));
        }
        Ok(Self { id, basis, alpha })
    }

    /// Builds the model after rescaling `alpha` to unit norm.
    pub fn normalized(id: ModelId, alpha: &[f64]) -> Result<Self, ModelError> {
        let norm = alpha.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(ModelError::NotNormalized(norm));
        }
        Self::new(id, alpha.iter().map(|x| x / norm).collect())
    }

    /// Draws a Hamiltonian with coefficients uniform on the unit sphere.
    pub fn sample(id: ModelId, rng: &mut RandomStream) -> Self {
        let alpha = sample_coefficients(id.eta(), rng);
        Self::new(id, alpha).expect("sampled coefficients are normalized")
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn eta(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.id.dim()
    }
}

/// `Σⱼ αⱼ Mⱼ`.
pub fn assemble_hamiltonian(model: &HamiltonianModel) -> ComplexMatrix {
    assemble(model.basis(), model.alpha())
}

/// Linear combination of operators with real weights.
pub fn assemble(basis: &[ComplexMatrix], weights: &[f64]) -> ComplexMatrix {
    assert_eq!(basis.len(), weights.len(), "one weight per operator");
    let dim = basis.first().expect("non-empty basis").dim();
    basis
        .iter()
        .zip(weights)
        .fold(ComplexMatrix::zeros(dim), |acc, (m, &w)| &acc + &m.scale(w))
}
