//! Random noise channels: unitary distortion of measurement operators and
//! Gaussian jitter of the observation time.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::linalg::{kron_all, ComplexMatrix, LinalgError};

/// Fraction of the quench time used when a jitter draw lands at or below zero.
pub const JITTER_FLOOR_FRACTION: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("sigma must be finite and >= 0, got {0}")]
    InvalidSigma(f64),
    #[error("quench time must be finite and > 0, got {0}")]
    InvalidQuenchTime(f64),
    #[error("delta_tau must be finite and >= 0, got {0}")]
    InvalidDeltaTau(f64),
    #[error("n_qubits must be 1, 2 or 3, got {0}")]
    InvalidQubitCount(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How observation times are jittered within one P matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JitterMode {
    /// An independent time for every matrix entry.
    #[default]
    PerEntry,
    /// One time per pair of states, shared across the row.
    PerPair,
}

impl JitterMode {
    pub fn as_str(self) -> &'static str {
        match self {
            JitterMode::PerEntry => "entry",
            JitterMode::PerPair => "pair",
        }
    }
}

/// Strength of both noise sources for one protocol run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    /// Standard deviation of the Euler angles, radians.
    pub sigma: f64,
    pub quench_time: f64,
    /// Standard deviation of the observation time.
    pub delta_tau: f64,
    pub jitter_mode: JitterMode,
}

impl NoiseConfig {
    pub fn new(sigma: f64, quench_time: f64, delta_tau: f64) -> Result<Self, NoiseError> {
        let cfg = Self {
            sigma,
            quench_time,
            delta_tau,
            jitter_mode: JitterMode::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn noiseless(quench_time: f64) -> Result<Self, NoiseError> {
        Self::new(0.0, quench_time, 0.0)
    }

    pub fn with_jitter_mode(mut self, mode: JitterMode) -> Self {
        self.jitter_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(NoiseError::InvalidSigma(self.sigma));
        }
        if !(self.quench_time.is_finite() && self.quench_time > 0.0) {
            return Err(NoiseError::InvalidQuenchTime(self.quench_time));
        }
        if !(self.delta_tau.is_finite() && self.delta_tau >= 0.0) {
            return Err(NoiseError::InvalidDeltaTau(self.delta_tau));
        }
        Ok(())
    }
}

/// Deterministic, seedable random source with keyed child streams.
///
/// A stream is identified by a 64-bit key. Children are derived by hashing
/// the parent key with a `(label, index)` pair, so the child a caller gets
/// does not depend on how many draws were taken from the parent or in what
/// order siblings were created. Draws come from ChaCha20, which is portable
/// across platforms.
#[derive(Debug, Clone)]
pub struct RandomStream {
    key: u64,
    rng: ChaCha20Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::from_key(splitmix64(seed))
    }

    fn from_key(key: u64) -> Self {
        Self {
            key,
            rng: ChaCha20Rng::seed_from_u64(key),
        }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn child(&self, label: &str, index: u64) -> Self {
        let mixed = splitmix64(
            self.key
                ^ splitmix64(fnv1a(label))
                ^ splitmix64(index.rotate_left(17) ^ 0xA5A5_5A5A_C3C3_3C3C),
        );
        Self::from_key(mixed)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn normal_with(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.normal()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// ZYZ Euler-angle unitary `Rz(ω₁) Ry(ω₂) Rz(ω₃)`.
pub fn euler_unitary(w1: f64, w2: f64, w3: f64) -> ComplexMatrix {
    let (s, c) = (w2 / 2.0).sin_cos();
    let sum = (w1 + w3) / 2.0;
    let diff = (w3 - w1) / 2.0;
    ComplexMatrix::from_rows([
        [
            Complex64::from_polar(c, -sum),
            -Complex64::from_polar(s, diff),
        ],
        [
            Complex64::from_polar(s, -diff),
            Complex64::from_polar(c, sum),
        ],
    ])
}

/// Single-qubit unitary with Euler angles drawn from `N(0, sigma)`.
pub fn random_unitary_2(sigma: f64, rng: &mut RandomStream) -> ComplexMatrix {
    let w1 = sigma * rng.normal();
    let w2 = sigma * rng.normal();
    let w3 = sigma * rng.normal();
    euler_unitary(w1, w2, w3)
}

/// Local random unitaries, one per qubit, in the order they enter the tensor
/// product.
pub fn local_unitaries(
    n_qubits: usize,
    sigma: f64,
    rng: &mut RandomStream,
) -> Result<Vec<ComplexMatrix>, NoiseError> {
    if !(1..=3).contains(&n_qubits) {
        return Err(NoiseError::InvalidQubitCount(n_qubits));
    }
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(NoiseError::InvalidSigma(sigma));
    }
    Ok((0..n_qubits)
        .map(|_| random_unitary_2(sigma, rng))
        .collect())
}

/// Tensor product of `n_qubits` independent [`random_unitary_2`] draws.
pub fn perturbation_matrix(
    n_qubits: usize,
    sigma: f64,
    rng: &mut RandomStream,
) -> Result<ComplexMatrix, NoiseError> {
    let factors = local_unitaries(n_qubits, sigma, rng)?;
    Ok(kron_all(&factors))
}

/// Distorted operator `q · m · q^H`.
pub fn distort(m: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix, NoiseError> {
    if m.dim() != q.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.dim(),
            found: q.dim(),
        }
        .into());
    }
    let mut out = m.conjugate_by(q);
    // Restore exact Hermiticity lost to round-off.
    let n = out.dim();
    for i in 0..n {
        out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (out[(i, j)] + out[(j, i)].conj()) * 0.5;
            out[(i, j)] = avg;
            out[(j, i)] = avg.conj();
        }
    }
    Ok(out)
}

/// Observation time drawn from `N(T, Δτ)`, clamped to `1e-6·T` when the draw
/// is not positive.
pub fn jitter_time(cfg: &NoiseConfig, rng: &mut RandomStream) -> f64 {
    if cfg.delta_tau == 0.0 {
        return cfg.quench_time;
    }
    let t = rng.normal_with(cfg.quench_time, cfg.delta_tau);
    if t <= 0.0 {
        JITTER_FLOOR_FRACTION * cfg.quench_time
    } else {
        t
    }
}
