//! The quench protocol: prepare pairs of states related by evolution under
//! the unknown Hamiltonian, measure the basis observables on both members of
//! each pair, and recover the coefficient direction as the minimal right
//! singular vector of the resulting difference matrix.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    expectation, min_right_singular_vector, LinalgError, Propagator, RealMatrix, StateVector,
};
use crate::model::{assemble_hamiltonian, HamiltonianModel};
use crate::noise::{
    distort, jitter_time, perturbation_matrix, JitterMode, NoiseConfig, NoiseError, RandomStream,
};

/// Norms below this are treated as zero by [`fidelity`].
pub const ZERO_NORM: f64 = 1e-300;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("need at least {required} pairs for {eta} coefficients, got {pairs}")]
    TooFewPairs {
        pairs: usize,
        eta: usize,
        required: usize,
    },
    #[error("initial state {index} has dimension {found}, expected {expected}")]
    StateDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("fidelity of a zero vector is undefined")]
    ZeroVector,
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
pub fn sample_initial_state(dim: usize, rng: &mut RandomStream) -> StateVector {
    loop {
        let raw: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.normal(), rng.normal()))
            .collect();
        if raw.iter().any(|z| z.norm_sqr() > 0.0) {
            return StateVector::normalized(raw);
        }
    }
}

/// Everything needed to generate one (possibly noisy) P matrix.
#[derive(Debug, Clone)]
pub struct QuenchTrial {
    model: HamiltonianModel,
    states: Vec<StateVector>,
    noise: NoiseConfig,
}

impl QuenchTrial {
    pub fn new(
        model: HamiltonianModel,
        states: Vec<StateVector>,
        noise: NoiseConfig,
    ) -> Result<Self, ProtocolError> {
        noise.validate()?;
        let eta = model.eta();
        let required = (eta - 1).max(2);
        if states.len() < required {
            return Err(ProtocolError::TooFewPairs {
                pairs: states.len(),
                eta,
                required,
            });
        }
        if let Some((index, s)) = states
            .iter()
            .enumerate()
            .find(|(_, s)| s.dim() != model.dim())
        {
            return Err(ProtocolError::StateDimension {
                index,
                expected: model.dim(),
                found: s.dim(),
            });
        }
        Ok(Self {
            model,
            states,
            noise,
        })
    }

    /// Draws `pairs` Haar-random initial states, state `i` from the child
    /// stream `("state", i)`.
    pub fn with_random_states(
        model: HamiltonianModel,
        pairs: usize,
        noise: NoiseConfig,
        rng: &RandomStream,
    ) -> Result<Self, ProtocolError> {
        let dim = model.dim();
        let states = (0..pairs)
            .map(|i| sample_initial_state(dim, &mut rng.child("state", i as u64)))
            .collect();
        Self::new(model, states, noise)
    }

    pub fn model(&self) -> &HamiltonianModel {
        &self.model
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn noise(&self) -> &NoiseConfig {
        &self.noise
    }

    pub fn pairs(&self) -> usize {
        self.states.len()
    }
}

/// Builds the `r × η` matrix of expectation differences
/// `p_ij = ⟨ψᵢ(0)|M̃ⱼ|ψᵢ(0)⟩ − ⟨ψᵢ(Tᵢⱼ)|M̃ⱼ|ψᵢ(Tᵢⱼ)⟩`.
///
/// One perturbation `Qⱼ` is drawn per operator (child stream
/// `("perturbation", j)`) and shared by every pair. Observation times come
/// from the `("jitter", i)` child stream of each pair.
pub fn build_p_matrix(
    trial: &QuenchTrial,
    rng: &RandomStream,
) -> Result<RealMatrix, ProtocolError> {
    let model = trial.model();
    let noise = trial.noise();
    let n_qubits = model.id().n_qubits();
    let hamiltonian = assemble_hamiltonian(model);
    let propagator = Propagator::new(&hamiltonian)?;

    let operators = model
        .basis()
        .iter()
        .enumerate()
        .map(|(j, m)| {
            if noise.sigma == 0.0 {
                return Ok(m.clone());
            }
            let mut stream = rng.child("perturbation", j as u64);
            let q = perturbation_matrix(n_qubits, noise.sigma, &mut stream)?;
            distort(m, &q)
        })
        .collect::<Result<Vec<_>, NoiseError>>()?;

    let eta = operators.len();
    let mut p = RealMatrix::zeros(trial.pairs(), eta);
    for (i, psi0) in trial.states().iter().enumerate() {
        let mut jitter = rng.child("jitter", i as u64);
        let initial: Vec<f64> = operators
            .iter()
            .map(|m| expectation(m, psi0))
            .collect::<Result<_, _>>()?;
        match noise.jitter_mode {
            JitterMode::PerPair => {
                let psi_t = propagator.evolve(jitter_time(noise, &mut jitter), psi0);
                for (j, m) in operators.iter().enumerate() {
                    p[(i, j)] = initial[j] - expectation(m, &psi_t)?;
                }
            }
            JitterMode::PerEntry => {
                let fixed =
                    (noise.delta_tau == 0.0).then(|| propagator.evolve(noise.quench_time, psi0));
                for (j, m) in operators.iter().enumerate() {
                    let psi_t = match &fixed {
                        Some(psi) => psi.clone(),
                        None => propagator.evolve(jitter_time(noise, &mut jitter), psi0),
                    };
                    p[(i, j)] = initial[j] - expectation(m, &psi_t)?;
                }
            }
        }
    }
    Ok(p)
}

/// Outcome of the least-squares estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult {
    /// Unit-norm estimate; the overall sign is arbitrary.
    pub alpha_hat: Vec<f64>,
    /// Minimal singular value of P; its square is the Lagrange multiplier.
    pub s_min: f64,
    pub degenerate: bool,
    /// Filled in by [`EstimationResult::score`].
    pub fidelity: Option<f64>,
}

impl EstimationResult {
    /// Least-squares error `α̂ᵀ PᵀP α̂`.
    pub fn lagrange_multiplier(&self) -> f64 {
        self.s_min * self.s_min
    }

    pub fn score(mut self, alpha: &[f64]) -> Result<Self, ProtocolError> {
        self.fidelity = Some(fidelity(alpha, &self.alpha_hat)?);
        Ok(self)
    }
}

/// Minimizes `αᵀPᵀPα` subject to `αᵀα = 1`.
pub fn estimate(p: &RealMatrix) -> Result<EstimationResult, ProtocolError> {
    let min = min_right_singular_vector(p)?;
    Ok(EstimationResult {
        alpha_hat: min.vector,
        s_min: min.s_min,
        degenerate: min.degenerate,
        fidelity: None,
    })
}

/// `|cos∠(α, α̂)|`.
pub fn fidelity(alpha: &[f64], alpha_hat: &[f64]) -> Result<f64, ProtocolError> {
    if alpha.len() != alpha_hat.len() {
        return Err(ProtocolError::LengthMismatch(alpha.len(), alpha_hat.len()));
    }
    let norm_a = alpha.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b = alpha_hat.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_a < ZERO_NORM || norm_b < ZERO_NORM {
        return Err(ProtocolError::ZeroVector);
    }
    let dot: f64 = alpha.iter().zip(alpha_hat).map(|(a, b)| a * b).sum();
    Ok((dot.abs() / (norm_a * norm_b)).min(1.0))
}

/// Runs the full protocol on a trial: P matrix, estimate, fidelity.
pub fn reconstruct(
    trial: &QuenchTrial,
    rng: &RandomStream,
) -> Result<EstimationResult, ProtocolError> {
    let p = build_p_matrix(trial, rng)?;
    estimate(&p)?.score(trial.model().alpha())
}
