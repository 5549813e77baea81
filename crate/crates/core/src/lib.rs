//! Simulation and estimation for Hamiltonian tomography by the quantum quench
//! protocol under random measurement noise.
//!
//! A Hamiltonian `H = Σ αⱼ Mⱼ` in a known operator basis is probed with pairs
//! of states `|ψᵢ(0)⟩`, `|ψᵢ(T)⟩ = e^{−iHT}|ψᵢ(0)⟩`. Energy conservation makes
//! the matrix of expectation differences annihilate `α`, so the coefficient
//! direction is recovered as the minimal right singular vector of that matrix.
//! Measurement operators can be distorted by random local unitaries and the
//! observation time can be jittered; [`experiment`] sweeps both noise sources
//! and reports the fidelity `|cos∠(α, α̂)|` over a sample of Hamiltonians.

pub mod cli;
pub mod experiment;
pub mod linalg;
pub mod model;
pub mod noise;
pub mod protocol;
pub mod reference;

pub use experiment::{run_sweep, run_trial, ExperimentConfig, SweepKind, SweepPoint, SweepResult};
pub use linalg::{ComplexMatrix, RealMatrix, StateVector};
pub use model::{HamiltonianModel, ModelId};
pub use noise::{JitterMode, NoiseConfig, RandomStream};
pub use protocol::{build_p_matrix, estimate, fidelity, EstimationResult, QuenchTrial};
