//! Monte Carlo sweeps over noise strength.
//!
//! Every trial draws from its own keyed child stream, so results do not
//! depend on scheduling, thread count, or which other grid points are in the
//! config. Aggregation always runs in trial-index order.

use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{HamiltonianModel, ModelId};
use crate::noise::{JitterMode, NoiseConfig, NoiseError, RandomStream};
use crate::protocol::{build_p_matrix, estimate, fidelity, ProtocolError, QuenchTrial};

pub const DEFAULT_PAIR_COUNTS: [usize; 3] = [3, 6, 12];
pub const RF3_PAIR_COUNTS: [usize; 2] = [6, 12];
pub const DEFAULT_SAMPLE_SIZE: usize = 100;
pub const RF3_SAMPLE_SIZE: usize = 25;
pub const DEFAULT_FIXED_SIGMA: f64 = PI / 90.0;
pub const DEFAULT_QUENCH_TIME: f64 = 1.0;

/// `k·π/90` for `k = 1..=15`.
pub fn default_sigma_grid() -> Vec<f64> {
    (1..=15).map(|k| k as f64 * PI / 90.0).collect()
}

/// `0.01, 0.02, …, 0.10`.
pub fn default_tau_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 / 100.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Sigma,
    Tau,
}

impl SweepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepKind::Sigma => "sigma",
            SweepKind::Tau => "tau",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{0} grid is empty")]
    EmptyGrid(&'static str),
    #[error("{0} grid must be strictly increasing")]
    NotIncreasing(&'static str),
    #[error("{0} grid values must be finite and >= 0")]
    NegativeGrid(&'static str),
    #[error("sample size must be >= 1")]
    SampleSize,
    #[error("at least one pair count is required")]
    NoPairCounts,
    #[error("model {model} needs at least {required} pairs, got {pairs}")]
    TooFewPairs {
        model: ModelId,
        pairs: usize,
        required: usize,
    },
    #[error("pair count {0} is listed twice")]
    DuplicatePairs(usize),
    #[error(transparent)]
    Noise(#[from] NoiseError),
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("trial {trial} failed at grid value {grid_value} with {pairs} pairs: {source}")]
    Trial {
        grid_value: f64,
        pairs: usize,
        trial: usize,
        #[source]
        source: ProtocolError,
    },
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: ModelId,
    pub pair_counts: Vec<usize>,
    pub sample_size: usize,
    pub sweep: SweepKind,
    pub sigma_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    /// σ used at every point of a τ sweep.
    pub fixed_sigma: f64,
    pub quench_time: f64,
    pub jitter_mode: JitterMode,
    pub seed: u64,
    /// Keep per-trial fidelities in the result.
    pub retain_trials: bool,
}

impl ExperimentConfig {
    /// Config with every default materialized for `model`.
    pub fn new(model: ModelId, sweep: SweepKind) -> Self {
        let (pair_counts, sample_size) = match model {
            ModelId::Rf3 => (RF3_PAIR_COUNTS.to_vec(), RF3_SAMPLE_SIZE),
            _ => (DEFAULT_PAIR_COUNTS.to_vec(), DEFAULT_SAMPLE_SIZE),
        };
        Self {
            model,
            pair_counts,
            sample_size,
            sweep,
            sigma_grid: default_sigma_grid(),
            tau_grid: default_tau_grid(),
            fixed_sigma: DEFAULT_FIXED_SIGMA,
            quench_time: DEFAULT_QUENCH_TIME,
            jitter_mode: JitterMode::PerEntry,
            seed: 0,
            retain_trials: false,
        }
    }

    pub fn grid(&self) -> &[f64] {
        match self.sweep {
            SweepKind::Sigma => &self.sigma_grid,
            SweepKind::Tau => &self.tau_grid,
        }
    }

    /// Noise at one grid point.
    pub fn noise_at(&self, grid_value: f64) -> Result<NoiseConfig, NoiseError> {
        let (sigma, delta_tau) = match self.sweep {
            SweepKind::Sigma => (grid_value, 0.0),
            SweepKind::Tau => (self.fixed_sigma, grid_value),
        };
        Ok(
            NoiseConfig::new(sigma, self.quench_time, delta_tau)?
                .with_jitter_mode(self.jitter_mode),
        )
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sample_size == 0 {
            return Err(ConfigError::SampleSize);
        }
        if self.pair_counts.is_empty() {
            return Err(ConfigError::NoPairCounts);
        }
        let required = (self.model.eta() - 1).max(2);
        for (k, &r) in self.pair_counts.iter().enumerate() {
            if r < required {
                return Err(ConfigError::TooFewPairs {
                    model: self.model,
                    pairs: r,
                    required,
                });
            }
            if self.pair_counts[..k].contains(&r) {
                return Err(ConfigError::DuplicatePairs(r));
            }
        }
        let name = self.sweep.as_str();
        let grid = self.grid();
        if grid.is_empty() {
            return Err(ConfigError::EmptyGrid(name));
        }
        if grid.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(ConfigError::NegativeGrid(name));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ConfigError::NotIncreasing(name));
        }
        // Checks σ, T and the fixed parameter in one go.
        self.noise_at(grid[0])?;
        Ok(())
    }
}

/// One simulated reconstruction. A deterministic function of its arguments.
///
/// The Hamiltonian comes from the child stream keyed by `trial_idx` alone, so
/// trial `k` reconstructs the same Hamiltonian at every grid point and pair
/// count. States and noise are keyed by `(grid value, r, trial_idx)`.
pub fn run_trial(
    cfg: &ExperimentConfig,
    grid_value: f64,
    pairs: usize,
    trial_idx: usize,
) -> Result<f64, ProtocolError> {
    let root = RandomStream::new(cfg.seed);
    let model =
        HamiltonianModel::sample(cfg.model, &mut root.child("hamiltonian", trial_idx as u64));
    let stream = root
        .child("grid", grid_value.to_bits())
        .child("pairs", pairs as u64)
        .child("trial", trial_idx as u64);
    let noise = cfg.noise_at(grid_value)?;
    let trial = QuenchTrial::with_random_states(model, pairs, noise, &stream.child("states", 0))?;
    let p = build_p_matrix(&trial, &stream.child("noise", 0))?;
    let result = estimate(&p)?;
    fidelity(trial.model().alpha(), &result.alpha_hat)
}

/// Aggregate over the sample at one (grid value, pair count).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub pairs: usize,
    pub sigma: f64,
    pub delta_tau: f64,
    pub mean_fidelity: f64,
    /// Population standard deviation (divisor n).
    pub sd: f64,
    pub sample_size: usize,
    pub trials: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    /// Sorted by (pair count, grid value).
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn point(&self, pairs: usize, grid_value: f64) -> Option<&SweepPoint> {
        let sweep = self.config.sweep;
        self.points.iter().find(|p| {
            p.pairs == pairs
                && match sweep {
                    SweepKind::Sigma => p.sigma == grid_value,
                    SweepKind::Tau => p.delta_tau == grid_value,
                }
        })
    }

    /// Grid value of a point along the swept axis.
    pub fn grid_value(&self, point: &SweepPoint) -> f64 {
        match self.config.sweep {
            SweepKind::Sigma => point.sigma,
            SweepKind::Tau => point.delta_tau,
        }
    }
}

/// Welford running mean and variance, fed in trial order.
#[derive(Debug, Default, Clone, Copy)]
pub struct RunningStats {
    n: usize,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn population_sd(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.m2 / self.n as f64).max(0.0).sqrt()
        }
    }
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult, SweepError> {
    cfg.validate()?;
    let mut pair_counts = cfg.pair_counts.clone();
    pair_counts.sort_unstable();

    let mut points = Vec::with_capacity(pair_counts.len() * cfg.grid().len());
    for &pairs in &pair_counts {
        for &grid_value in cfg.grid() {
            let fidelities = (0..cfg.sample_size)
                .into_par_iter()
                .map(|trial| {
                    run_trial(cfg, grid_value, pairs, trial).map_err(|source| SweepError::Trial {
                        grid_value,
                        pairs,
                        trial,
                        source,
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let mut stats = RunningStats::default();
            fidelities.iter().for_each(|&f| stats.push(f));
            let noise = cfg.noise_at(grid_value).map_err(ConfigError::from)?;
            points.push(SweepPoint {
                pairs,
                sigma: noise.sigma,
                delta_tau: noise.delta_tau,
                mean_fidelity: stats.mean(),
                sd: stats.population_sd(),
                sample_size: stats.count(),
                trials: cfg.retain_trials.then_some(fidelities),
            });
        }
    }
    Ok(SweepResult {
        config: cfg.clone(),
        points,
    })
}

/// Runs the sweep on a dedicated pool of `threads` workers, or on the global
/// pool when `None`.
pub fn run_sweep_with_threads(
    cfg: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<SweepResult, SweepError> {
    match threads {
        None => run_sweep(cfg),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
            pool.install(|| run_sweep(cfg))
        }
    }
}
