//! Acceptance suite: one PASS/FAIL line per criterion, then a single verdict.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

mod common;

use std::f64::consts::PI;
use std::fs;
use std::process::Command;
use std::time::Instant;

use common::*;
use nalgebra::DMatrix;
use quench_ht::cli::{preset, Target};
use quench_ht::linalg::hermitian_eig;
use quench_ht::model::build_basis;
use quench_ht::noise::{distort, perturbation_matrix};
use quench_ht::reference::{ReferenceCell, RF3_JITTER_ANCHOR, TABLE1, TABLE2};
use quench_ht::{
    build_p_matrix, estimate, fidelity, run_sweep, ExperimentConfig, HamiltonianModel, ModelId,
    NoiseConfig, QuenchTrial, RandomStream, SweepKind, SweepResult,
};

struct Verdict {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Verdict {
    fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("{tag} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

fn noiseless_trial(
    model: ModelId,
    pairs: usize,
    rng: &RandomStream,
) -> (QuenchTrial, RandomStream) {
    let h = HamiltonianModel::sample(model, &mut rng.child("hamiltonian", 0));
    let noise = NoiseConfig::noiseless(1.0).unwrap();
    let trial = QuenchTrial::with_random_states(h, pairs, noise, &rng.child("states", 0)).unwrap();
    (trial, rng.child("noise", 0))
}

fn zero_noise_recovery() -> Verdict {
    let start = Instant::now();
    let root = RandomStream::new(101);
    let mut worst = f64::INFINITY;
    for model in ModelId::ALL {
        let pairs = (model.eta() - 1).max(2);
        for k in 0..100 {
            let (trial, noise_rng) = noiseless_trial(model, pairs, &root.child(model.as_str(), k));
            let p = build_p_matrix(&trial, &noise_rng).unwrap();
            let f = fidelity(trial.model().alpha(), &estimate(&p).unwrap().alpha_hat).unwrap();
            worst = worst.min(f);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Verdict {
        id: 1,
        name: "zero-noise exact recovery",
        pass: worst >= 1.0 - 1e-8 && secs < 10.0,
        detail: format!(
            "min fidelity 1-{:.1e} (need ≤ 1e-8), {secs:.2}s",
            1.0 - worst
        ),
    }
}

fn energy_conservation() -> Verdict {
    let root = RandomStream::new(102);
    let mut worst = 0.0f64;
    for model in ModelId::ALL {
        for k in 0..100 {
            let pairs = 12;
            let (trial, noise_rng) = noiseless_trial(model, pairs, &root.child(model.as_str(), k));
            let p = build_p_matrix(&trial, &noise_rng).unwrap();
            let residual = p.mul_vec(trial.model().alpha());
            worst = residual.iter().fold(worst, |m, x| m.max(x.abs()));
        }
    }
    Verdict {
        id: 2,
        name: "energy conservation",
        pass: worst <= 1e-10,
        detail: format!("max |P·α| = {worst:.2e} (need ≤ 1e-10)"),
    }
}

fn sorted_eigenvalues(m: &quench_ht::ComplexMatrix) -> Vec<f64> {
    hermitian_eig(m).unwrap().eigenvalues
}

fn noise_model_soundness() -> Verdict {
    let root = RandomStream::new(103);
    let mut worst_unitary = 0.0f64;
    let mut worst_spectrum = 0.0f64;
    let models = [(1, ModelId::Pauli), (2, ModelId::Tfim2), (3, ModelId::Rf3)];
    for (n, model) in models {
        let basis = build_basis(model);
        let spectra: Vec<Vec<f64>> = basis.iter().map(sorted_eigenvalues).collect();
        let mut rng = root.child("qubits", n as u64);
        for k in 0..10_000 {
            let q = perturbation_matrix(n, PI / 10.0, &mut rng).unwrap();
            worst_unitary = worst_unitary.max(q.unitarity_deviation());
            let j = k % basis.len();
            let distorted = sorted_eigenvalues(&distort(&basis[j], &q).unwrap());
            for (a, b) in distorted.iter().zip(&spectra[j]) {
                worst_spectrum = worst_spectrum.max((a - b).abs());
            }
        }
    }
    Verdict {
        id: 3,
        name: "noise-model soundness",
        pass: worst_unitary <= 1e-12 && worst_spectrum <= 1e-10,
        detail: format!(
            "max ‖QQᴴ-I‖ = {worst_unitary:.2e} (need ≤ 1e-12), max eigenvalue shift {worst_spectrum:.2e} (need ≤ 1e-10)"
        ),
    }
}

fn compare_table(
    result: &SweepResult,
    table: &[ReferenceCell],
    mean_tol: f64,
    sd_tol: Option<f64>,
) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut misses = Vec::new();
    for cell in table {
        let point = result
            .point(cell.pairs, cell.sigma())
            .expect("missing table cell");
        let dm = point.mean_fidelity - cell.mean;
        let ds = point.sd - cell.sd;
        let mean_ok = dm.abs() <= mean_tol;
        let sd_ok = sd_tol.is_none_or(|t| ds.abs() <= t);
        if !(mean_ok && sd_ok) {
            ok = false;
            misses.push(format!(
                "σ={} r={}: mean {:.3} vs {} ({:+.3}), sd {:.3} vs {}",
                cell.sigma_label(),
                cell.pairs,
                point.mean_fidelity,
                cell.mean,
                dm,
                point.sd,
                cell.sd
            ));
        }
    }
    (ok, misses)
}

fn table1_reproduction() -> Verdict {
    let start = Instant::now();
    let result = run_sweep(&preset(Target::Table1, 1)).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let (ok, misses) = compare_table(&result, &TABLE1, 0.06, Some(0.08));
    Verdict {
        id: 4,
        name: "two-qubit table (±0.06 mean, ±0.08 sd)",
        pass: ok && secs < 60.0,
        detail: format!(
            "{} of 9 cells outside tolerance, {secs:.2}s; {}",
            misses.len(),
            misses.join("; ")
        ),
    }
}

fn table2_reproduction() -> Verdict {
    let start = Instant::now();
    let result = run_sweep(&preset(Target::Table2, 1)).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let (mut ok, mut misses) = compare_table(&result, &TABLE2, 0.08, None);
    for &sigma in &result.config.sigma_grid {
        if sigma > PI / 18.0 + 1e-12 {
            continue;
        }
        let six = result.point(6, sigma).unwrap().mean_fidelity;
        let twelve = result.point(12, sigma).unwrap().mean_fidelity;
        if twelve < six {
            ok = false;
            misses.push(format!("σ={sigma:.4}: r=12 {twelve:.3} below r=6 {six:.3}"));
        }
    }
    Verdict {
        id: 5,
        name: "three-qubit table (±0.08 mean, r=12 ≥ r=6 for σ ≤ π/18)",
        pass: ok && secs < 120.0,
        detail: format!(
            "{} violations, {secs:.2}s; {}",
            misses.len(),
            misses.join("; ")
        ),
    }
}

fn one_qubit_regime() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for model in [ModelId::Sic, ModelId::Polarization, ModelId::Pauli] {
        let mut cfg = ExperimentConfig::new(model, SweepKind::Sigma);
        cfg.pair_counts = vec![3];
        cfg.seed = 1;
        let result = run_sweep(&cfg).unwrap();
        let below: Vec<_> = result
            .points
            .iter()
            .filter(|p| p.sigma < PI / 10.0 - 1e-12)
            .collect();
        let min_below = below
            .iter()
            .map(|p| p.mean_fidelity)
            .fold(f64::INFINITY, f64::min);
        let first = result.points.first().unwrap().mean_fidelity;
        let last = result.points.last().unwrap().mean_fidelity;
        let drop = first - last;
        ok &= min_below > 0.85 && drop >= 0.2;
        parts.push(format!(
            "{model}: min below π/10 {min_below:.3}, decline {drop:.3}"
        ));
    }
    Verdict {
        id: 6,
        name: "one-qubit regime (>0.85 below π/10, decline ≥ 0.2)",
        pass: ok,
        detail: parts.join("; "),
    }
}

fn jitter_anchor() -> Verdict {
    let (tau, pairs, target, _) = RF3_JITTER_ANCHOR;
    let mut cfg = ExperimentConfig::new(ModelId::Rf3, SweepKind::Tau);
    cfg.tau_grid = vec![tau];
    cfg.pair_counts = vec![pairs];
    cfg.seed = 1;
    let result = run_sweep(&cfg).unwrap();
    let mean = result.points[0].mean_fidelity;
    Verdict {
        id: 7,
        name: "three-qubit jitter anchor (±0.08)",
        pass: (mean - target).abs() <= 0.08,
        detail: format!("mean {mean:.3} vs {target} (per-entry jitter)"),
    }
}

fn two_qubit_jitter_ordering() -> Verdict {
    let mut cfg = ExperimentConfig::new(ModelId::Tfim2, SweepKind::Tau);
    cfg.pair_counts = vec![3, 12];
    cfg.seed = 1;
    let result = run_sweep(&cfg).unwrap();
    let n = cfg.sample_size as f64;
    let mut misses = Vec::new();
    for &tau in &cfg.tau_grid {
        let a = result.point(3, tau).unwrap();
        let b = result.point(12, tau).unwrap();
        let pooled_se = ((a.sd.powi(2) + b.sd.powi(2)) / n).sqrt();
        if a.mean_fidelity < b.mean_fidelity - pooled_se {
            misses.push(format!(
                "Δτ={tau}: r=3 {:.3} < r=12 {:.3} − SE {pooled_se:.3}",
                a.mean_fidelity, b.mean_fidelity
            ));
        }
    }
    Verdict {
        id: 8,
        name: "two-qubit jitter ordering (r=3 ≥ r=12 within pooled SE)",
        pass: misses.is_empty(),
        detail: format!(
            "{} of 10 points violate; {}",
            misses.len(),
            misses.join("; ")
        ),
    }
}

fn estimator_oracle() -> Verdict {
    let mut rng = RandomStream::new(109);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let (rows, cols) = [(12, 6), (6, 3), (3, 4), (12, 15)][k % 4];
        let p = random_real_matrix(rows, cols, &mut rng);
        let est = estimate(&p).unwrap();
        let svd = DMatrix::from_row_slice(rows, cols, p.as_slice()).svd(false, false);
        // A wide matrix has a null space the thin SVD does not report.
        let s_oracle = if rows < cols {
            0.0
        } else {
            svd.singular_values
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min)
        };
        let residual = norm(&p.mul_vec(&est.alpha_hat));
        worst = worst
            .max((est.s_min - s_oracle).abs())
            .max((residual - s_oracle).abs());
    }
    Verdict {
        id: 9,
        name: "estimator matches dense SVD",
        pass: worst <= 1e-9,
        detail: format!("max deviation {worst:.2e} (need ≤ 1e-9)"),
    }
}

fn reproduce_csv(threads: Option<&str>) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quench-ht"));
    cmd.args(["reproduce", "--target", "table1", "--seed", "1", "--out"])
        .arg(dir.path());
    match threads {
        Some(t) => cmd.env("QUENCH_HT_THREADS", t),
        None => cmd.env_remove("QUENCH_HT_THREADS"),
    };
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    fs::read(dir.path().join("table1.csv")).unwrap()
}

fn determinism() -> Verdict {
    let first = reproduce_csv(None);
    let second = reproduce_csv(None);
    let one = reproduce_csv(Some("1"));
    let eight = reproduce_csv(Some("8"));
    Verdict {
        id: 10,
        name: "determinism",
        pass: first == second && one == eight && first == one,
        detail: format!(
            "repeat identical: {}, 1 vs 8 threads identical: {}",
            first == second,
            one == eight
        ),
    }
}

#[test]
fn acceptance() {
    let verdicts = [
        zero_noise_recovery(),
        energy_conservation(),
        noise_model_soundness(),
        table1_reproduction(),
        table2_reproduction(),
        one_qubit_regime(),
        jitter_anchor(),
        two_qubit_jitter_ordering(),
        estimator_oracle(),
        determinism(),
    ];
    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed: Vec<u32> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id).collect();
    println!(
        "{} of {} criteria pass",
        verdicts.len() - failed.len(),
        verdicts.len()
    );
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
