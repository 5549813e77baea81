//! Published reference values used by `reproduce` comparison tables.

/// One tabulated cell: σ = `sigma_num·π/sigma_den`, pair count, mean, SD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCell {
    pub sigma_num: u32,
    pub sigma_den: u32,
    pub pairs: usize,
    pub mean: f64,
    pub sd: f64,
}

impl ReferenceCell {
    pub fn sigma(&self) -> f64 {
        self.sigma_num as f64 * std::f64::consts::PI / self.sigma_den as f64
    }

    pub fn sigma_label(&self) -> String {
        match self.sigma_num {
            1 => format!("pi/{}", self.sigma_den),
            n => format!("{n}*pi/{}", self.sigma_den),
        }
    }
}

const fn cell(sigma_num: u32, sigma_den: u32, pairs: usize, mean: f64, sd: f64) -> ReferenceCell {
    ReferenceCell {
        sigma_num,
        sigma_den,
        pairs,
        mean,
        sd,
    }
}

/// Two-qubit transverse-field Ising model, sample of 100.
pub const TABLE1: [ReferenceCell; 9] = [
    cell(1, 90, 3, 0.94, 0.13),
    cell(1, 90, 6, 0.94, 0.16),
    cell(1, 90, 12, 0.88, 0.21),
    cell(1, 45, 3, 0.92, 0.16),
    cell(1, 45, 6, 0.90, 0.18),
    cell(1, 45, 12, 0.87, 0.20),
    cell(1, 30, 3, 0.85, 0.21),
    cell(1, 30, 6, 0.86, 0.21),
    cell(1, 30, 12, 0.85, 0.21),
];

/// Three-qubit rf-field Hamiltonian, sample of 25.
pub const TABLE2: [ReferenceCell; 18] = [
    cell(1, 90, 6, 0.83, 0.08),
    cell(1, 90, 12, 0.956, 0.024),
    cell(1, 45, 6, 0.82, 0.09),
    cell(1, 45, 12, 0.91, 0.06),
    cell(1, 30, 6, 0.79, 0.15),
    cell(1, 30, 12, 0.88, 0.09),
    cell(2, 45, 6, 0.68, 0.18),
    cell(2, 45, 12, 0.84, 0.13),
    cell(1, 18, 6, 0.67, 0.18),
    cell(1, 18, 12, 0.81, 0.17),
    cell(1, 15, 6, 0.59, 0.17),
    cell(1, 15, 12, 0.79, 0.17),
    cell(7, 90, 6, 0.56, 0.18),
    cell(7, 90, 12, 0.69, 0.17),
    cell(4, 45, 6, 0.56, 0.19),
    cell(4, 45, 12, 0.63, 0.18),
    cell(1, 10, 6, 0.57, 0.19),
    cell(1, 10, 12, 0.59, 0.19),
];

/// Three-qubit jitter anchor: Δτ = 0.01, σ = π/90, T = 1, 12 pairs.
pub const RF3_JITTER_ANCHOR: (f64, usize, f64, f64) = (0.01, 12, 0.92, 0.04);
