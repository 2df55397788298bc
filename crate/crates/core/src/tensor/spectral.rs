//! Spectral decomposition of noisy states into a dominant eigenstate and
//! weighted noise components.

use num_complex::Complex64 as C64;

use crate::tensor::density::{DensityMatrix, PureState};
use crate::tensor::linalg;
use crate::tensor::matrix::ComplexMatrix;

/// A state written as `(1-eps)|psi><psi| + eps * sum_k lambda_k |psi_k><psi_k|`
/// with mutually orthonormal vectors and `sum_k lambda_k = 1`.
#[derive(Debug, Clone)]
pub struct SpectralState {
    /// State-preparation error rate: one minus the dominant eigenvalue.
    pub epsilon: f64,
    /// The dominant eigenstate.
    pub dominant: PureState,
    /// Noise components as (lambda_k, |psi_k>) sorted by descending weight.
    pub noise_components: Vec<(f64, PureState)>,
    /// Set when the two largest eigenvalues are within 1e-12 of each other;
    /// the tie is broken deterministically by basis index.
    pub degenerate: bool,
}

impl SpectralState {
    /// ρ = (1-eps)|psi><psi| + eps Σ λ_k |psi_k><psi_k|.
    pub fn reconstruct(&self) -> DensityMatrix {
        let n = self.dominant.num_qubits();
        let d = 1usize << n;
        let mut m = ComplexMatrix::zeros(d, d);
        m.add_scaled_in_place(
            self.dominant.to_density().matrix(),
            C64::new(1.0 - self.epsilon, 0.0),
        );
        for (lambda, psi) in &self.noise_components {
            m.add_scaled_in_place(
                psi.to_density().matrix(),
                C64::new(self.epsilon * lambda, 0.0),
            );
        }
        DensityMatrix::new_unchecked(n, m)
    }
}

/// Eigenvalue cutoff below which components are treated as numerically zero.
const COMPONENT_FLOOR: f64 = 1e-13;

/// Decompose a state into its dominant eigenstate and noise components.
///
/// Eigenvalues are sorted in descending order (ties broken by basis index),
/// `epsilon = 1 - lambda_max`, and the noise weights are renormalized by
/// `epsilon` so they sum to one.
pub fn spectral_decompose(rho: &DensityMatrix) -> SpectralState {
    let (vals, vecs) = linalg::eigh(rho.matrix());
    let d = rho.dim();
    let n = rho.num_qubits();

    let column = |c: usize| -> PureState {
        let amps = (0..d).map(|r| vecs.get(r, c)).collect();
        PureState::new(n, amps)
    };

    let p0 = vals[0];
    let epsilon = (1.0 - p0).max(0.0);
    let degenerate = vals.len() > 1 && (p0 - vals[1]).abs() < 1e-12;

    let mut noise_components = Vec::new();
    if epsilon > COMPONENT_FLOOR {
        for (c, &v) in vals.iter().enumerate().skip(1) {
            if v > COMPONENT_FLOOR {
                noise_components.push((v / epsilon, column(c)));
            }
        }
    }

    SpectralState {
        epsilon,
        dominant: column(0),
        noise_components,
        degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::haar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn pure_state_has_zero_epsilon_and_no_components() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let psi = haar::random_pure_state(2, &mut rng);
        let dec = spectral_decompose(&psi.to_density());
        assert!(dec.epsilon.abs() < 1e-10);
        assert!(dec.noise_components.is_empty());
        assert!(!dec.degenerate);
        // Dominant eigenstate matches up to phase.
        assert!((dec.dominant.inner(&psi).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn maximally_mixed_single_qubit_is_flagged_degenerate() {
        let rho = DensityMatrix::maximally_mixed(1);
        let dec = spectral_decompose(&rho);
        assert!(dec.degenerate);
        assert!((dec.epsilon - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reconstruction_roundtrip_is_idempotent() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let rho = haar::random_density_matrix(3, &mut rng);
        let dec = spectral_decompose(&rho);
        let recon = dec.reconstruct();
        assert!(recon.matrix().max_abs_diff(rho.matrix()) < 1e-9);

        let dec2 = spectral_decompose(&recon);
        let recon2 = dec2.reconstruct();
        assert!(recon2.matrix().max_abs_diff(recon.matrix()) < 1e-9);
        // Weights sum to one.
        let sum: f64 = dec.noise_components.iter().map(|(l, _)| l).sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let rho = haar::random_density_matrix(2, &mut rng);
        let dec = spectral_decompose(&rho);
        let mut states = vec![dec.dominant.clone()];
        states.extend(dec.noise_components.iter().map(|(_, s)| s.clone()));
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let ip = a.inner(b).norm();
                if i == j {
                    assert!((ip - 1.0).abs() < 1e-10);
                } else {
                    assert!(ip < 1e-10);
                }
            }
        }
    }
}
