//! Haar-random unitaries and random states.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tensor::density::{DensityMatrix, PureState};
use crate::tensor::linalg;
use crate::tensor::matrix::ComplexMatrix;

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Sample a Haar-distributed unitary of the given dimension.
///
/// Uses the Ginibre-ensemble construction: QR-factorize a complex Gaussian
/// matrix and normalize the phases of the triangular factor's diagonal so
/// the distribution is exactly Haar.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "dim",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let mut g = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, standard_complex(rng));
        }
    }
    let (q, r_diag) = linalg::qr_unitary(&g);
    // Multiply column j by r_jj / |r_jj|.
    let mut u = q;
    for (j, r) in r_diag.iter().enumerate() {
        let phase = if r.norm() > 0.0 {
            r / r.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            u.set(i, j, u.get(i, j) * phase);
        }
    }
    debug_assert!(u.unitarity_residual() < 1e-10);
    Ok(u)
}

/// A Haar-random pure state on `num_qubits` qubits (normalized Gaussian
/// amplitudes).
pub fn random_pure_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> PureState {
    let d = 1usize << num_qubits;
    let amps: Vec<C64> = (0..d).map(|_| standard_complex(rng)).collect();
    PureState::new(num_qubits, amps).normalized()
}

/// A random full-rank density matrix (normalized Wishart), for tests.
pub fn random_density_matrix<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> DensityMatrix {
    let d = 1usize << num_qubits;
    let mut g = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g.set(i, j, standard_complex(rng));
        }
    }
    let w = g.mul(&g.dagger());
    let tr = w.trace().re;
    let m = w.scaled(C64::new(1.0 / tr, 0.0));
    // Symmetrize away rounding noise.
    let sym = m.add(&m.dagger()).scaled(C64::new(0.5, 0.0));
    DensityMatrix::new_unchecked(num_qubits, sym)
}

/// A random weight-`k` Pauli observable on `num_qubits` qubits.
pub fn random_pauli_observable<R: Rng + ?Sized>(
    num_qubits: usize,
    weight: usize,
    rng: &mut R,
) -> crate::pauli::PauliString {
    use crate::pauli::{PauliLetter, PauliString};
    assert!(weight <= num_qubits);
    let mut qubits: Vec<usize> = (0..num_qubits).collect();
    // Partial Fisher-Yates for the support choice.
    for i in 0..weight {
        let j = rng.random_range(i..num_qubits);
        qubits.swap(i, j);
    }
    let mut letters = vec![PauliLetter::I; num_qubits];
    for &q in &qubits[..weight] {
        letters[q] = PauliLetter::NONTRIVIAL[rng.random_range(0..3)];
    }
    PauliString::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn dim_one_is_a_unit_modulus_scalar() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let u = haar_random_unitary(1, &mut rng).unwrap();
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dim_zero_is_an_error() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        assert!(haar_random_unitary(0, &mut rng).is_err());
    }

    #[test]
    fn sampled_unitaries_are_unitary_and_seeded() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let u = haar_random_unitary(4, &mut rng).unwrap();
        assert!(u.unitarity_residual() < 1e-10);

        let mut rng2 = ChaCha12Rng::seed_from_u64(42);
        let u2 = haar_random_unitary(4, &mut rng2).unwrap();
        assert!(u.max_abs_diff(&u2) == 0.0);
    }

    #[test]
    fn first_moment_matches_haar() {
        // E[|U_00|^2] = 1/dim for Haar; Monte Carlo check at dim 2.
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let samples = 10_000;
        let mut sum = 0.0;
        for _ in 0..samples {
            let u = haar_random_unitary(2, &mut rng).unwrap();
            sum += u.get(0, 0).norm_sqr();
        }
        let mean = sum / samples as f64;
        assert!(
            (mean - 0.5).abs() < 0.02,
            "E[|U00|^2] = {mean}, expected 0.5 +- 0.02"
        );
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let rho = random_density_matrix(3, &mut rng);
        assert!(rho.validate().is_ok());
    }

    #[test]
    fn random_observable_has_requested_weight() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for w in 0..=4 {
            let o = random_pauli_observable(4, w, &mut rng);
            assert_eq!(o.weight(), w);
        }
    }
}
