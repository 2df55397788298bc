//! Dense complex linear algebra: tensor products, partial trace, spectral
//! decomposition, Haar-random unitaries, and the brute-force reference
//! evaluation of the distilled expectation value.

pub mod density;
pub mod haar;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod spectral;

pub use density::{DensityMatrix, PureState};
pub use haar::{haar_random_unitary, random_density_matrix, random_pauli_observable, random_pure_state};
pub use matrix::ComplexMatrix;
pub use oracle::{vd_oracle, vd_oracle_ratio};
pub use spectral::{spectral_decompose, SpectralState};
