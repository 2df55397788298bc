//! Exact density-matrix simulation and estimation for calibrated virtual
//! distillation (VD) error mitigation.
//!
//! The crate is organized around a dense, double-precision density-matrix
//! simulator and a family of expectation-value estimators built on top of it:
//!
//! - [`tensor`] -- complex matrices, density matrices, partial trace,
//!   Haar-random unitaries, spectral decomposition, and the brute-force
//!   reference evaluation of `Tr[rho^n O] / Tr[rho^n]`.
//! - [`pauli`] -- Pauli letters, strings, and signed-Pauli bookkeeping.
//! - [`noise`] -- Kraus channels (stochastic Pauli, depolarizing, damping),
//!   gate-noise models, and effective-noise back-propagation.
//! - [`circuit`] -- layered gate circuits, the VD / GHZ / Hadamard-Test
//!   builders, exact evolution, and ancilla measurement probabilities.
//! - [`estimate`] -- the noisy VD estimator, the calibrated (CNR) estimators,
//!   calibration-state construction, and variance propagation.
//! - [`twirl`] -- randomized compiling for the VD circuit with the
//!   CSWAP-preserving Pauli twirl set.
//! - [`baseline`] -- shadow distillation, VD with zero-noise extrapolation,
//!   readout transfer matrices with iterative Bayesian unfolding, and
//!   unmitigated estimation.
//! - [`harness`] -- seeded, reproducible experiment sweeps with CSV/JSON
//!   result emission.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs (plus an explicit RNG stream where sampling is
//! involved), so independent evaluations can run concurrently.

pub mod baseline;
pub mod circuit;
pub mod error;
pub mod estimate;
pub mod harness;
pub mod noise;
pub mod pauli;
pub mod tensor;
pub mod twirl;
pub mod verify;

pub use error::{Error, Result};

/// Hard cap on the total number of qubits a dense simulation may use.
/// A 13-qubit density matrix already occupies ~1 GiB.
pub const QUBIT_CAP: usize = 13;

/// Tolerance for Hermiticity and trace checks on density matrices.
pub const STATE_TOL: f64 = 1e-10;

/// Tolerance for trace-preservation (CPTP) checks on channels.
pub const CHANNEL_TOL: f64 = 1e-9;
