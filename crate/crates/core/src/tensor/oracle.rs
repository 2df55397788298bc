//! Brute-force reference evaluation of the distilled expectation value by
//! explicit matrix powers. This path never touches the circuit machinery and
//! serves as the independent oracle for every circuit-based estimator.

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::tensor::density::DensityMatrix;

/// Compute `(Tr[rho^n O], Tr[rho^n])` by explicit matrix power and trace.
pub fn vd_oracle(rho: &DensityMatrix, o: &PauliString, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    if o.num_qubits() != rho.num_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "observable on {} qubits, state on {}",
            o.num_qubits(),
            rho.num_qubits()
        )));
    }
    let power = rho.matrix().pow(n);
    let pn = DensityMatrix::new_unchecked(rho.num_qubits(), power);
    let tr_n = pn.trace();
    let tr_no = pn.expectation_pauli(o);
    debug_assert!(tr_n.im.abs() < 1e-10);
    Ok((tr_no, tr_n.re))
}

/// The distilled ratio `Tr[rho^n O] / Tr[rho^n]`.
pub fn vd_oracle_ratio(rho: &DensityMatrix, o: &PauliString, n: usize) -> Result<f64> {
    let (num, den) = vd_oracle(rho, o, n)?;
    Ok(num / den)
}
