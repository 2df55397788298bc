//! Density matrices, pure states, and fast in-place local operations.
//!
//! Qubit 0 is the most significant bit of a basis index, so
//! `kron(a, b)` places `a` on the lower-numbered qubits.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::tensor::linalg;
use crate::tensor::matrix::ComplexMatrix;
use crate::{QUBIT_CAP, STATE_TOL};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Bit position (from the LSB) of `qubit` in a `num_qubits` register.
#[inline]
pub(crate) fn bit_of(qubit: usize, num_qubits: usize) -> usize {
    num_qubits - 1 - qubit
}

/// Insert zero bits at the (ascending) positions in `bits`, expanding a
/// compact index over the remaining positions to a full index.
#[inline]
fn expand_index(mut r: usize, bits_ascending: &[usize]) -> usize {
    for &b in bits_ascending {
        let low = r & ((1 << b) - 1);
        r = ((r >> b) << (b + 1)) | low;
    }
    r
}

/// Offsets of the 2^k local basis states of a gate on `targets`, where bit
/// `j` (counted from the most significant bit of the local index)
/// corresponds to `targets[j]`.
fn local_offsets(targets: &[usize], num_qubits: usize) -> Vec<usize> {
    let k = targets.len();
    let mut offsets = vec![0usize; 1 << k];
    for (l, off) in offsets.iter_mut().enumerate() {
        for (j, &t) in targets.iter().enumerate() {
            if (l >> (k - 1 - j)) & 1 == 1 {
                *off |= 1 << bit_of(t, num_qubits);
            }
        }
    }
    offsets
}

fn check_targets(targets: &[usize], num_qubits: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: t,
                num_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DimensionMismatch(format!(
                "repeated target qubit {t}"
            )));
        }
    }
    Ok(())
}

/// A normalized pure state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    pub fn new(num_qubits: usize, amps: Vec<C64>) -> Self {
        assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    /// Computational basis state |index>.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    /// Single-qubit state a|0> + b|1>.
    pub fn qubit(a: C64, b: C64) -> Self {
        Self {
            num_qubits: 1,
            amps: vec![a, b],
        }
    }

    pub fn zero() -> Self {
        Self::basis(1, 0)
    }

    pub fn one() -> Self {
        Self::basis(1, 1)
    }

    /// |+> = (|0> + |1>)/sqrt(2).
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::qubit(C64::new(h, 0.0), C64::new(h, 0.0))
    }

    /// |-> = (|0> - |1>)/sqrt(2).
    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::qubit(C64::new(h, 0.0), C64::new(-h, 0.0))
    }

    /// |+i> = (|0> + i|1>)/sqrt(2).
    pub fn plus_i() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::qubit(C64::new(h, 0.0), C64::new(0.0, h))
    }

    /// |-i> = (|0> - i|1>)/sqrt(2).
    pub fn minus_i() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::qubit(C64::new(h, 0.0), C64::new(0.0, -h))
    }

    /// Tensor product of single-qubit factors, qubit 0 first.
    pub fn product(factors: &[PureState]) -> Self {
        let mut out = PureState {
            num_qubits: 0,
            amps: vec![C64::new(1.0, 0.0)],
        };
        for f in factors {
            out = out.kron(f);
        }
        out
    }

    pub fn kron(&self, other: &PureState) -> PureState {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> PureState {
        let n = self.norm();
        PureState {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|a| a / n).collect(),
        }
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &PureState) -> C64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Apply a full-dimension unitary to the state.
    pub fn apply_matrix(&self, u: &ComplexMatrix) -> PureState {
        assert_eq!(u.rows(), self.amps.len());
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, out) in amps.iter_mut().enumerate() {
            for (j, a) in self.amps.iter().enumerate() {
                *out += u.get(i, j) * a;
            }
        }
        PureState {
            num_qubits: self.num_qubits,
            amps,
        }
    }

    /// Expectation value <psi|P|psi> of a Pauli string.
    pub fn expectation_pauli(&self, p: &PauliString) -> f64 {
        self.to_density().expectation_pauli(p)
    }

    /// Outer product |psi><psi| as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.amps.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        DensityMatrix::new_unchecked(self.num_qubits, m)
    }
}

/// A Hermitian, trace-one, positive-semidefinite matrix on `num_qubits`
/// qubits, stored dense in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor: checks the qubit cap, Hermiticity and trace
    /// within 1e-10, and positive semidefiniteness (eigenvalues >= -1e-10).
    pub fn new(num_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if num_qubits > QUBIT_CAP {
            return Err(Error::QubitCapExceeded {
                requested: num_qubits,
                cap: QUBIT_CAP,
            });
        }
        let d = 1usize << num_qubits;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "expected {d}x{d} matrix for {num_qubits} qubits, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let state = Self { num_qubits, matrix };
        state.validate()?;
        Ok(state)
    }

    /// Construct without validation; for hot loops where validity is
    /// guaranteed by construction (CPTP evolution of a valid state).
    pub fn new_unchecked(num_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << num_qubits);
        debug_assert_eq!(matrix.cols(), 1 << num_qubits);
        Self { num_qubits, matrix }
    }

    /// Re-run the construction-time validity checks.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |rho - rho^dag| = {herm:.3e})"
            )));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {} != 1 within {STATE_TOL:.0e}",
                tr.re
            )));
        }
        // Eigenvalue floor: exact spectrum for moderate sizes, shifted
        // Cholesky as a positivity witness for large ones.
        let d = self.dim();
        if d <= 512 {
            let (vals, _) = linalg::eigh(&self.matrix);
            if let Some(min) = vals.iter().cloned().reduce(f64::min) {
                if min < -STATE_TOL {
                    return Err(Error::InvalidState(format!(
                        "negative eigenvalue {min:.3e}"
                    )));
                }
            }
        } else if !linalg::is_psd_within(&self.matrix, STATE_TOL) {
            return Err(Error::InvalidState(
                "matrix is not positive semidefinite".into(),
            ));
        }
        Ok(())
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let d = 1usize << num_qubits;
        let m = ComplexMatrix::identity(d).scaled(C64::new(1.0 / d as f64, 0.0));
        Self::new_unchecked(num_qubits, m)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let d = self.dim();
        let mut max = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let diff = (self.matrix.get(i, j) - self.matrix.get(j, i).conj()).norm();
                max = max.max(diff);
            }
        }
        max
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Tr[rho^2], using Tr[rho^2] = sum_{ij} |rho_ij|^2 for Hermitian rho.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|v| v.norm_sqr()).sum()
    }

    /// Tr[rho P] for a Pauli string on the full register (real for valid states).
    pub fn expectation_pauli(&self, p: &PauliString) -> f64 {
        assert_eq!(p.num_qubits(), self.num_qubits);
        let d = self.dim();
        let f = p.flip_mask();
        let m = p.sign_mask();
        let y_phase = match p.y_count() % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        let mut sum = ZERO;
        for x in 0..d {
            let sign = if ((x & m).count_ones()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            sum += self.matrix.get(x, x ^ f) * sign;
        }
        let val = sum * y_phase;
        debug_assert!(val.im.abs() < 1e-9, "Pauli expectation has imaginary part");
        val.re
    }

    /// Tr[rho M] for an arbitrary matrix.
    pub fn expectation_matrix(&self, m: &ComplexMatrix) -> C64 {
        let d = self.dim();
        assert_eq!(m.rows(), d);
        let mut sum = ZERO;
        for x in 0..d {
            for y in 0..d {
                sum += self.matrix.get(x, y) * m.get(y, x);
            }
        }
        sum
    }

    /// Probability of measuring qubit 0 in |0>.
    pub fn prob_qubit0_zero(&self) -> f64 {
        let d = self.dim();
        let mut sum = 0.0;
        for x in 0..d / 2 {
            sum += self.matrix.get(x, x).re;
        }
        sum
    }

    /// The diagonal as a real probability vector.
    pub fn diagonal_probs(&self) -> Vec<f64> {
        (0..self.dim()).map(|x| self.matrix.get(x, x).re).collect()
    }

    /// Tensor product `self (x) other`, `self` on the lower-numbered qubits.
    pub fn kron(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let total = self.num_qubits + other.num_qubits;
        if total > QUBIT_CAP {
            return Err(Error::QubitCapExceeded {
                requested: total,
                cap: QUBIT_CAP,
            });
        }
        Ok(DensityMatrix::new_unchecked(
            total,
            self.matrix.kron(&other.matrix),
        ))
    }

    /// Partial trace keeping `keep` (ascending original order in the result).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &q in &keep {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        let traced: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let nk = keep.len();
        let dk = 1usize << nk;
        let dt = 1usize << traced.len();
        let d = self.dim();

        // Offsets of kept-index bits and traced-index bits in the full index.
        let keep_offsets = local_offsets(&keep, self.num_qubits);
        let tr_offsets = local_offsets(&traced, self.num_qubits);

        let mut out = ComplexMatrix::zeros(dk, dk);
        for t in 0..dt {
            let toff = tr_offsets[t];
            for a in 0..dk {
                let ra = (keep_offsets[a] | toff) * d;
                for b in 0..dk {
                    let cb = keep_offsets[b] | toff;
                    let v = self.matrix.data()[ra + cb];
                    out.data_mut()[a * dk + b] += v;
                }
            }
        }
        Ok(DensityMatrix::new_unchecked(nk, out))
    }

    // -- in-place local operations ----------------------------------------

    /// rho <- (U (x) I) rho (U (x) I)^dag with `u` acting on `targets`.
    pub fn apply_unitary(&mut self, u: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        self.apply_left(u, targets)?;
        self.apply_right_dagger(u, targets)
    }

    /// rho <- M rho for a local matrix `M` on `targets` (no unitarity assumed).
    pub fn apply_left(&mut self, m: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        check_targets(targets, self.num_qubits)?;
        let k = targets.len();
        let dk = 1usize << k;
        if m.rows() != dk || m.cols() != dk {
            return Err(Error::DimensionMismatch(format!(
                "gate is {}x{} but acts on {k} qubits",
                m.rows(),
                m.cols()
            )));
        }
        let d = self.dim();
        let offsets = local_offsets(targets, self.num_qubits);
        let mut target_bits: Vec<usize> = targets
            .iter()
            .map(|&t| bit_of(t, self.num_qubits))
            .collect();
        target_bits.sort_unstable();

        // Row combinations: each group of 2^k rows is replaced by u times
        // the stacked rows; row operations are contiguous in memory.
        let mut scratch = vec![ZERO; dk * d];
        let data = self.matrix.data_mut();
        for r in 0..(d >> k) {
            let base = expand_index(r, &target_bits);
            for l in 0..dk {
                let row = (base | offsets[l]) * d;
                scratch[l * d..(l + 1) * d].copy_from_slice(&data[row..row + d]);
            }
            for i in 0..dk {
                let out_row = (base | offsets[i]) * d;
                let out = &mut data[out_row..out_row + d];
                let mut first = true;
                for l in 0..dk {
                    let coeff = m.get(i, l);
                    if coeff == ZERO && !first {
                        continue;
                    }
                    let src = &scratch[l * d..(l + 1) * d];
                    if first {
                        for (o, s) in out.iter_mut().zip(src) {
                            *o = coeff * s;
                        }
                        first = false;
                    } else {
                        for (o, s) in out.iter_mut().zip(src) {
                            *o += coeff * s;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// rho <- rho M^dag for a local matrix `M` on `targets`.
    pub fn apply_right_dagger(&mut self, m: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        check_targets(targets, self.num_qubits)?;
        let k = targets.len();
        let dk = 1usize << k;
        if m.rows() != dk || m.cols() != dk {
            return Err(Error::DimensionMismatch(format!(
                "gate is {}x{} but acts on {k} qubits",
                m.rows(),
                m.cols()
            )));
        }
        let d = self.dim();
        let offsets = local_offsets(targets, self.num_qubits);
        let mut target_bits: Vec<usize> = targets
            .iter()
            .map(|&t| bit_of(t, self.num_qubits))
            .collect();
        target_bits.sort_unstable();

        // Per row, mix gathered column entries: (rho M^dag)[r, c(b,j)] =
        // sum_l conj(m[j,l]) rho[r, c(b,l)].
        let mut gathered = vec![ZERO; dk];
        let data = self.matrix.data_mut();
        for row in 0..d {
            let row_off = row * d;
            for cb in 0..(d >> k) {
                let base = expand_index(cb, &target_bits);
                for l in 0..dk {
                    gathered[l] = data[row_off + (base | offsets[l])];
                }
                for j in 0..dk {
                    let mut acc = ZERO;
                    for (l, g) in gathered.iter().enumerate() {
                        acc += m.get(j, l).conj() * g;
                    }
                    data[row_off + (base | offsets[j])] = acc;
                }
            }
        }
        Ok(())
    }

    /// rho <- sum_i K_i rho K_i^dag for local Kraus operators on `targets`.
    pub fn apply_kraus(&mut self, kraus: &[ComplexMatrix], targets: &[usize]) -> Result<()> {
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("empty Kraus set".into()));
        }
        if kraus.len() == 1 {
            // Single Kraus operator, no accumulation buffer needed.
            self.apply_left(&kraus[0], targets)?;
            return self.apply_right_dagger(&kraus[0], targets);
        }
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for k in kraus {
            let mut term = self.clone();
            term.apply_left(k, targets)?;
            term.apply_right_dagger(k, targets)?;
            acc.add_scaled_in_place(&term.matrix, C64::new(1.0, 0.0));
        }
        self.matrix = acc;
        Ok(())
    }

    /// In-place mix toward the maximally mixed state on `targets`:
    /// rho <- (1-rate) rho + rate * (I/2^m (x) Tr_targets[rho]).
    pub fn apply_depolarizing(&mut self, targets: &[usize], rate: f64) -> Result<()> {
        check_targets(targets, self.num_qubits)?;
        if rate == 0.0 {
            return Ok(());
        }
        let k = targets.len();
        let dk = 1usize << k;
        let d = self.dim();
        let offsets = local_offsets(targets, self.num_qubits);
        let mut target_bits: Vec<usize> = targets
            .iter()
            .map(|&t| bit_of(t, self.num_qubits))
            .collect();
        target_bits.sort_unstable();
        let rest = d >> k;

        // Partial trace over targets, kept in compact (rest x rest) form.
        let mut tr = vec![ZERO; rest * rest];
        {
            let data = self.matrix.data();
            for ra in 0..rest {
                let base_a = expand_index(ra, &target_bits);
                for rb in 0..rest {
                    let base_b = expand_index(rb, &target_bits);
                    let mut sum = ZERO;
                    for off in offsets.iter() {
                        sum += data[(base_a | off) * d + (base_b | off)];
                    }
                    tr[ra * rest + rb] = sum;
                }
            }
        }

        let keep_scale = C64::new(1.0 - rate, 0.0);
        let mix = C64::new(rate / dk as f64, 0.0);
        let data = self.matrix.data_mut();
        for v in data.iter_mut() {
            *v *= keep_scale;
        }
        for ra in 0..rest {
            let base_a = expand_index(ra, &target_bits);
            for rb in 0..rest {
                let base_b = expand_index(rb, &target_bits);
                let add = mix * tr[ra * rest + rb];
                for off in offsets.iter() {
                    data[(base_a | off) * d + (base_b | off)] += add;
                }
            }
        }
        Ok(())
    }

    /// Single-qubit phase damping at `rate`: off-diagonal blocks of the
    /// target qubit scale by sqrt(1-rate).
    pub fn apply_phase_damping(&mut self, qubit: usize, rate: f64) -> Result<()> {
        check_targets(&[qubit], self.num_qubits)?;
        let mask = 1usize << bit_of(qubit, self.num_qubits);
        let scale = (1.0 - rate).sqrt();
        let d = self.dim();
        let data = self.matrix.data_mut();
        for x in 0..d {
            let row = x * d;
            for y in 0..d {
                if (x ^ y) & mask != 0 {
                    data[row + y] *= scale;
                }
            }
        }
        Ok(())
    }

    /// Single-qubit amplitude damping at `rate` (decay |1> -> |0>).
    pub fn apply_amplitude_damping(&mut self, qubit: usize, rate: f64) -> Result<()> {
        check_targets(&[qubit], self.num_qubits)?;
        let mask = 1usize << bit_of(qubit, self.num_qubits);
        let d = self.dim();
        let keep = (1.0 - rate).sqrt();
        let data = self.matrix.data_mut();
        for x in 0..d {
            if x & mask != 0 {
                continue;
            }
            let x1 = x | mask;
            for y in 0..d {
                if y & mask != 0 {
                    continue;
                }
                let y1 = y | mask;
                let p11 = data[x1 * d + y1];
                data[x * d + y] += rate * p11;
                data[x1 * d + y1] = (1.0 - rate) * p11;
                data[x * d + y1] *= keep;
                data[x1 * d + y] *= keep;
            }
        }
        Ok(())
    }

    /// Accumulate `weight * P rho P^dag` terms of a stochastic Pauli channel:
    /// rho <- id_weight * rho + sum_s w_s P_s rho P_s.
    ///
    /// Terms are given as (weight, flip mask, sign mask) over full-register
    /// bit positions.
    pub fn apply_pauli_mixture(&mut self, id_weight: f64, terms: &[(f64, usize, usize)]) {
        let d = self.dim();
        let src = self.matrix.data().to_vec();
        let data = self.matrix.data_mut();
        for v in data.iter_mut() {
            *v *= id_weight;
        }
        let mut col_sign = vec![1.0f64; d];
        for &(w, f, m) in terms {
            if w == 0.0 {
                continue;
            }
            for (y, s) in col_sign.iter_mut().enumerate() {
                *s = if ((y & m).count_ones()) % 2 == 0 {
                    w
                } else {
                    -w
                };
            }
            for x in 0..d {
                let row_sign = if ((x & m).count_ones()) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let out_row = x * d;
                let in_row = (x ^ f) * d;
                for y in 0..d {
                    let c = row_sign * col_sign[y];
                    data[out_row + y] += c * src[in_row + (y ^ f)];
                }
            }
        }
    }

    /// Conjugate by a Pauli string gate on the full register (unitary action).
    pub fn apply_pauli_gate(&mut self, p: &PauliString) {
        assert_eq!(p.num_qubits(), self.num_qubits);
        if p.is_identity() {
            return;
        }
        let f = p.flip_mask();
        let m = p.sign_mask();
        let d = self.dim();
        let src = self.matrix.data().to_vec();
        let data = self.matrix.data_mut();
        for x in 0..d {
            let row_sign = if ((x & m).count_ones()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            let out_row = x * d;
            let in_row = (x ^ f) * d;
            for y in 0..d {
                let sign = if ((y & m).count_ones()) % 2 == 0 {
                    row_sign
                } else {
                    -row_sign
                };
                data[out_row + y] = sign * src[in_row + (y ^ f)];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::haar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn random_density(num_qubits: usize, seed: u64) -> DensityMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        haar::random_density_matrix(num_qubits, &mut rng)
    }

    #[test]
    fn pure_state_to_density_is_valid() {
        let psi = PureState::product(&[PureState::plus(), PureState::zero(), PureState::plus_i()]);
        let rho = psi.to_density();
        assert!(rho.validate().is_ok());
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        // |00><00| keeping qubit 0 gives |0><0|.
        let rho = PureState::basis(2, 0).to_density();
        let red = rho.partial_trace(&[0]).unwrap();
        assert!((red.matrix().get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(red.matrix().get(1, 1).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_bell_state_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(
            2,
            vec![
                C64::new(h, 0.0),
                ZERO,
                ZERO,
                C64::new(h, 0.0),
            ],
        );
        let red = bell.to_density().partial_trace(&[0]).unwrap();
        assert!(red.matrix().max_abs_diff(DensityMatrix::maximally_mixed(1).matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_matches_elementwise_summation() {
        // Brute-force index-summation oracle on a random 3-qubit state.
        let rho = random_density(3, 7);
        let keep = [0usize, 2];
        let red = rho.partial_trace(&keep).unwrap();

        // Oracle: explicit summation with qubit 1 traced out (bit 1 of 3).
        let mut expected = ComplexMatrix::zeros(4, 4);
        for a in 0..4usize {
            for b in 0..4usize {
                let mut sum = ZERO;
                for t in 0..2usize {
                    // qubit order (0,2) in the result; qubit1 is bit position 1.
                    let full_a = ((a >> 1) << 2) | (t << 1) | (a & 1);
                    let full_b = ((b >> 1) << 2) | (t << 1) | (b & 1);
                    sum += rho.matrix().get(full_a, full_b);
                }
                expected.set(a, b, sum);
            }
        }
        assert!(red.matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn partial_trace_keeping_everything_is_identity_op() {
        let rho = random_density(2, 3);
        let red = rho.partial_trace(&[0, 1]).unwrap();
        assert!(red.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_out_of_range() {
        let rho = random_density(2, 4);
        assert!(matches!(
            rho.partial_trace(&[3]),
            Err(Error::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn apply_unitary_matches_dense_conjugation() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let rho = random_density(3, 5);
        let u = haar::haar_random_unitary(4, &mut rng).unwrap();
        for targets in [[0usize, 2], [2, 0], [1, 2]] {
            let mut fast = rho.clone();
            fast.apply_unitary(&u, &targets).unwrap();

            // Dense reference: build the embedded matrix with explicit kron
            // and permutation-free indexing.
            let mut emb = ComplexMatrix::zeros(8, 8);
            let offsets = local_offsets(&targets, 3);
            let mut bits: Vec<usize> = targets.iter().map(|&t| bit_of(t, 3)).collect();
            bits.sort_unstable();
            for rest in 0..2usize {
                let base = expand_index(rest, &bits);
                for i in 0..4 {
                    for j in 0..4 {
                        emb.set(base | offsets[i], base | offsets[j], u.get(i, j));
                    }
                }
            }
            let expected = emb.mul(rho.matrix()).mul(&emb.dagger());
            assert!(fast.matrix().max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn unitary_preserves_purity() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let mut rho = random_density(3, 9);
        let before = rho.purity();
        let u = haar::haar_random_unitary(8, &mut rng).unwrap();
        rho.apply_unitary(&u, &[0, 1, 2]).unwrap();
        assert!((rho.purity() - before).abs() < 1e-10);
    }

    #[test]
    fn pauli_mixture_matches_kraus_application() {
        let rho = random_density(2, 21);
        // Channel: 0.8 I + 0.15 XZ + 0.05 YY.
        let p_a = PauliString::parse("XZ").unwrap();
        let p_b = PauliString::parse("YY").unwrap();

        let mut fast = rho.clone();
        fast.apply_pauli_mixture(
            0.8,
            &[
                (0.15, p_a.flip_mask(), p_a.sign_mask()),
                (0.05, p_b.flip_mask(), p_b.sign_mask()),
            ],
        );

        let mut slow = ComplexMatrix::zeros(4, 4);
        slow.add_scaled_in_place(rho.matrix(), C64::new(0.8, 0.0));
        for (w, p) in [(0.15, &p_a), (0.05, &p_b)] {
            let pm = p.matrix();
            slow.add_scaled_in_place(
                &pm.mul(rho.matrix()).mul(&pm.dagger()),
                C64::new(w, 0.0),
            );
        }
        assert!(fast.matrix().max_abs_diff(&slow) < 1e-13);
    }

    #[test]
    fn pauli_gate_matches_unitary_application() {
        let rho = random_density(3, 33);
        let p = PauliString::parse("YXZ").unwrap();
        let mut fast = rho.clone();
        fast.apply_pauli_gate(&p);
        let mut slow = rho.clone();
        slow.apply_unitary(&p.matrix(), &[0, 1, 2]).unwrap();
        assert!(fast.matrix().max_abs_diff(slow.matrix()) < 1e-12);
    }

    #[test]
    fn depolarizing_shortcut_matches_pauli_form() {
        let rho = random_density(3, 17);
        let rate = 0.23;
        let targets = [0usize, 2];

        let mut fast = rho.clone();
        fast.apply_depolarizing(&targets, rate).unwrap();

        // Uniform-Pauli form: (1-rate+rate/16) rho + (rate/16) sum_{s!=0} P rho P.
        use crate::pauli::PauliLetter;
        let mut terms = Vec::new();
        for la in PauliLetter::ALL {
            for lb in PauliLetter::ALL {
                if la == PauliLetter::I && lb == PauliLetter::I {
                    continue;
                }
                let mut letters = vec![PauliLetter::I; 3];
                letters[0] = la;
                letters[2] = lb;
                let p = PauliString::new(letters);
                terms.push((rate / 16.0, p.flip_mask(), p.sign_mask()));
            }
        }
        let mut slow = rho.clone();
        slow.apply_pauli_mixture(1.0 - rate + rate / 16.0, &terms);
        assert!(fast.matrix().max_abs_diff(slow.matrix()) < 1e-13);
    }

    #[test]
    fn damping_shortcuts_match_kraus() {
        let rho = random_density(2, 41);
        let eps: f64 = 0.2;

        // Phase damping on qubit 1.
        let e0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - eps).sqrt()]);
        let e1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, eps.sqrt()]);
        let mut fast = rho.clone();
        fast.apply_phase_damping(1, eps).unwrap();
        let mut slow = rho.clone();
        slow.apply_kraus(&[e0.clone(), e1], &[1]).unwrap();
        assert!(fast.matrix().max_abs_diff(slow.matrix()) < 1e-13);

        // Amplitude damping on qubit 0.
        let e2 = ComplexMatrix::from_real(2, 2, &[0.0, eps.sqrt(), 0.0, 0.0]);
        let mut fast = rho.clone();
        fast.apply_amplitude_damping(0, eps).unwrap();
        let mut slow = rho.clone();
        slow.apply_kraus(&[e0, e2], &[0]).unwrap();
        assert!(fast.matrix().max_abs_diff(slow.matrix()) < 1e-13);
    }

    #[test]
    fn validation_rejects_bad_states() {
        // Trace != 1.
        let m = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(1, m).is_err());
        // Negative eigenvalue.
        let m = ComplexMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]);
        assert!(DensityMatrix::new(1, m).is_err());
        // Non-Hermitian.
        let mut m = ComplexMatrix::identity(2).scaled(C64::new(0.5, 0.0));
        m.set(0, 1, C64::new(0.3, 0.0));
        assert!(DensityMatrix::new(1, m).is_err());
    }

    #[test]
    fn qubit_cap_enforced() {
        let m = ComplexMatrix::identity(1 << 14);
        assert!(matches!(
            DensityMatrix::new(14, m),
            Err(Error::QubitCapExceeded { .. })
        ));
    }
}
