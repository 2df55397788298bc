//! Pauli letters, Pauli strings, and signed-Pauli bookkeeping.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::ComplexMatrix;

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    pub const NONTRIVIAL: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    /// The 2x2 matrix of this letter.
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            PauliLetter::I => ComplexMatrix::identity(2),
            PauliLetter::X => ComplexMatrix::sigma_x(),
            PauliLetter::Y => ComplexMatrix::sigma_y(),
            PauliLetter::Z => ComplexMatrix::sigma_z(),
        }
    }

    /// Whether this letter flips the computational basis (X or Y).
    pub fn flips(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    /// Whether this letter carries a basis-dependent sign (Y or Z).
    pub fn signs(self) -> bool {
        matches!(self, PauliLetter::Y | PauliLetter::Z)
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            other => Err(Error::Parse {
                path: "pauli string".into(),
                message: format!("unknown Pauli letter '{other}'"),
            }),
        }
    }

    /// Single-qubit product `self * other = phase * letter`, with
    /// `phase` one of `{1, -1, i, -i}` encoded as a power of `i`.
    fn mul(self, other: PauliLetter) -> (u8, PauliLetter) {
        use PauliLetter::*;
        // Returns (k, L) with self*other = i^k * L.
        match (self, other) {
            (I, p) => (0, p),
            (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }
}

/// A multi-qubit Pauli observable: one letter per qubit.
///
/// The `support` is the set of qubits carrying a non-identity letter; its
/// size is the weight `k` of the observable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(letters: Vec<PauliLetter>) -> Self {
        Self { letters }
    }

    /// The all-identity string on `num_qubits` qubits.
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            letters: vec![PauliLetter::I; num_qubits],
        }
    }

    /// A single non-identity letter at `qubit`, identities elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, letter: PauliLetter) -> Self {
        let mut letters = vec![PauliLetter::I; num_qubits];
        letters[qubit] = letter;
        Self { letters }
    }

    /// Parse from a letter-per-qubit string such as `"XIZY"`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(PauliLetter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters[qubit]
    }

    /// Indices of qubits with a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != PauliLetter::I)
            .map(|(i, _)| i)
            .collect()
    }

    /// The weight `k = |support|`.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|l| **l != PauliLetter::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Dense `2^N x 2^N` matrix of the string.
    pub fn matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(1);
        for l in &self.letters {
            m = m.kron(&l.matrix());
        }
        m
    }

    /// Bit mask (qubit 0 = most significant bit of the basis index) of
    /// letters that flip the basis, i.e. X or Y.
    pub fn flip_mask(&self) -> usize {
        self.mask(PauliLetter::flips)
    }

    /// Bit mask of letters that contribute basis-dependent signs, i.e. Y or Z.
    pub fn sign_mask(&self) -> usize {
        self.mask(PauliLetter::signs)
    }

    /// Number of Y letters (each contributes a factor `i` to `P|x>`).
    pub fn y_count(&self) -> usize {
        self.letters.iter().filter(|l| **l == PauliLetter::Y).count()
    }

    fn mask(&self, pred: impl Fn(PauliLetter) -> bool) -> usize {
        let n = self.letters.len();
        let mut mask = 0usize;
        for (q, l) in self.letters.iter().enumerate() {
            if pred(*l) {
                mask |= 1 << (n - 1 - q);
            }
        }
        mask
    }

    /// Split into `(o1, o2)`: letters on `register2_support` move to `o2`,
    /// the rest stay in `o1`. Identity letters are unaffected.
    pub fn split(&self, register2_support: &[usize]) -> SplitObservable {
        let n = self.num_qubits();
        let mut o1 = vec![PauliLetter::I; n];
        let mut o2 = vec![PauliLetter::I; n];
        for (q, l) in self.letters.iter().enumerate() {
            if *l == PauliLetter::I {
                continue;
            }
            if register2_support.contains(&q) {
                o2[q] = *l;
            } else {
                o1[q] = *l;
            }
        }
        SplitObservable {
            o1: PauliString::new(o1),
            o2: PauliString::new(o2),
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// A Pauli observable split across the two registers of a second-order VD
/// circuit: every support index of the parent appears in exactly one part.
#[derive(Debug, Clone)]
pub struct SplitObservable {
    pub o1: PauliString,
    pub o2: PauliString,
}

impl SplitObservable {
    /// Check the partition property against the parent observable.
    pub fn partitions(&self, parent: &PauliString) -> bool {
        if self.o1.num_qubits() != parent.num_qubits() || self.o2.num_qubits() != parent.num_qubits() {
            return false;
        }
        parent.letters().iter().enumerate().all(|(q, l)| {
            let (l1, l2) = (self.o1.letter(q), self.o2.letter(q));
            if *l == PauliLetter::I {
                l1 == PauliLetter::I && l2 == PauliLetter::I
            } else {
                (l1 == *l && l2 == PauliLetter::I) || (l1 == PauliLetter::I && l2 == *l)
            }
        })
    }
}

/// A Pauli string together with a unit phase `i^k`, as produced by Clifford
/// conjugation or Pauli products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPauli {
    pub string: PauliString,
    /// Phase exponent: the operator equals `i^phase_pow * string`.
    pub phase_pow: u8,
}

impl SignedPauli {
    pub fn plus(string: PauliString) -> Self {
        Self { string, phase_pow: 0 }
    }

    pub fn phase(&self) -> C64 {
        match self.phase_pow % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    /// Whether the phase is real (`+1` or `-1`); conjugating a Hermitian
    /// Pauli by a unitary always yields a real phase.
    pub fn is_real(&self) -> bool {
        self.phase_pow % 2 == 0
    }

    /// Product `self * rhs` with phase tracking.
    pub fn mul(&self, rhs: &SignedPauli) -> SignedPauli {
        assert_eq!(self.string.num_qubits(), rhs.string.num_qubits());
        let mut phase = (self.phase_pow + rhs.phase_pow) % 4;
        let letters = self
            .string
            .letters()
            .iter()
            .zip(rhs.string.letters())
            .map(|(a, b)| {
                let (k, l) = a.mul(*b);
                phase = (phase + k) % 4;
                l
            })
            .collect();
        SignedPauli {
            string: PauliString::new(letters),
            phase_pow: phase,
        }
    }

    /// Dense matrix including the phase.
    pub fn matrix(&self) -> ComplexMatrix {
        self.string.matrix().scaled(self.phase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_products_follow_the_algebra() {
        use PauliLetter::*;
        // X*Z = -iY, Z*X = iY, X*Y = iZ.
        assert_eq!(X.mul(Z), (3, Y));
        assert_eq!(Z.mul(X), (1, Y));
        assert_eq!(X.mul(Y), (1, Z));
        assert_eq!(Y.mul(Y), (0, I));
    }

    #[test]
    fn signed_product_matches_dense_matrices() {
        let a = SignedPauli::plus(PauliString::parse("XZ").unwrap());
        let b = SignedPauli::plus(PauliString::parse("YY").unwrap());
        let prod = a.mul(&b);
        let dense = a.matrix().mul(&b.matrix());
        assert!(dense.max_abs_diff(&prod.matrix()) < 1e-14);
    }

    #[test]
    fn support_and_weight() {
        let p = PauliString::parse("IXIZ").unwrap();
        assert_eq!(p.support(), vec![1, 3]);
        assert_eq!(p.weight(), 2);
        assert!(!p.is_identity());
        assert!(PauliString::identity(3).is_identity());
    }

    #[test]
    fn masks_use_qubit0_as_msb() {
        let p = PauliString::parse("XIY").unwrap();
        // qubit 0 -> bit 2, qubit 2 -> bit 0.
        assert_eq!(p.flip_mask(), 0b101);
        assert_eq!(p.sign_mask(), 0b001);
    }

    #[test]
    fn split_partitions_the_support() {
        let p = PauliString::parse("XYZI").unwrap();
        let split = p.split(&[1]);
        assert!(split.partitions(&p));
        assert_eq!(split.o1.to_string(), "XIZI");
        assert_eq!(split.o2.to_string(), "IYII");
    }
}
