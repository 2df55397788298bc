//! Dense complex matrices and the fixed gate alphabet.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A dense, row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice; panics if the length does not match.
    pub fn from_rows(rows: usize, cols: usize, data: &[C64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Self {
            rows,
            cols,
            data: data.to_vec(),
        }
    }

    /// Build from a row-major slice of real values.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        let data = data.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    /// Kronecker product: `(i1*rb+i2, j1*cb+j2) = a[i1,j1] * b[i2,j2]`.
    pub fn kron(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * b.rows, self.cols * b.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..b.rows {
                    let out_row = (i1 * b.rows + i2) * out.cols;
                    let b_row = i2 * b.cols;
                    for j2 in 0..b.cols {
                        out.data[out_row + j1 * b.cols + j2] = a * b.data[b_row + j2];
                    }
                }
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let rhs_row = k * rhs.cols;
                let out_row = i * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[out_row + j] += a * rhs.data[rhs_row + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scaled(&self, factor: C64) -> ComplexMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add_scaled_in_place(&mut self, rhs: &ComplexMatrix, factor: C64) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += factor * b;
        }
    }

    pub fn trace(&self) -> C64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `max |U^dag U - I|`, the unitarity residual.
    pub fn unitarity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        self.dagger()
            .mul(self)
            .max_abs_diff(&ComplexMatrix::identity(self.rows))
    }

    pub fn expect_unitary(&self, tol: f64) -> Result<()> {
        let residual = self.unitarity_residual();
        if residual < tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { residual })
        }
    }

    /// Matrix power by repeated multiplication (small exponents).
    pub fn pow(&self, n: usize) -> ComplexMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = ComplexMatrix::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    // -- the fixed gate alphabet ------------------------------------------

    pub fn sigma_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn sigma_y() -> Self {
        Self::from_rows(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        )
    }

    pub fn sigma_z() -> Self {
        Self::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
    }

    pub fn hadamard() -> Self {
        Self::from_real(
            2,
            2,
            &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        )
    }

    /// Phase gate S = diag(1, i).
    pub fn s_gate() -> Self {
        Self::from_rows(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 1.0),
            ],
        )
    }

    /// Controlled version of a single- or multi-qubit unitary; the control
    /// is the first (most significant) qubit of the result.
    pub fn controlled(u: &ComplexMatrix) -> Self {
        assert_eq!(u.rows, u.cols);
        let d = u.rows;
        let mut m = ComplexMatrix::identity(2 * d);
        for i in 0..d {
            for j in 0..d {
                m.set(d + i, d + j, u.get(i, j));
            }
        }
        m
    }

    pub fn cx() -> Self {
        Self::controlled(&Self::sigma_x())
    }

    pub fn cz() -> Self {
        Self::controlled(&Self::sigma_z())
    }

    pub fn swap() -> Self {
        Self::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
    }

    /// CSWAP on (control, a, b) with the control as qubit 0.
    pub fn cswap() -> Self {
        Self::controlled(&Self::swap())
    }
}
