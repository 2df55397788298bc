//! Bridge to nalgebra for Hermitian eigendecomposition, QR, and Cholesky.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64 as C64;

use crate::tensor::matrix::ComplexMatrix;

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

fn from_nalgebra(m: &DMatrix<Complex<f64>>) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.set(i, j, m[(i, j)]);
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in descending order (stable with respect to the
/// solver's original ordering on exact ties) and the matching eigenvectors as
/// matrix columns. Each eigenvector's global phase is fixed by making its
/// largest-magnitude component real and positive, so results are
/// deterministic for a given input.
pub fn eigh(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    assert_eq!(m.rows(), m.cols());
    let d = m.rows();
    let dm = to_nalgebra(m);
    let eig = dm.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut values = Vec::with_capacity(d);
    let mut vectors = ComplexMatrix::zeros(d, d);
    for (col, &idx) in order.iter().enumerate() {
        values.push(eig.eigenvalues[idx]);
        // Phase fix: largest-|amp| component becomes real positive.
        let mut best = 0usize;
        let mut best_norm = -1.0f64;
        for r in 0..d {
            let n = eig.eigenvectors[(r, idx)].norm();
            if n > best_norm + 1e-15 {
                best_norm = n;
                best = r;
            }
        }
        let pivot = eig.eigenvectors[(best, idx)];
        let phase = if pivot.norm() > 0.0 {
            pivot.conj() / pivot.norm()
        } else {
            Complex::new(1.0, 0.0)
        };
        for r in 0..d {
            vectors.set(r, col, eig.eigenvectors[(r, idx)] * phase);
        }
    }
    (values, vectors)
}

/// Positivity witness: whether `m + tol*I` admits a Cholesky factorization
/// with strictly positive real pivots. (nalgebra's generic Cholesky would
/// happily take complex square roots of negative pivots, so the pivot check
/// is done by hand here.)
pub fn is_psd_within(m: &ComplexMatrix, tol: f64) -> bool {
    let d = m.rows();
    let mut a: Vec<C64> = m.data().to_vec();
    for i in 0..d {
        a[i * d + i] += C64::new(tol, 0.0);
    }
    let mut l = vec![C64::new(0.0, 0.0); d * d];
    for j in 0..d {
        let mut pivot = a[j * d + j];
        for k in 0..j {
            pivot -= l[j * d + k] * l[j * d + k].conj();
        }
        if pivot.re <= 0.0 || pivot.im.abs() > tol.max(1e-12) {
            return false;
        }
        let ljj = pivot.re.sqrt();
        l[j * d + j] = C64::new(ljj, 0.0);
        for i in (j + 1)..d {
            let mut v = a[i * d + j];
            for k in 0..j {
                v -= l[i * d + k] * l[j * d + k].conj();
            }
            l[i * d + j] = v / ljj;
        }
    }
    true
}

/// QR decomposition returning (Q, diag(R)).
pub fn qr_unitary(m: &ComplexMatrix) -> (ComplexMatrix, Vec<C64>) {
    let dm = to_nalgebra(m);
    let qr = dm.qr();
    let q = qr.q();
    let r = qr.r();
    let diag = (0..r.ncols().min(r.nrows())).map(|i| r[(i, i)]).collect();
    (from_nalgebra(&q), diag)
}
