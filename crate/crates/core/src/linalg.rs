//! Small dense complex linear algebra used by the oracles and the exact path.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Largest register realized as a dense matrix (4096 x 4096).
pub const MAX_DENSE_QUBITS: usize = 12;

/// `exp(i * t * h)` for Hermitian `h`, via eigendecomposition.
///
/// The caller is responsible for `h` being Hermitian; only its lower
/// triangle is read.
pub fn expm_i_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let phases = eig.eigenvalues.map(|lambda| Complex64::from_polar(1.0, t * lambda));
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    scaled * v.adjoint()
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Max elementwise deviation of `m m^dagger` from the identity.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let prod = m * m.adjoint();
    max_abs_diff(&prod, &CMatrix::identity(m.nrows(), m.ncols()))
}

pub fn check_unitary(m: &CMatrix, tol: f64) -> Result<()> {
    let dev = unitarity_deviation(m);
    if dev > tol {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// Phase-insensitive overlap `|tr(U^dagger V)| / dim` of two unitaries.
pub fn unitary_fidelity(u: &CMatrix, v: &CMatrix) -> f64 {
    assert_eq!(u.shape(), v.shape(), "shape mismatch");
    let tr: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    tr.norm() / u.nrows() as f64
}

/// Reorders a `2^w`-dimensional operator into another basis order:
/// `out[(i, j)] = m[(order[i], order[j])]`.
pub fn permute(m: &CMatrix, order: &[usize]) -> CMatrix {
    CMatrix::from_fn(order.len(), order.len(), |i, j| m[(order[i], order[j])])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let h = CMatrix::zeros(4, 4);
        let u = expm_i_hermitian(&h, 1.3);
        assert!(max_abs_diff(&u, &CMatrix::identity(4, 4)) < 1e-15);
    }

    #[test]
    fn expm_of_pauli_x_closed_form() {
        // exp(i t X) = cos t I + i sin t X
        let x = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let t = 0.37;
        let u = expm_i_hermitian(&x, t);
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos(), 0.0), c(0.0, t.sin()), c(0.0, t.sin()), c(t.cos(), 0.0)],
        );
        assert!(max_abs_diff(&u, &expected) < 1e-15);
    }

    #[test]
    fn expm_of_complex_hermitian() {
        // Y has complex entries; exp(i t Y) = cos t I + i sin t Y = [[c, s], [-s, c]]
        let y = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let t = -1.1;
        let u = expm_i_hermitian(&y, t);
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos(), 0.0), c(t.sin(), 0.0), c(-t.sin(), 0.0), c(t.cos(), 0.0)],
        );
        assert!(max_abs_diff(&u, &expected) < 1e-14);
        assert!(unitarity_deviation(&u) < 1e-14);
    }

    #[test]
    fn check_unitary_rejects_scaled_identity() {
        let m = CMatrix::identity(2, 2) * c(1.1, 0.0);
        assert!(matches!(check_unitary(&m, 1e-10), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let u = CMatrix::identity(4, 4);
        let v = &u * Complex64::from_polar(1.0, 0.9);
        assert!((unitary_fidelity(&u, &v) - 1.0).abs() < 1e-15);
    }
}
