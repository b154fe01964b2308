//! Minimal dense complex linear algebra.

mod eigen;
mod matrix;
mod random;

pub use eigen::{
    eig_hermitian, eig_unitary, principal_angle, relative_residual, EigenDecomposition,
    HermitianEigen, UnitaryEigen,
};
pub use matrix::{matmul, trace_abs, Matrix};
pub use random::{qr_decompose, random_unitary, random_unitary_with};

use num_complex::Complex;

use crate::error::Result;
use crate::scalar::Real;

/// `e^{−i H t}` for Hermitian `H`, via its eigendecomposition.
pub fn expm_hermitian_scaled<T: Real>(h: &Matrix<T>, t: T) -> Result<Matrix<T>> {
    let eig = eig_hermitian(h)?;
    let phases: Vec<Complex<T>> = eig
        .values
        .iter()
        .map(|&e| Complex::from_polar(T::one(), -e * t))
        .collect();
    let n = h.n();
    let v = &eig.vectors;
    Ok(Matrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum()
    }))
}

/// `V diag(levels) V†`: the Hermitian operator with the given spectrum in the basis
/// given by the columns of `V`.
pub fn hermitian_from_spectrum<T: Real>(basis: &Matrix<T>, levels: &[T]) -> Result<Matrix<T>> {
    Matrix::diagonal_real(levels).conjugate_by(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn expm_at_zero_is_identity() {
        let v = random_unitary::<f64>(4, 1).unwrap();
        let h = hermitian_from_spectrum(&v, &[0.3, -1.0, 2.0, 7.0]).unwrap();
        let u = expm_hermitian_scaled(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&Matrix::identity(4)) < 1e-12);
    }

    #[test]
    fn expm_diagonal_case() {
        let u = expm_hermitian_scaled(&Matrix::diagonal_real(&[0.0, PI]), 1.0).unwrap();
        assert!(u.max_abs_diff(&Matrix::diagonal_real(&[1.0, -1.0])) < 1e-15);
    }

    #[test]
    fn expm_semigroup() {
        for seed in 0..10u64 {
            let n = 2 + (seed as usize % 6);
            let v = random_unitary::<f64>(n, seed).unwrap();
            let levels: Vec<f64> = (0..n).map(|k| (k as f64 * 1.7 + seed as f64).sin() * 4.0).collect();
            let h = hermitian_from_spectrum(&v, &levels).unwrap();
            let (t1, t2) = (0.37 + seed as f64 * 0.1, 1.21);
            let a = expm_hermitian_scaled(&h, t1).unwrap();
            let b = expm_hermitian_scaled(&h, t2).unwrap();
            let ab = expm_hermitian_scaled(&h, t1 + t2).unwrap();
            assert!((&a * &b).max_abs_diff(&ab) < 1e-9);
            assert!(ab.is_unitary(1e-9));
        }
    }

    #[test]
    fn trace_saturates_only_for_scalar_generator() {
        let v = random_unitary::<f64>(5, 2).unwrap();
        let h = hermitian_from_spectrum(&v, &[1.3; 5]).unwrap();
        let u = expm_hermitian_scaled(&h, 0.9).unwrap();
        assert!((trace_abs(&u) - 5.0).abs() < 1e-10);

        let h = hermitian_from_spectrum(&v, &[1.3, 1.3, 1.3, 1.3, 2.0]).unwrap();
        let u = expm_hermitian_scaled(&h, 0.9).unwrap();
        assert!(trace_abs(&u) < 5.0 - 1e-3);
    }

    #[test]
    fn eig_unitary_recovers_generator_phases() {
        for seed in 0..20u64 {
            let n = 2 + (seed as usize % 7);
            let v = random_unitary::<f64>(n, 500 + seed).unwrap();
            let levels: Vec<f64> = (0..n).map(|k| ((k + 1) as f64 * 2.3 + seed as f64).cos() * 5.0).collect();
            let t = 1.3;
            let u = expm_hermitian_scaled(&hermitian_from_spectrum(&v, &levels).unwrap(), t).unwrap();
            let eig = eig_unitary(&u, seed).unwrap();
            let mut expected: Vec<Complex<f64>> =
                levels.iter().map(|&e| Complex::from_polar(1.0, -e * t)).collect();
            // match each computed eigenvalue to a distinct expected one
            for z in &eig.values {
                let (idx, d) = expected
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i, (w - z).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(d < 1e-8, "seed {seed}: unmatched eigenvalue, distance {d:e}");
                expected.swap_remove(idx);
            }
        }
    }

    #[test]
    fn fourier_four_determinant_and_residual() {
        let n = 4;
        let f = Matrix::<f64>::from_fn(n, |k, l| {
            Complex::from_polar(0.5, 2.0 * PI * (k * l) as f64 / n as f64)
        });
        let eig = eig_unitary(&f, 3).unwrap();
        assert!(relative_residual(&f, &eig.reconstruct()) <= 1e-9);
        let prod: Complex<f64> = eig.values.iter().product();
        assert!((prod - determinant(&f)).norm() < 1e-9);
    }

    // Gaussian elimination with partial pivoting, independent of the eigensolver.
    fn determinant(a: &Matrix<f64>) -> Complex<f64> {
        let n = a.n();
        let mut m: Vec<Vec<Complex<f64>>> = (0..n).map(|i| a.row(i).to_vec()).collect();
        let mut det = Complex::new(1.0, 0.0);
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| m[i][c].norm().partial_cmp(&m[j][c].norm()).unwrap()).unwrap();
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c];
            det *= pivot;
            for r in c + 1..n {
                let f = m[r][c] / pivot;
                for k in c..n {
                    let x = m[c][k];
                    m[r][k] -= f * x;
                }
            }
        }
        det
    }
}
