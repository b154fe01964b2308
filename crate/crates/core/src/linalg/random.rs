use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Haar-random `n × n` unitary, deterministic in `seed`.
///
/// QR of a matrix of standard complex Gaussians (`E|z|² = 1`), with the columns
/// of `Q` multiplied by the phases of `R`'s diagonal so that the result is
/// Haar distributed.
pub fn random_unitary<T: Real>(n: usize, seed: u64) -> Result<Matrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_with(n, &mut rng)
}

/// As [`random_unitary`], drawing from a caller-supplied generator.
pub fn random_unitary_with<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Matrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Matrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(T::lit(re * s), T::lit(im * s))
    });
    let (mut q, r) = qr_decompose(&z);
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > T::zero() {
            let phase = d / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    Ok(q)
}

/// Thin QR of a square matrix by Gram-Schmidt with one reorthogonalization pass.
///
/// `R` is upper triangular with a real non-negative diagonal.
pub fn qr_decompose<T: Real>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let n = a.n();
    let mut q = Matrix::<T>::zeros(n);
    let mut r = Matrix::<T>::zeros(n);
    for j in 0..n {
        let mut v = a.column(j);
        for _ in 0..2 {
            for i in 0..j {
                let c: Complex<T> = (0..n).map(|k| q[(k, i)].conj() * v[k]).sum();
                for (k, vk) in v.iter_mut().enumerate() {
                    *vk -= c * q[(k, i)];
                }
                r[(i, j)] += c;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        r[(j, j)] = Complex::new(norm, T::zero());
        for (k, vk) in v.into_iter().enumerate() {
            q[(k, j)] = if norm.is_zero() { Complex::zero() } else { vk / norm };
        }
    }
    (q, r)
}
