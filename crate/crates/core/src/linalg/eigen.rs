//! Hermitian and unitary eigendecompositions.
//!
//! Hermitian input is diagonalized with cyclic complex Jacobi rotations. Unitary
//! input is reduced to a Hermitian problem: for generic real `t₁, t₂` the matrix
//! `t₁ (U + U†)/2 + t₂ (U − U†)/(2i)` has the same eigenvectors as `U` and
//! non-colliding eigenvalues. Collisions are detected by the reconstruction
//! residual and resolved by redrawing `(t₁, t₂)`.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;
const MAX_DRAWS: usize = 16;

/// Eigenvalues and orthonormal eigenvectors (columns of `vectors`).
///
/// `V` is real for Hermitian input and unit-modulus complex for unitary input.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition<T, V> {
    pub values: Vec<V>,
    pub vectors: Matrix<T>,
}

pub type HermitianEigen<T> = EigenDecomposition<T, T>;
pub type UnitaryEigen<T> = EigenDecomposition<T, Complex<T>>;

impl<T: Real> HermitianEigen<T> {
    /// `V diag(values) V†`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let d: Vec<_> = self.values.iter().map(|&x| Complex::new(x, T::zero())).collect();
        reconstruct(&self.vectors, &d)
    }
}

impl<T: Real> UnitaryEigen<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        reconstruct(&self.vectors, &self.values)
    }
}

fn reconstruct<T: Real>(v: &Matrix<T>, d: &[Complex<T>]) -> Matrix<T> {
    let n = v.n();
    Matrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * d[k] * v[(j, k)].conj()).sum()
    })
}

/// Relative reconstruction residual `max|A − V D V†| / (1 + max|A|)`.
pub fn relative_residual<T: Real>(a: &Matrix<T>, rebuilt: &Matrix<T>) -> T {
    a.max_abs_diff(rebuilt) / (T::one() + a.max_abs())
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
pub fn eig_hermitian<T: Real>(a: &Matrix<T>) -> Result<HermitianEigen<T>> {
    let dev = a.hermiticity_deviation();
    if dev > T::tol_structural() {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = a.n();
    // Work on the exactly Hermitian part.
    let half = T::lit(0.5);
    let mut m = Matrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()).scale(half));
    let mut v = Matrix::identity(n);

    let scale = frobenius(&m).max(T::min_positive_value());
    let target = T::epsilon() * scale;
    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&m);
        if off > target {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                off: off.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap_or(Ordering::Equal));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = Matrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

fn frobenius<T: Real>(m: &Matrix<T>) -> T {
    m.entries().iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn off_diagonal_norm<T: Real>(m: &Matrix<T>) -> T {
    let n = m.n();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation `m ← J† m J`, `v ← v J` annihilating `m[p][q]`, with
/// `J = [[c, s e^{iφ}], [−s e^{−iφ}, c]]` on the `(p, q)` plane and
/// `e^{iφ} = m[p][q] / |m[p][q]|`.
fn rotate<T: Real>(m: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let abs = apq.norm();
    if abs == T::zero() {
        return;
    }
    let n = m.n();
    let phase = apq / abs;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (T::lit(2.0) * abs);
    let t = if tau == T::zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let sp = phase.scale(s);
    let spc = sp.conj();

    // columns: m ← m J
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp.scale(c) - spc * mkq;
        m[(k, q)] = sp * mkp + mkq.scale(c);
    }
    // rows: m ← J† m
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk.scale(c) - sp * mqk;
        m[(q, k)] = spc * mpk + mqk.scale(c);
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)].im = T::zero();
    m[(q, q)].im = T::zero();

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.scale(c) - spc * vkq;
        v[(k, q)] = sp * vkp + vkq.scale(c);
    }
}

/// Principal angle of `z` in `[0, 2π)`.
pub fn principal_angle<T: Real>(z: Complex<T>) -> T {
    let two_pi = T::two_pi();
    let mut a = z.arg();
    if a < T::zero() {
        a += two_pi;
    }
    if a >= two_pi {
        a = T::zero();
    }
    a
}

/// Eigendecomposition of a unitary matrix.
///
/// Eigenvalues are sorted by principal angle in `[0, 2π)`, ties broken by the
/// lexicographic order of the eigenvector columns. `seed` drives the draws of the
/// Hermitian combination coefficients.
pub fn eig_unitary<T: Real>(u: &Matrix<T>, seed: u64) -> Result<UnitaryEigen<T>> {
    let dev = u.unitarity_deviation();
    if dev > T::lit(T::TOL.unitary_input) {
        return Err(Error::NotUnitary {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = u.n();
    let ud = u.adjoint();
    let re_part = (u + &ud).scale_real(T::lit(0.5));
    // (U − U†) / (2i) = −i (U − U†) / 2
    let im_part = (u - &ud).scale(Complex::new(T::zero(), T::lit(-0.5)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = T::infinity();
    for _ in 0..MAX_DRAWS {
        let t1 = T::lit(rng.random_range(-1.0..1.0));
        let t2 = T::lit(rng.random_range(-1.0..1.0));
        let h = &re_part.scale_real(t1) + &im_part.scale_real(t2);
        let eig = eig_hermitian(&h)?;
        let vecs = eig.vectors;
        let d = &(&vecs.adjoint() * u) * &vecs;
        let values: Vec<Complex<T>> = (0..n)
            .map(|k| {
                let z = d[(k, k)];
                let r = z.norm();
                if r > T::zero() {
                    z / r
                } else {
                    Complex::one()
                }
            })
            .collect();
        let residual = relative_residual(u, &reconstruct(&vecs, &values));
        if residual <= T::tol_reconstruction() {
            return Ok(sort_unitary(values, vecs));
        }
        best = best.min(residual);
    }
    Err(Error::RetryExhausted {
        attempts: MAX_DRAWS,
        residual: best.to_f64().unwrap_or(f64::NAN),
    })
}

fn sort_unitary<T: Real>(values: Vec<Complex<T>>, vecs: Matrix<T>) -> UnitaryEigen<T> {
    let n = values.len();
    let angles: Vec<T> = values.iter().map(|&z| principal_angle(z)).collect();
    let cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| vecs.column(j)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        angles[i]
            .partial_cmp(&angles[j])
            .unwrap_or(Ordering::Equal)
            .then_with(|| lex_cmp(&cols[i], &cols[j]))
    });
    EigenDecomposition {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: Matrix::from_fn(n, |i, j| cols[order[j]][i]),
    }
}

fn lex_cmp<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x
            .re
            .partial_cmp(&y.re)
            .unwrap_or(Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}
