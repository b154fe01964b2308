//! Named unitaries with closed-form traces: Fourier, Grover, permutations,
//! Hadamard tensor powers, the general qubit gate and the two qutrit MUB families.
//!
//! Note on permutations: the MT bound for a permutation with `m` fixed points is
//! `sqrt(1 − m²/N²)/ΔE`, computed here (like every other bound) from
//! `TraceInput::new(N, m)`. A `sqrt(1 + m²/N²)` form sometimes quoted for this case
//! does not follow from the general MT bound and is not used.

use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bounds::ml_factor;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

const MAX_HADAMARD_POWER: usize = 10;

fn root_of_unity<T: Real>(n: usize, k: usize) -> Complex<T> {
    let angle = T::two_pi() * T::from_usize(k % n).unwrap() / T::from_usize(n).unwrap();
    Complex::from_polar(T::one(), angle)
}

fn nf<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("dimension fits the scalar")
}

/// `F[k][l] = ω^{kl} / √n`, `ω = e^{2πi/n}`.
pub fn fourier<T: Real>(n: usize) -> Result<Matrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let norm = nf::<T>(n).sqrt().recip();
    Ok(Matrix::from_fn(n, |k, l| root_of_unity::<T>(n, k * l).scale(norm)))
}

/// Closed form of `|tr F_n|` from the quadratic Gauss sum.
pub fn gauss_trace<T: Real>(n: usize) -> T {
    match n % 4 {
        0 => T::SQRT_2(),
        2 => T::zero(),
        _ => T::one(),
    }
}

/// Grover iterate `G = (2|s⟩⟨s| − I)(I − 2|ω⟩⟨ω|)`, `|s⟩` uniform, `|ω⟩ = |target⟩`.
pub fn grover<T: Real>(n: usize, target: usize) -> Result<Matrix<T>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if target >= n {
        return Err(Error::InvalidArgument(format!(
            "target {target} out of range for n = {n}"
        )));
    }
    let two_over_n = T::lit(2.0) / nf::<T>(n);
    Ok(Matrix::from_fn(n, |i, k| {
        let diffusion = if i == k { two_over_n - T::one() } else { two_over_n };
        let oracle = if k == target { -T::one() } else { T::one() };
        Complex::new(diffusion * oracle, T::zero())
    }))
}

/// `|n − 4 + 4/n|`
pub fn grover_trace<T: Real>(n: usize) -> T {
    let x = nf::<T>(n);
    (x - T::lit(4.0) + T::lit(4.0) / x).abs()
}

/// Permutation matrix with `P[perm[j]][j] = 1`.
pub fn permutation<T: Real>(perm: &[usize]) -> Result<Matrix<T>> {
    let n = perm.len();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a bijection on 0..{n}"
            )));
        }
        seen[p] = true;
    }
    let mut m = Matrix::zeros(n);
    for (j, &p) in perm.iter().enumerate() {
        m[(p, j)] = Complex::one();
    }
    Ok(m)
}

pub fn fixed_points(perm: &[usize]) -> usize {
    perm.iter().enumerate().filter(|&(j, &p)| j == p).count()
}

/// `H^{⊗q}`, dimension `2^q`, `1 ≤ q ≤ 10`.
pub fn hadamard_power<T: Real>(q: usize) -> Result<Matrix<T>> {
    if q == 0 || q > MAX_HADAMARD_POWER {
        return Err(Error::InvalidArgument(format!(
            "Hadamard power must be in 1..={MAX_HADAMARD_POWER}, got {q}"
        )));
    }
    let s = T::FRAC_1_SQRT_2();
    let h = Matrix::from_fn(2, |i, j| {
        Complex::new(if i == 1 && j == 1 { -s } else { s }, T::zero())
    });
    Ok((1..q).fold(h.clone(), |acc, _| acc.kron(&h)))
}

/// Parameters of the general qubit gate
/// `e^{iφ} [[e^{iα} cos θ, e^{iβ} sin θ], [−e^{−iβ} sin θ, e^{−iα} cos θ]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitParams<T> {
    pub phi: T,
    pub alpha: T,
    pub beta: T,
    pub theta: T,
}

impl<T: Real> QubitParams<T> {
    pub fn new(phi: T, alpha: T, beta: T, theta: T) -> Result<Self> {
        if [phi, alpha, beta, theta].iter().all(|x| x.is_finite()) {
            Ok(Self { phi, alpha, beta, theta })
        } else {
            Err(Error::InvalidArgument("qubit parameters must be finite".into()))
        }
    }

    /// `2 |cos θ cos α|`
    pub fn trace_abs(&self) -> T {
        T::lit(2.0) * (self.theta.cos() * self.alpha.cos()).abs()
    }
}

pub fn qubit_unitary<T: Real>(p: &QubitParams<T>) -> Matrix<T> {
    let (c, s) = (p.theta.cos(), p.theta.sin());
    let e = |a: T| Complex::from_polar(T::one(), a);
    let g = e(p.phi);
    let rows = [
        [e(p.alpha).scale(c), e(p.beta).scale(s)],
        [-e(-p.beta).scale(s), e(-p.alpha).scale(c)],
    ];
    Matrix::from_fn(2, |i, j| g * rows[i][j])
}

/// Exact `E·T` for the qubit gate: `arccos(|tr U| / 2)`.
pub fn qubit_exact_time<T: Real>(p: &QubitParams<T>) -> T {
    qubit_exact_time_from_trace(p.trace_abs())
}

pub fn qubit_exact_time_from_trace<T: Real>(trace_abs: T) -> T {
    (trace_abs / T::lit(2.0)).max(T::zero()).min(T::one()).acos()
}

/// The two disjoint families of qutrit unitaries mapping the computational basis
/// to a mutually unbiased basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QutritFamily {
    /// rows `(1, ω̄, ω)`, `(1, ω, ω̄)` below the first
    One,
    /// rows `(1, ω, ω̄)`, `(1, ω̄, ω)` below the first
    Two,
}

impl QutritFamily {
    // entry (k, l) carries ω^{sign·k·l}
    fn exponent(self, k: usize, l: usize) -> usize {
        let kl = (k * l) % 3;
        match self {
            QutritFamily::One => (3 - kl) % 3,
            QutritFamily::Two => kl,
        }
    }
}

/// Reduced two-parameter qutrit MUB gate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QutritMubParams<T> {
    pub family: QutritFamily,
    pub x: T,
    pub y: T,
}

/// `(1/√3) [ω^{±kl} e^{i c_l}]` with column phases `c = (0, x, y)`.
pub fn qutrit_mub<T: Real>(p: &QutritMubParams<T>) -> Matrix<T> {
    let cols = [T::zero(), p.x, p.y];
    let norm = T::lit(3.0).sqrt().recip();
    Matrix::from_fn(3, |k, l| {
        root_of_unity::<T>(3, p.family.exponent(k, l)) * Complex::from_polar(norm, cols[l])
    })
}

/// Five-parameter form `(1/√3) [e^{iφ_k} e^{−i a_l} ω^{±kl}]`, `a = (0, α, β)`.
pub fn qutrit_mub_full<T: Real>(phis: [T; 3], alpha: T, beta: T, family: QutritFamily) -> Matrix<T> {
    let a = [T::zero(), alpha, beta];
    let norm = T::lit(3.0).sqrt().recip();
    Matrix::from_fn(3, |k, l| {
        root_of_unity::<T>(3, family.exponent(k, l)) * Complex::from_polar(norm, phis[k] - a[l])
    })
}

/// Removes the row phases of the five-parameter form.
///
/// Returns `(reduced, φ₁, V)` with `V = diag(1, e^{i(φ₁−φ₂)}, e^{i(φ₁−φ₃)})` such that
/// `e^{iφ₁} V† U_reduced V` equals [`qutrit_mub_full`]. The column phases of the
/// reduced gate absorb the relative row phases: `x = φ₂ − φ₁ − α`, `y = φ₃ − φ₁ − β`.
pub fn qutrit_phase_reduce<T: Real>(
    phis: [T; 3],
    alpha: T,
    beta: T,
    family: QutritFamily,
) -> (QutritMubParams<T>, T, Matrix<T>) {
    let [p1, p2, p3] = phis;
    let reduced = QutritMubParams {
        family,
        x: p2 - p1 - alpha,
        y: p3 - p1 - beta,
    };
    let conj = Matrix::diagonal_phases(&[T::zero(), p1 - p2, p1 - p3]);
    (reduced, p1, conj)
}

/// `|tr U| ≤ √n` for any gate mapping the computational basis to an unbiased one.
pub fn mub_trace_cap<T: Real>(n: usize) -> T {
    nf::<T>(n).sqrt()
}

/// Dimensionless ML bound on `E·T` at the MUB trace cap,
/// `(π/2)(1 − sqrt(1 + 4/π²)/√n)`.
pub fn mub_ml_factor<T: Real>(n: usize) -> T {
    ml_factor(mub_trace_cap::<T>(n) / nf::<T>(n))
}

/// Earlier MUB-transition bound on `E·T`: `2π/9` for `n = 3`, `π(n−1)/(4n)` for `n ≥ 4`.
pub fn prior_mub_bound<T: Real>(n: usize) -> Result<T> {
    match n {
        0..=2 => Err(Error::InvalidDimension(n)),
        3 => Ok(T::lit(2.0) * T::PI() / T::lit(9.0)),
        _ => {
            let x = nf::<T>(n);
            Ok(T::PI() * (x - T::one()) / (T::lit(4.0) * x))
        }
    }
}
