//! Exact energy-time products of a unitary from its eigenphases.
//!
//! `U = e^{−iHT}` fixes each `E_k T` only modulo `2π`. Given the sorted principal
//! phases `φ_0 ≤ … ≤ φ_{n−1}` in `[0, 2π)`, the canonical branch assignments are
//! the `n` cyclic windows
//!
//! ```text
//! θ^{(j)} = (φ_j, …, φ_{n−1}, φ_0 + 2π, …, φ_{j−1} + 2π)
//! ```
//!
//! each choosing `φ_j` as the ground level. Any other integer branch vector,
//! shifted so its lowest level lies in `[0, 2π)`, is one of these windows with `2π`
//! added to some levels. That never lowers `E·T = mean − min` or `δE·T = max − min`;
//! `(E_max − Ē)·T` follows by reflecting `θ ↦ −θ`, which maps windows to windows.
//! For `ΔE·T`, moving a level lying more than `π` above the
//! mean down by `2π` lowers the variance, so the minimizer spans less than `2π` and
//! is again a window. The minima over the windows are therefore the minima over
//! all Hamiltonians sharing the eigenvectors of `U` that produce `U` at time `T`. The
//! test suites cross-check this against brute force over offsets `{0, 1, 2}^n`.
//!
//! Every window is itself a valid generator, so the bounds must hold for every
//! record, not just for the minimum.

use serde::Serialize;

use crate::bounds::{DimensionlessBounds, TraceInput};
use crate::error::{Error, Result};
use crate::linalg::{eig_unitary, principal_angle, trace_abs, Matrix};
use crate::scalar::Real;
use crate::spectrum::{compute_stats, Spectrum};

/// Sorted principal eigenphases in `[0, 2π)`, `λ_k = e^{−iφ_k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseVector<T> {
    phases: Vec<T>,
}

impl<T: Real> PhaseVector<T> {
    pub fn new(mut phases: Vec<T>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidPhases("empty".into()));
        }
        let two_pi = T::two_pi();
        if let Some(p) = phases
            .iter()
            .find(|&&p| !p.is_finite() || p < T::zero() || p >= two_pi)
        {
            return Err(Error::InvalidPhases(format!("{p} outside [0, 2π)")));
        }
        phases.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        Ok(Self { phases })
    }

    /// Reduces arbitrary reals modulo `2π` first.
    pub fn from_unreduced(phases: &[T]) -> Result<Self> {
        let two_pi = T::two_pi();
        let reduced = phases
            .iter()
            .map(|&p| {
                let mut r = p % two_pi;
                if r < T::zero() {
                    r += two_pi;
                }
                if r >= two_pi {
                    r = T::zero();
                }
                r
            })
            .collect();
        Self::new(reduced)
    }

    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Energy-time products of one canonical window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotationRecord<T> {
    /// index of the phase taken as ground level
    pub start: usize,
    /// `E·T`
    pub e_t: T,
    /// `ΔE·T`
    pub var_t: T,
    /// `δE·T`
    pub width_t: T,
    /// `(E_max − Ē)·T`
    pub dual_t: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactTimeProfile<T> {
    pub rotations: Vec<RotationRecord<T>>,
    pub min_e_t: T,
    pub min_var_t: T,
    pub min_width_t: T,
    pub min_dual_t: T,
}

/// Principal eigenphases of a unitary. `seed` is forwarded to [`eig_unitary`].
pub fn eigenphases<T: Real>(u: &Matrix<T>, seed: u64) -> Result<PhaseVector<T>> {
    let eig = eig_unitary(u, seed)?;
    // λ = e^{−iφ}  ⇒  φ = arg(λ̄)
    let phases = eig.values.iter().map(|z| principal_angle(z.conj())).collect();
    PhaseVector::new(phases)
}

/// Phases closer than this are treated as one degenerate level when picking the
/// window start, so that each window spans strictly less than `2π`.
fn group_tol<T: Real>() -> T {
    T::epsilon() * T::lit(16.0) * T::two_pi()
}

pub fn enumerate_rotations<T: Real>(p: &PhaseVector<T>) -> ExactTimeProfile<T> {
    let phi = &p.phases;
    let n = phi.len();
    let two_pi = T::two_pi();
    let tol = group_tol::<T>();

    let mut rotations = Vec::with_capacity(n);
    let mut cache: Option<(usize, RotationRecord<T>)> = None;
    for j in 0..n {
        let mut start = j;
        while start > 0 && phi[start] - phi[start - 1] <= tol {
            start -= 1;
        }
        let rec = match cache {
            Some((s, rec)) if s == start => rec,
            _ => {
                let theta: Vec<T> = phi[start..]
                    .iter()
                    .copied()
                    .chain(phi[..start].iter().map(|&x| x + two_pi))
                    .collect();
                let st = compute_stats(&Spectrum::new(theta).expect("finite phases"));
                RotationRecord {
                    start,
                    e_t: st.e_above_ground,
                    var_t: st.variance_sqrt,
                    width_t: st.width,
                    dual_t: st.e_below_top,
                }
            }
        };
        cache = Some((start, rec));
        rotations.push(RotationRecord { start: j, ..rec });
    }

    let min_of = |f: fn(&RotationRecord<T>) -> T| rotations.iter().map(f).fold(T::infinity(), T::min);
    ExactTimeProfile {
        min_e_t: min_of(|r| r.e_t),
        min_var_t: min_of(|r| r.var_t),
        min_width_t: min_of(|r| r.width_t),
        min_dual_t: min_of(|r| r.dual_t),
        rotations,
    }
}

/// Signed slack `product − bound` for each bound form; negative means violated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Margins<T> {
    pub ml: T,
    pub mt: T,
    pub dual_ml: T,
    pub width_ml: T,
    pub width_mt: T,
}

impl<T: Real> Margins<T> {
    pub fn infinite() -> Self {
        let inf = T::infinity();
        Self { ml: inf, mt: inf, dual_ml: inf, width_ml: inf, width_mt: inf }
    }

    pub fn min(&self) -> T {
        self.ml.min(self.mt).min(self.dual_ml).min(self.width_ml).min(self.width_mt)
    }

    /// Component-wise minimum.
    pub fn meet(&self, o: &Self) -> Self {
        Self {
            ml: self.ml.min(o.ml),
            mt: self.mt.min(o.mt),
            dual_ml: self.dual_ml.min(o.dual_ml),
            width_ml: self.width_ml.min(o.width_ml),
            width_mt: self.width_mt.min(o.width_mt),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord<T> {
    pub n: usize,
    pub trace_abs: T,
    pub bounds: DimensionlessBounds<T>,
    pub profile: ExactTimeProfile<T>,
    /// worst margin over all rotations, per bound form
    pub worst: Margins<T>,
    pub pass: bool,
}

/// Worst per-form margins of a profile against dimensionless bounds.
pub fn profile_margins<T: Real>(profile: &ExactTimeProfile<T>, d: &DimensionlessBounds<T>) -> Margins<T> {
    profile.rotations.iter().fold(Margins::infinite(), |acc, r| {
        acc.meet(&Margins {
            ml: r.e_t - d.ml,
            mt: r.var_t - d.mt,
            dual_ml: r.dual_t - d.ml,
            width_ml: r.width_t - d.width_ml,
            width_mt: r.width_t - d.width_mt,
        })
    })
}

/// Checks every bound form against every canonical window of `u`.
pub fn verify_dominance<T: Real>(u: &Matrix<T>, seed: u64) -> Result<VerificationRecord<T>> {
    let phases = eigenphases(u, seed)?;
    let n = u.n();
    let t = TraceInput::new(n, trace_abs(u))?;
    let bounds = DimensionlessBounds::new(&t);
    let profile = enumerate_rotations(&phases);
    let worst = profile_margins(&profile, &bounds);
    Ok(VerificationRecord {
        n,
        trace_abs: t.trace_abs(),
        bounds,
        pass: worst.min() >= -T::tol_dominance(),
        worst,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fourier;
    use crate::linalg::{expm_hermitian_scaled, hermitian_from_spectrum, random_unitary};
    use num_complex::Complex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn pv(v: &[f64]) -> PhaseVector<f64> {
        PhaseVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phase_vector_validation() {
        assert!(PhaseVector::<f64>::new(vec![]).is_err());
        assert!(PhaseVector::new(vec![TAU]).is_err());
        assert!(PhaseVector::new(vec![-0.1]).is_err());
        assert_eq!(pv(&[3.0, 1.0]).phases(), &[1.0, 3.0]);
        let p = PhaseVector::from_unreduced(&[-0.5, 7.0]).unwrap();
        assert!((p.phases()[0] - (7.0 - TAU)).abs() < 1e-15);
        assert!((p.phases()[1] - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn eigenphases_examples() {
        let p = eigenphases(&Matrix::<f64>::identity(3), 0).unwrap();
        assert!(p.phases().iter().all(|&x| x == 0.0));
        let p = eigenphases(&Matrix::<f64>::diagonal_real(&[1.0, -1.0]), 0).unwrap();
        assert!(p.phases()[0].abs() < 1e-15 && (p.phases()[1] - PI).abs() < 1e-15);
        let d: Vec<Complex<f64>> = [0.3, 2.0, 5.0].iter().map(|&t| Complex::from_polar(1.0, -t)).collect();
        let p = eigenphases(&Matrix::diagonal(&d), 1).unwrap();
        for (a, b) in p.phases().iter().zip([0.3, 2.0, 5.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn two_level_half_turn() {
        let prof = enumerate_rotations(&pv(&[0.0, PI]));
        assert_eq!(prof.rotations.len(), 2);
        for r in &prof.rotations {
            assert!((r.e_t - FRAC_PI_2).abs() < 1e-15);
        }
        assert!((prof.min_e_t - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn all_zero_phases() {
        let prof = enumerate_rotations(&pv(&[0.0; 4]));
        for r in &prof.rotations {
            assert_eq!((r.e_t, r.var_t, r.width_t, r.dual_t), (0.0, 0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn symmetric_three_level() {
        let prof = enumerate_rotations(&pv(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0]));
        // θ = (0, 2π/3, 4π/3): mean 2π/3, population variance (2π/3)²·2/3
        let var = (TAU / 3.0) * (2.0f64 / 3.0).sqrt();
        for r in &prof.rotations {
            assert!((r.e_t - TAU / 3.0).abs() < 1e-12);
            assert!((r.var_t - var).abs() < 1e-12);
            assert!((r.width_t - 2.0 * TAU / 3.0).abs() < 1e-12);
        }
        assert!((prof.min_e_t - prof.rotations[1].e_t).abs() < 1e-12);
    }

    #[test]
    fn repeated_phases_keep_window_below_two_pi() {
        let prof = enumerate_rotations(&pv(&[0.0, 0.0, 1.0, 1.0, 1.0, 4.0]));
        for r in &prof.rotations {
            assert!(r.width_t < TAU);
            assert!((r.e_t + r.dual_t - r.width_t).abs() < 1e-12);
        }
        assert_eq!(prof.rotations[3].e_t, prof.rotations[2].e_t);
    }

    #[test]
    fn dominance_examples() {
        let rec = verify_dominance(&Matrix::<f64>::diagonal_real(&[1.0, -1.0]), 0).unwrap();
        assert!(rec.pass);
        assert!(rec.worst.ml.abs() < 1e-12, "ML is tight here: {:?}", rec.worst);

        let rec = verify_dominance(&Matrix::<f64>::identity(3), 0).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.bounds.ml, 0.0);
        assert_eq!(rec.bounds.mt, 0.0);
        assert_eq!(rec.profile.min_e_t, 0.0);

        let rec = verify_dominance(&fourier::<f64>(3).unwrap(), 5).unwrap();
        assert!((rec.trace_abs - 1.0).abs() < 1e-12);
        assert!(rec.pass, "{:?}", rec.worst);
    }

    #[test]
    fn dominance_on_haar_unitaries() {
        let mut fails = 0;
        for s in 0..10_000u64 {
            let n = 2 + (s % 15) as usize;
            let u = random_unitary::<f64>(n, s).unwrap();
            let rec = verify_dominance(&u, s ^ 0xA5A5).unwrap();
            for r in &rec.profile.rotations {
                assert!(r.width_t < TAU);
            }
            if !rec.pass {
                fails += 1;
            }
        }
        assert_eq!(fails, 0);
    }

    #[test]
    fn round_trip_from_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for s in 0..200u64 {
            let n = rng.random_range(2..=8);
            let t: f64 = rng.random_range(0.1..2.0);
            let offset: f64 = rng.random_range(-10.0..10.0);
            let span = 0.999 * TAU / t;
            let levels: Vec<f64> = (0..n).map(|_| offset + rng.random_range(0.0..span)).collect();
            let spectrum = Spectrum::new(levels.clone()).unwrap();
            let st = spectrum.stats();
            let v = random_unitary::<f64>(n, 9000 + s).unwrap();
            let u = expm_hermitian_scaled(&hermitian_from_spectrum(&v, &levels).unwrap(), t).unwrap();
            let prof = enumerate_rotations(&eigenphases(&u, s).unwrap());
            let hit = prof.rotations.iter().any(|r| {
                (r.e_t - st.e_above_ground * t).abs() < 1e-8
                    && (r.var_t - st.variance_sqrt * t).abs() < 1e-8
                    && (r.width_t - st.width * t).abs() < 1e-8
            });
            assert!(hit, "sample {s}: no rotation reproduces the generator");
        }
    }

    #[test]
    fn global_phase_leaves_minima_unchanged() {
        for s in 0..200u64 {
            let n = 2 + (s % 7) as usize;
            let u = random_unitary::<f64>(n, 300 + s).unwrap();
            let phi = (s as f64) * 0.731 - 3.0;
            let v = u.scale(Complex::from_polar(1.0, phi));
            let a = enumerate_rotations(&eigenphases(&u, s).unwrap());
            let b = enumerate_rotations(&eigenphases(&v, s).unwrap());
            assert!((a.min_var_t - b.min_var_t).abs() < 1e-9);
            assert!((a.min_width_t - b.min_width_t).abs() < 1e-9);
        }
    }

    // Independent oracle: every branch vector with offsets in {0, 1, 2}^n.
    fn brute_force(phases: &[f64]) -> (f64, f64, f64) {
        let n = phases.len();
        let mut best = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let theta: Vec<f64> = phases
                .iter()
                .map(|&p| {
                    let o = c % 3;
                    c /= 3;
                    p + TAU * o as f64
                })
                .collect();
            let mean = theta.iter().sum::<f64>() / n as f64;
            let lo = theta.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let sd = (theta.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
            best = (best.0.min(mean - lo), best.1.min(sd), best.2.min(hi - lo));
        }
        best
    }

    #[test]
    fn canonical_windows_attain_branch_minima() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.random_range(1..=4);
            let phases: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
            let prof = enumerate_rotations(&pv(&phases));
            let (e, v, w) = brute_force(&phases);
            assert!(prof.min_e_t <= e + 1e-12);
            assert!(prof.min_var_t <= v + 1e-12);
            assert!(prof.min_width_t <= w + 1e-12);
        }
    }
}
