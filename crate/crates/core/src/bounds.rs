//! Lower bounds on the time needed to implement a unitary gate.
//!
//! Every bound depends on the gate only through `r = |tr U| / N` and on the
//! Hamiltonian only through its [`Stats`]. Writing `κ = sqrt(1 + 4/π²)`:
//!
//! | bound     | time                                | dimensionless product        |
//! |-----------|-------------------------------------|------------------------------|
//! | ML        | `(π / 2E)(1 − rκ)`                  | `E·T ≥ (π/2)(1 − rκ)`        |
//! | MT        | `sqrt(1 − r²) / ΔE`                 | `ΔE·T ≥ sqrt(1 − r²)`        |
//! | dual ML   | `(π / 2(E_max − Ē))(1 − rκ)`        | `(E_max − Ē)·T ≥ (π/2)(1 − rκ)` |
//! | width ML  | `(π / δE)(1 − rκ)`                  | `δE·T ≥ π(1 − rκ)`           |
//! | width MT  | `2 sqrt(1 − r²) / δE`               | `δE·T ≥ 2 sqrt(1 − r²)`      |
//!
//! Negative ML-type values are clamped to zero. A zero statistic in a denominator
//! yields [`Error::UndefinedBound`] unless the numerator vanishes too, in which
//! case the bound is zero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::Stats;

/// Dimension and trace modulus of a gate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceInput<T> {
    n: usize,
    trace_abs: T,
}

impl<T: Real> TraceInput<T> {
    /// `trace_abs` must lie in `[0, n]`; values exceeding `n` by rounding error
    /// (relative `1e-9`) are clamped.
    pub fn new(n: usize, trace_abs: T) -> Result<Self> {
        let nf = T::from_usize(n).ok_or(Error::InvalidDimension(n))?;
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let slack = nf * T::lit(T::TOL.reconstruction);
        if !trace_abs.is_finite() || trace_abs < T::zero() || trace_abs > nf + slack {
            return Err(Error::InvalidTrace {
                n,
                trace_abs: trace_abs.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            n,
            trace_abs: trace_abs.min(nf),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trace_abs(&self) -> T {
        self.trace_abs
    }

    /// `r = |tr U| / N ∈ [0, 1]`.
    pub fn ratio(&self) -> T {
        (self.trace_abs / T::from_usize(self.n).expect("checked")).min(T::one())
    }
}

/// All bounds for one `(N, |tr U|, stats)` triple, in time units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundSet<T> {
    pub ml: T,
    pub mt: T,
    pub dual_ml: T,
    pub width_ml: T,
    pub width_mt: T,
    /// `max(ml, mt)`
    pub combined: T,
}

/// The bounds in dimensionless form: each entry is the value the corresponding
/// energy-time product must reach.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DimensionlessBounds<T> {
    /// lower bound on `E·T`, also on `(E_max − Ē)·T`
    pub ml: T,
    /// lower bound on `ΔE·T`
    pub mt: T,
    /// lower bound on `δE·T` from the ML route
    pub width_ml: T,
    /// lower bound on `δE·T` from the MT route
    pub width_mt: T,
}

impl<T: Real> DimensionlessBounds<T> {
    pub fn from_ratio(r: T) -> Self {
        let two = T::lit(2.0);
        Self {
            ml: ml_factor(r),
            mt: mt_factor(r),
            width_ml: two * ml_factor(r),
            width_mt: two * mt_factor(r),
        }
    }

    pub fn new(t: &TraceInput<T>) -> Self {
        Self::from_ratio(t.ratio())
    }
}

/// `sqrt(1 + 4/π²)`
pub fn kappa<T: Real>() -> T {
    let pi = T::PI();
    (T::one() + T::lit(4.0) / (pi * pi)).sqrt()
}

fn ml_raw<T: Real>(r: T) -> T {
    T::FRAC_PI_2() * (T::one() - r * kappa::<T>())
}

/// `max(0, (π/2)(1 − r·sqrt(1 + 4/π²)))`, the ML-type bound on `E·T`.
pub fn ml_factor<T: Real>(r: T) -> T {
    ml_raw(r).max(T::zero())
}

/// `sqrt(1 − r²)`, the MT-type bound on `ΔE·T`.
pub fn mt_factor<T: Real>(r: T) -> T {
    (T::one() - r * r).max(T::zero()).sqrt()
}

/// `numerator / denom`, with the degenerate-denominator rule.
fn divide<T: Real>(numerator: T, denom: T, what: &'static str) -> Result<T> {
    if denom > T::zero() {
        return Ok(numerator / denom);
    }
    if numerator <= T::tol_structural() {
        Ok(T::zero())
    } else {
        Err(Error::UndefinedBound(what))
    }
}

/// ML-type bound `(π/2E)(1 − r·sqrt(1 + 4/π²))`, clamped at zero.
pub fn ml_bound<T: Real>(t: &TraceInput<T>, stats: &Stats<T>) -> Result<T> {
    divide(ml_factor(t.ratio()), stats.e_above_ground, "E")
}

/// MT-type bound `sqrt(1 − r²)/ΔE`.
pub fn mt_bound<T: Real>(t: &TraceInput<T>, stats: &Stats<T>) -> Result<T> {
    divide(mt_factor(t.ratio()), stats.variance_sqrt, "ΔE")
}

/// Dual ML bound, ML with `E_max − Ē` in place of `E`.
pub fn dual_ml_bound<T: Real>(t: &TraceInput<T>, stats: &Stats<T>) -> Result<T> {
    divide(ml_factor(t.ratio()), stats.e_below_top, "E_max − Ē")
}

/// Width-based bounds `(width_ml, width_mt)`.
pub fn width_bounds<T: Real>(t: &TraceInput<T>, stats: &Stats<T>) -> Result<(T, T)> {
    let d = DimensionlessBounds::new(t);
    Ok((
        divide(d.width_ml, stats.width, "δE")?,
        divide(d.width_mt, stats.width, "δE")?,
    ))
}

pub fn bound_set<T: Real>(t: &TraceInput<T>, stats: &Stats<T>) -> Result<BoundSet<T>> {
    let ml = ml_bound(t, stats)?;
    let mt = mt_bound(t, stats)?;
    let dual_ml = dual_ml_bound(t, stats)?;
    let (width_ml, width_mt) = width_bounds(t, stats)?;
    Ok(BoundSet {
        ml,
        mt,
        dual_ml,
        width_ml,
        width_mt,
        combined: ml.max(mt),
    })
}

/// Classic orthogonal state-pair bound `max(π/(2ΔE), π/(2E))`, for comparison.
pub fn state_pair_bound<T: Real>(e: T, delta_e: T) -> Result<T> {
    if !(e > T::zero() && delta_e > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "energies must be positive (E = {e}, ΔE = {delta_e})"
        )));
    }
    Ok((T::FRAC_PI_2() / delta_e).max(T::FRAC_PI_2() / e))
}
