use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};

use serde::Serialize;

use crate::bounds::{ml_factor, mt_factor};
use crate::catalog::{qubit_exact_time, qubit_exact_time_from_trace, qutrit_mub, QubitParams, QutritFamily, QutritMubParams};
use crate::error::{Error, Result};
use crate::linalg::trace_abs;
use crate::minimal_time::{eigenphases, enumerate_rotations};

const TOL: f64 = 1e-9;

/// Column groups emitted by [`figure_qutrit`] when no `x` values are given.
pub const DEFAULT_QUTRIT_X: [f64; 4] = [0.0, FRAC_PI_3, 2.0 * FRAC_PI_3, PI];

/// One row of figure data. All quantities are dimensionless energy-time products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub abscissa: f64,
    pub exact: f64,
    pub ml: f64,
    /// absent where the MT bound is not expressed in the same units as `exact`
    pub mt: Option<f64>,
    /// curve parameter (`x` for the qutrit families)
    pub series: Option<f64>,
}

impl CurvePoint {
    fn checked(self) -> Result<Self> {
        let bound = self.ml.max(self.mt.unwrap_or(f64::NEG_INFINITY));
        if self.exact >= bound - TOL {
            Ok(self)
        } else {
            Err(Error::InvariantViolated(format!(
                "exact {} below bound {} at abscissa {}",
                self.exact, bound, self.abscissa
            )))
        }
    }
}

fn grid(lo: f64, hi: f64, points: usize) -> Result<impl Iterator<Item = f64>> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {points}")));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(move |k| if k + 1 == points { hi } else { lo + step * k as f64 }))
}

/// Qubit point at `|tr U| = a`. For a qubit `E = ΔE`, so both bounds and the exact
/// time are products with `E`.
pub fn qubit_point(a: f64) -> CurvePoint {
    let r = a / 2.0;
    CurvePoint {
        abscissa: a,
        exact: qubit_exact_time_from_trace(a),
        ml: ml_factor(r),
        mt: Some(mt_factor(r)),
        series: None,
    }
}

/// Exact `E·T` and both bounds against `|tr U|` on a uniform grid of `[0, 2]`.
pub fn figure_qubit(points: usize) -> Result<Vec<CurvePoint>> {
    grid(0.0, 2.0, points)?.map(|a| qubit_point(a).checked()).collect()
}

/// Qubit MUB gates (`θ = π/4`) against the phase `α ∈ [0, π]`.
pub fn figure_qubit_mub(points: usize) -> Result<Vec<CurvePoint>> {
    grid(0.0, PI, points)?
        .map(|alpha| {
            let p = QubitParams { phi: 0.0, alpha, beta: 0.0, theta: FRAC_PI_4 };
            let r = p.trace_abs() / 2.0;
            CurvePoint {
                abscissa: alpha,
                exact: qubit_exact_time(&p),
                ml: ml_factor(r),
                mt: Some(mt_factor(r)),
                series: None,
            }
            .checked()
        })
        .collect()
}

/// Minimum-window `E·T` of the reduced qutrit family against `y ∈ [0, 2π]`, one
/// block of `y_points` rows per entry of `x_values`, in order.
pub fn figure_qutrit(family: QutritFamily, x_values: &[f64], y_points: usize) -> Result<Vec<CurvePoint>> {
    let ys: Vec<f64> = grid(0.0, TAU, y_points)?.collect();
    let mut out = Vec::with_capacity(x_values.len() * ys.len());
    for &x in x_values {
        for (k, &y) in ys.iter().enumerate() {
            let u = qutrit_mub(&QutritMubParams { family, x, y });
            let profile = enumerate_rotations(&eigenphases(&u, k as u64)?);
            out.push(
                CurvePoint {
                    abscissa: y,
                    exact: profile.min_e_t,
                    ml: ml_factor(trace_abs(&u) / 3.0),
                    mt: None,
                    series: Some(x),
                }
                .checked()?,
            );
        }
    }
    Ok(out)
}
