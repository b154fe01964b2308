//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Numerical tolerances used by structural checks and eigensolvers.
///
/// One set per scalar type, reachable as [`Real::TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// `is_unitary` / `is_hermitian` threshold for generated matrices.
    pub structural: f64,
    /// Eigendecomposition reconstruction residual, relative to `1 + max|A|`.
    pub reconstruction: f64,
    /// Unitarity required before a unitary eigendecomposition is attempted.
    pub unitary_input: f64,
    /// Signed slack allowed when checking that an exact product dominates a bound.
    pub dominance: f64,
}

/// Real floating-point scalar the library is generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    const TOL: Tolerances;

    /// Converts an `f64` literal. Every `f64` is representable (possibly rounded) in
    /// the supported scalar types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }

    #[inline]
    fn tol_structural() -> Self {
        Self::lit(Self::TOL.structural)
    }

    #[inline]
    fn tol_reconstruction() -> Self {
        Self::lit(Self::TOL.reconstruction)
    }

    #[inline]
    fn tol_dominance() -> Self {
        Self::lit(Self::TOL.dominance)
    }
}

impl Real for f64 {
    const TOL: Tolerances = Tolerances {
        structural: 1e-10,
        reconstruction: 1e-9,
        unitary_input: 1e-9,
        dominance: 1e-9,
    };
}

// Single precision carries ~7 digits; thresholds are scaled accordingly.
impl Real for f32 {
    const TOL: Tolerances = Tolerances {
        structural: 1e-4,
        reconstruction: 1e-3,
        unitary_input: 1e-3,
        dominance: 1e-3,
    };
}
