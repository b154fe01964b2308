//! Trace-based speed limits for unitary gates.
//!
//! For a gate `U = e^{−iHT}` on an `N`-dimensional system, the time `T` is bounded
//! below by expressions that depend on `U` only through `|tr U| / N` and on `H` only
//! through the mean energy above the ground state, the standard deviation and the
//! spectral width (see [`bounds`]). The [`minimal_time`] module computes the exact
//! energy-time products of a concrete unitary by enumerating the branches of its
//! logarithm, which is what the bounds are verified against.
//!
//! The numeric modules are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod minimal_time;
pub mod scalar;
pub mod spectrum;

pub use error::{Error, Result};
pub use scalar::{Real, Tolerances};

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type ComplexMatrix = linalg::Matrix<f64>;
pub type HermitianEigen = linalg::HermitianEigen<f64>;
pub type UnitaryEigen = linalg::UnitaryEigen<f64>;
pub type EnergySpectrum = spectrum::Spectrum<f64>;
pub type EnergyStats = spectrum::Stats<f64>;
pub type TraceInput = bounds::TraceInput<f64>;
pub type BoundSet = bounds::BoundSet<f64>;
pub type QubitParams = catalog::QubitParams<f64>;
pub type QutritMubParams = catalog::QutritMubParams<f64>;
pub type PhaseVector = minimal_time::PhaseVector<f64>;
pub type ExactTimeProfile = minimal_time::ExactTimeProfile<f64>;
pub type VerificationRecord = minimal_time::VerificationRecord<f64>;

pub use catalog::QutritFamily;
pub use harness::{CurvePoint, VerificationReport};
