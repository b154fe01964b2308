//! Energy spectra and the statistics that parameterize the bounds.
//!
//! Units are those of the energies themselves with `ħ = 1`. The variance uses
//! population normalization `1/N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sorted, finite, non-empty list of energy levels. Degenerate levels are kept.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum<T> {
    levels: Vec<T>,
}

/// Derived statistics of a [`Spectrum`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stats<T> {
    /// `Ē`
    pub mean: T,
    /// `E = Ē − E_min`
    pub e_above_ground: T,
    /// `ΔE`, population standard deviation
    pub variance_sqrt: T,
    /// `δE = E_max − E_min`
    pub width: T,
    /// `E_max − Ē`
    pub e_below_top: T,
}

impl<T: Real> Spectrum<T> {
    /// Accepts levels in any order; they are sorted on construction.
    pub fn new(mut levels: Vec<T>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidSpectrum("empty".into()));
        }
        if let Some(i) = levels.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("level {i} is not finite")));
        }
        levels.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> T {
        self.levels[0]
    }

    pub fn max(&self) -> T {
        self.levels[self.levels.len() - 1]
    }

    pub fn stats(&self) -> Stats<T> {
        compute_stats(self)
    }

    /// Every level increased by `c`.
    pub fn shift(&self, c: T) -> Self {
        shift(self, c)
    }
}

pub fn compute_stats<T: Real>(s: &Spectrum<T>) -> Stats<T> {
    let n = T::from_usize(s.len()).expect("length fits the scalar");
    let mean = s.levels.iter().copied().sum::<T>() / n;
    let var = s.levels.iter().map(|&e| (e - mean) * (e - mean)).sum::<T>() / n;
    let (lo, hi) = (s.min(), s.max());
    // Rounding in the mean can put it a hair outside [lo, hi] for degenerate spectra.
    let mean_c = mean.max(lo).min(hi);
    Stats {
        mean,
        e_above_ground: mean_c - lo,
        variance_sqrt: var.sqrt(),
        width: hi - lo,
        e_below_top: hi - mean_c,
    }
}

pub fn shift<T: Real>(s: &Spectrum<T>, c: T) -> Spectrum<T> {
    Spectrum {
        levels: s.levels.iter().map(|&e| e + c).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(v: &[f64]) -> Spectrum<f64> {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_level() {
        let st = spec(&[0.0, 1.0]).stats();
        assert_eq!(st.e_above_ground, 0.5);
        assert_eq!(st.variance_sqrt, 0.5);
        assert_eq!(st.width, 1.0);
    }

    #[test]
    fn fully_degenerate() {
        let st = spec(&[2.7; 5]).stats();
        assert_eq!(st.e_above_ground, 0.0);
        assert_eq!(st.variance_sqrt, 0.0);
        assert_eq!(st.width, 0.0);
        assert_eq!(st.e_below_top, 0.0);
    }

    #[test]
    fn three_level_by_direct_summation() {
        // Ē = (0+1+2)/3 = 1; (ΔE)² = (1 + 0 + 1)/3 = 2/3
        let st = spec(&[2.0, 0.0, 1.0]).stats();
        assert!((st.mean - 1.0).abs() < 1e-15);
        assert!((st.e_above_ground - 1.0).abs() < 1e-15);
        assert!((st.variance_sqrt - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(st.width, 2.0);
    }

    #[test]
    fn shift_examples() {
        let s = spec(&[0.0, 1.0]);
        let t = s.shift(5.0);
        assert_eq!(t.levels(), &[5.0, 6.0]);
        let (a, b) = (s.stats(), t.stats());
        assert_eq!(a.e_above_ground, b.e_above_ground);
        assert_eq!(a.variance_sqrt, b.variance_sqrt);
        assert_eq!(a.width, b.width);
        assert_eq!(s.shift(0.0), s);

        let u = spec(&[0.0, 1.0, 2.0]).shift(-1.0);
        assert_eq!(u.levels(), &[-1.0, 0.0, 1.0]);
        assert!((u.stats().variance_sqrt - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn invalid_spectra() {
        assert!(Spectrum::<f64>::new(vec![]).is_err());
        assert!(Spectrum::new(vec![0.0, f64::NAN]).is_err());
        assert!(Spectrum::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn popoviciu_on_random_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..10_000 {
            let n = rng.random_range(2..=64);
            let levels: Vec<f64> = (0..n).map(|_| rng.random_range(-20.0..20.0)).collect();
            let st = spec(&levels).stats();
            assert!(2.0 * st.variance_sqrt <= st.width * (1.0 + 1e-12));
            assert!(st.e_above_ground >= 0.0 && st.e_below_top >= 0.0);
            assert!((st.e_above_ground + st.e_below_top - st.width).abs() <= 1e-12 * st.width.max(1.0));
        }
    }

    fn rel_close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    proptest! {
        #[test]
        fn shift_invariance(levels in prop::collection::vec(-50.0f64..50.0, 1..32), c in -100.0f64..100.0) {
            let s = spec(&levels);
            let (a, b) = (s.stats(), s.shift(c).stats());
            prop_assert!(rel_close(a.e_above_ground, b.e_above_ground));
            prop_assert!(rel_close(a.variance_sqrt, b.variance_sqrt));
            prop_assert!(rel_close(a.width, b.width));
            prop_assert!(rel_close(a.e_below_top, b.e_below_top));
            prop_assert!(rel_close(a.mean + c, b.mean));
        }

        #[test]
        fn permutation_invariance(mut levels in prop::collection::vec(-50.0f64..50.0, 1..32), seed in any::<u64>()) {
            let a = spec(&levels).stats();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..levels.len()).rev() {
                let j = rng.random_range(0..=i);
                levels.swap(i, j);
            }
            prop_assert_eq!(a, spec(&levels).stats());
        }
    }
}
