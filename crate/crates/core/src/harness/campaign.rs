use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_set, TraceInput};
use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian_scaled, hermitian_from_spectrum, random_unitary_with, trace_abs, Matrix};
use crate::minimal_time::{verify_dominance, Margins};
use crate::spectrum::Spectrum;

/// Levels are drawn uniformly from `[0, LEVEL_MAX]`.
pub const LEVEL_MAX: f64 = 10.0;
/// Times are drawn uniformly from `(0, TIME_MAX]`.
pub const TIME_MAX: f64 = 2.0;

const TOL: f64 = 1e-9;

/// Outcome of a single `(H, T)` sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleOutcome {
    pub n: usize,
    pub time: f64,
    pub trace_abs: f64,
    /// `T − bound` per bound form
    pub time_margins: Margins<f64>,
    /// worst `product − bound` over every canonical window of `U`
    pub dominance_margins: Margins<f64>,
    pub popoviciu_ok: bool,
    /// `width_mt ≤ mt`
    pub width_consistent: bool,
}

impl SampleOutcome {
    pub fn worst_margin(&self) -> f64 {
        self.time_margins.min().min(self.dominance_margins.min())
    }

    pub fn passed(&self) -> bool {
        self.worst_margin() >= -TOL && self.popoviciu_ok && self.width_consistent
    }
}

/// Aggregate of a randomized campaign.
///
/// `elapsed` is wall-clock time and is excluded from serialization so that
/// reruns with the same arguments serialize identically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub failures: usize,
    pub worst_margin: f64,
    pub seed: u64,
    pub dims: Vec<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
    pub time_margins: Margins<f64>,
    pub dominance_margins: Margins<f64>,
    pub popoviciu_violations: usize,
    pub width_mt_above_mt: usize,
    pub errors: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks one generator: `U = e^{−iHT}` with `H = V diag(levels) V†`.
pub fn check_sample(spectrum: &Spectrum<f64>, time: f64, basis: &Matrix<f64>, seed: u64) -> Result<SampleOutcome> {
    let n = spectrum.len();
    let h = hermitian_from_spectrum(basis, spectrum.levels())?;
    let u = expm_hermitian_scaled(&h, time)?;
    let tr = trace_abs(&u);
    let stats = spectrum.stats();
    let b = bound_set(&TraceInput::new(n, tr)?, &stats)?;
    let time_margins = Margins {
        ml: time - b.ml,
        mt: time - b.mt,
        dual_ml: time - b.dual_ml,
        width_ml: time - b.width_ml,
        width_mt: time - b.width_mt,
    };
    let rec = verify_dominance(&u, seed)?;
    Ok(SampleOutcome {
        n,
        time,
        trace_abs: tr,
        time_margins,
        dominance_margins: rec.worst,
        popoviciu_ok: 2.0 * stats.variance_sqrt <= stats.width * (1.0 + 1e-12),
        width_consistent: b.width_mt <= b.mt * (1.0 + 1e-12) + 1e-15,
    })
}

/// Draws `(spectrum, T, basis)` for sample `index` of dimension `n` and checks it.
pub fn random_sample(n: usize, seed: u64) -> Result<SampleOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=LEVEL_MAX)).collect();
    // (0, TIME_MAX]
    let time = TIME_MAX * (1.0 - rng.random::<f64>());
    let basis = random_unitary_with(n, &mut rng)?;
    let eig_seed = rng.random();
    check_sample(&Spectrum::new(levels)?, time, &basis, eig_seed)
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-sample seed derived from the campaign seed, the dimension and the index.
pub fn sample_seed(seed: u64, n: usize, index: usize) -> u64 {
    mix(mix(seed) ^ mix(((n as u64) << 40) ^ index as u64))
}

#[derive(Clone, Debug)]
struct Tally {
    samples: usize,
    failures: usize,
    errors: usize,
    popoviciu: usize,
    width: usize,
    time: Margins<f64>,
    dominance: Margins<f64>,
}

impl Tally {
    fn empty() -> Self {
        Self {
            samples: 0,
            failures: 0,
            errors: 0,
            popoviciu: 0,
            width: 0,
            time: Margins::infinite(),
            dominance: Margins::infinite(),
        }
    }

    fn of(outcome: Result<SampleOutcome>) -> Self {
        let mut t = Self::empty();
        t.samples = 1;
        match outcome {
            Ok(o) => {
                t.failures = usize::from(!o.passed());
                t.popoviciu = usize::from(!o.popoviciu_ok);
                t.width = usize::from(!o.width_consistent);
                t.time = o.time_margins;
                t.dominance = o.dominance_margins;
            }
            Err(_) => {
                t.failures = 1;
                t.errors = 1;
            }
        }
        t
    }

    fn merge(self, o: Self) -> Self {
        Self {
            samples: self.samples + o.samples,
            failures: self.failures + o.failures,
            errors: self.errors + o.errors,
            popoviciu: self.popoviciu + o.popoviciu,
            width: self.width + o.width,
            time: self.time.meet(&o.time),
            dominance: self.dominance.meet(&o.dominance),
        }
    }
}

/// Randomized check of every bound over `samples_per_dim` generators per dimension.
///
/// Samples run in parallel; results depend only on `(dims, samples_per_dim, seed)`.
pub fn run_random_campaign(dims: &[usize], samples_per_dim: usize, seed: u64) -> Result<VerificationReport> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument("no dimensions given".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDimension(d));
    }
    if samples_per_dim == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = dims
        .iter()
        .flat_map(|&n| (0..samples_per_dim).map(move |i| (n, i)))
        .collect();
    let tally = jobs
        .par_iter()
        .map(|&(n, i)| Tally::of(random_sample(n, sample_seed(seed, n, i))))
        .reduce(Tally::empty, Tally::merge);

    Ok(VerificationReport {
        samples: tally.samples,
        failures: tally.failures,
        worst_margin: tally.time.min().min(tally.dominance.min()),
        seed,
        dims: dims.to_vec(),
        elapsed: start.elapsed(),
        time_margins: tally.time,
        dominance_margins: tally.dominance,
        popoviciu_violations: tally.popoviciu,
        width_mt_above_mt: tally.width,
        errors: tally.errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;

    #[test]
    fn degenerate_two_level_sample() {
        let s = Spectrum::new(vec![0.0, 0.0]).unwrap();
        let v = random_unitary(2, 1).unwrap();
        let o = check_sample(&s, 1.3, &v, 0).unwrap();
        assert!(o.passed());
        assert!((o.trace_abs - 2.0).abs() < 1e-12);
        assert_eq!(o.time_margins.min(), 1.3);
    }

    #[test]
    fn single_sample_campaign() {
        let r = run_random_campaign(&[2], 1, 0).unwrap();
        assert_eq!((r.samples, r.failures), (1, 0));
    }

    #[test]
    fn campaign_is_deterministic() {
        let a = run_random_campaign(&[2, 3, 5], 40, 7).unwrap();
        let b = run_random_campaign(&[2, 3, 5], 40, 7).unwrap();
        assert_eq!(a.samples, 120);
        assert_eq!(
            VerificationReport { elapsed: Duration::ZERO, ..a },
            VerificationReport { elapsed: Duration::ZERO, ..b }
        );
    }

    #[test]
    fn campaign_argument_errors() {
        assert!(run_random_campaign(&[], 1, 0).is_err());
        assert!(run_random_campaign(&[1], 1, 0).is_err());
        assert!(run_random_campaign(&[2], 0, 0).is_err());
    }

    #[test]
    fn seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for n in 2..=8 {
            for i in 0..1000 {
                assert!(seen.insert(sample_seed(3, n, i)));
            }
        }
    }
}
