//! Randomized verification campaigns and figure data.

mod campaign;
mod figures;

pub use campaign::{
    check_sample, random_sample, run_random_campaign, sample_seed, SampleOutcome, VerificationReport,
    LEVEL_MAX, TIME_MAX,
};
pub use figures::{figure_qubit, figure_qubit_mub, figure_qutrit, qubit_point, CurvePoint, DEFAULT_QUTRIT_X};

use std::io::Write;

pub const CSV_HEADER: [&str; 4] = ["abscissa", "exact", "ml", "mt"];

/// Formats `x` with `digits` significant digits, `%g` style: fixed notation for
/// decimal exponents in `[-5, digits)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes figure rows as CSV with header `abscissa,exact,ml,mt`; `mt` is empty
/// where absent. Numbers carry 12 significant digits.
pub fn write_curve_csv<W: Write>(points: &[CurvePoint], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in points {
        w.write_record([
            format_significant(p.abscissa, 12),
            format_significant(p.exact, 12),
            format_significant(p.ml, 12),
            p.mt.map(|v| format_significant(v, 12)).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
