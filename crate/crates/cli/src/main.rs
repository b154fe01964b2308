mod unitary;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsl_core::bounds::{
    dual_ml_bound, ml_bound, mt_bound, width_bounds, DimensionlessBounds, TraceInput,
};
use qsl_core::catalog::{gauss_trace, grover_trace, mub_trace_cap};
use qsl_core::harness::{
    figure_qubit, figure_qubit_mub, figure_qutrit, run_random_campaign, write_curve_csv,
    CurvePoint, DEFAULT_QUTRIT_X,
};
use qsl_core::linalg::trace_abs;
use qsl_core::{EnergySpectrum, QubitParams, QutritFamily, QutritMubParams};
use serde::Serialize;

use unitary::{LoadError, UnitarySpec};

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_UNITARY: u8 = 3;

#[derive(Parser)]
#[command(name = "qsl", version, about = "Trace-based speed limits for unitary gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bounds on the time needed to implement a gate.
    Bounds(BoundsArgs),
    /// Randomized check that exact energy-time products dominate every bound.
    Verify(VerifyArgs),
    /// CSV data for the exact-time versus bound curves.
    Figure(FigureArgs),
    /// Named gates and their closed-form traces.
    Catalog(CatalogArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// JSON matrix file `{"n": .., "re": [[..]], "im": [[..]]}`
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// discrete Fourier transform of dimension N
    #[arg(long, value_name = "N")]
    fourier: Option<usize>,
    /// Grover iterate of dimension N
    #[arg(long, value_name = "N")]
    grover: Option<usize>,
    /// permutation image list, e.g. `1,0,2`
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    permutation: Option<Vec<usize>>,
    /// q-fold tensor power of the Hadamard gate
    #[arg(long, value_name = "Q")]
    hadamard_power: Option<usize>,
    /// general qubit gate `phi,alpha,beta,theta`
    #[arg(long, value_name = "PHI,ALPHA,BETA,THETA", value_delimiter = ',', allow_hyphen_values = true)]
    qubit: Option<Vec<f64>>,
    /// reduced qutrit MUB gate of the given family (with --x, --y)
    #[arg(long, value_enum, value_name = "FAMILY")]
    qutrit_mub: Option<Family>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// marked state for --grover
    #[arg(long, default_value_t = 0, requires = "grover")]
    target: usize,
    /// first column phase for --qutrit-mub
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, requires = "qutrit_mub")]
    x: f64,
    /// second column phase for --qutrit-mub
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, requires = "qutrit_mub")]
    y: f64,
    /// Hamiltonian eigenvalues, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "spectrum_file")]
    spectrum: Option<Vec<f64>>,
    /// file with one eigenvalue per line
    #[arg(long, value_name = "PATH")]
    spectrum_file: Option<PathBuf>,
    /// print JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// dimensions to sample
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
    dims: Vec<usize>,
    /// samples per dimension
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, env = "QSL_SEED", default_value_t = 0)]
    seed: u64,
    /// report path (stdout if omitted)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(value_enum)]
    name: FigureName,
    /// output path (stdout if omitted)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// grid intervals; each curve has resolution + 1 points
    #[arg(short, long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    resolution: u64,
}

#[derive(Args)]
struct CatalogArgs {
    /// also evaluate each trace at this dimension
    #[arg(long, value_name = "N")]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    One,
    Two,
}

impl From<Family> for QutritFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::One => QutritFamily::One,
            Family::Two => QutritFamily::Two,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureName {
    Qubit,
    QubitMub,
    QutritU1,
    QutritU2,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let code = match e {
            LoadError::NotUnitary(_) => EXIT_NOT_UNITARY,
            _ => EXIT_USAGE,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<qsl_core::Error> for Failure {
    fn from(e: qsl_core::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Figure(a) => cmd_figure(&a),
        Command::Catalog(a) => cmd_catalog(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qsl: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn unitary_spec(a: &BoundsArgs) -> Result<UnitarySpec, Failure> {
    let s = &a.source;
    if let Some(p) = &s.file {
        return Ok(UnitarySpec::File(p.clone()));
    }
    if let Some(n) = s.fourier {
        return Ok(UnitarySpec::Fourier(n));
    }
    if let Some(n) = s.grover {
        return Ok(UnitarySpec::Grover { n, target: a.target });
    }
    if let Some(p) = &s.permutation {
        return Ok(UnitarySpec::Permutation(p.clone()));
    }
    if let Some(q) = s.hadamard_power {
        return Ok(UnitarySpec::HadamardPower(q));
    }
    if let Some(v) = &s.qubit {
        if v.len() != 4 {
            return Err(Failure::usage(format!("--qubit takes 4 values, got {}", v.len())));
        }
        return Ok(UnitarySpec::Qubit(QubitParams::new(v[0], v[1], v[2], v[3])?));
    }
    if let Some(f) = s.qutrit_mub {
        return Ok(UnitarySpec::QutritMub(QutritMubParams { family: f.into(), x: a.x, y: a.y }));
    }
    Err(Failure::usage("no gate given"))
}

fn read_spectrum_file(path: &Path) -> Result<Vec<f64>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| Failure::usage(format!("{}: bad level {l:?}: {e}", path.display())))
        })
        .collect()
}

#[derive(Serialize)]
struct BoundsReport {
    gate: String,
    n: usize,
    trace_abs: f64,
    r: f64,
    /// "time" with a spectrum, "dimensionless" otherwise
    units: &'static str,
    ml: Option<f64>,
    mt: Option<f64>,
    dual_ml: Option<f64>,
    width_ml: Option<f64>,
    width_mt: Option<f64>,
    combined: Option<f64>,
}

fn cmd_bounds(a: &BoundsArgs) -> Result<u8, Failure> {
    let spec = unitary_spec(a)?;
    let u = spec.build()?;
    let n = u.n();
    let t = TraceInput::new(n, trace_abs(&u))?;
    let levels = match (&a.spectrum, &a.spectrum_file) {
        (Some(v), _) => Some(v.clone()),
        (None, Some(p)) => Some(read_spectrum_file(p)?),
        (None, None) => None,
    };

    let mut report = BoundsReport {
        gate: spec.label(),
        n,
        trace_abs: t.trace_abs(),
        r: t.ratio(),
        units: "dimensionless",
        ml: None,
        mt: None,
        dual_ml: None,
        width_ml: None,
        width_mt: None,
        combined: None,
    };
    match levels {
        None => {
            let d = DimensionlessBounds::new(&t);
            report.ml = Some(d.ml);
            report.mt = Some(d.mt);
            report.dual_ml = Some(d.ml);
            report.width_ml = Some(d.width_ml);
            report.width_mt = Some(d.width_mt);
        }
        Some(levels) => {
            if levels.len() != n {
                return Err(Failure::usage(format!(
                    "spectrum has {} levels but the gate has dimension {n}",
                    levels.len()
                )));
            }
            let stats = EnergySpectrum::new(levels)?.stats();
            report.units = "time";
            report.ml = ml_bound(&t, &stats).ok();
            report.mt = mt_bound(&t, &stats).ok();
            report.dual_ml = dual_ml_bound(&t, &stats).ok();
            let widths = width_bounds(&t, &stats).ok();
            report.width_ml = widths.map(|w| w.0);
            report.width_mt = widths.map(|w| w.1);
            report.combined = match (report.ml, report.mt) {
                (Some(ml), Some(mt)) => Some(ml.max(mt)),
                _ => None,
            };
        }
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let written = if a.json {
        serde_json::to_writer_pretty(&mut out, &report)
            .map_err(io::Error::from)
            .and_then(|()| writeln!(out))
    } else {
        print_bounds(&mut out, &report)
    };
    written.map_err(|e| Failure::usage(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn print_bounds(out: &mut impl Write, r: &BoundsReport) -> io::Result<()> {
    let show = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.12}"));
    let dimensionless = r.units == "dimensionless";
    writeln!(out, "gate      {}", r.gate)?;
    writeln!(out, "n         {}", r.n)?;
    writeln!(out, "|trU|     {:.12}", r.trace_abs)?;
    writeln!(out, "r         {:.12}", r.r)?;
    let rows = [
        ("ml", r.ml, "E·T"),
        ("mt", r.mt, "ΔE·T"),
        ("dual_ml", r.dual_ml, "(E_max − Ē)·T"),
        ("width_ml", r.width_ml, "δE·T"),
        ("width_mt", r.width_mt, "δE·T"),
    ];
    for (name, v, product) in rows {
        if dimensionless {
            writeln!(out, "{name:<9} {}   (bound on {product})", show(v))?;
        } else {
            writeln!(out, "{name:<9} {}", show(v))?;
        }
    }
    if dimensionless {
        writeln!(out, "combined  needs a spectrum (--spectrum)")?;
    } else {
        writeln!(out, "combined  {}", show(r.combined))?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let samples = usize::try_from(a.samples).map_err(|_| Failure::usage("too many samples"))?;
    let report = run_random_campaign(&a.dims, samples, a.seed)?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::usage(format!("cannot serialize report: {e}")))?;
    write_output(a.out.as_deref(), |w| writeln!(w, "{json}"))?;
    eprintln!(
        "qsl: {} samples, {} failures, worst margin {:.3e}, {:.2?}",
        report.samples, report.failures, report.worst_margin, report.elapsed
    );
    Ok(if report.passed() { 0 } else { EXIT_FAILURES })
}

fn cmd_figure(a: &FigureArgs) -> Result<u8, Failure> {
    let points = usize::try_from(a.resolution)
        .ok()
        .and_then(|r| r.checked_add(1))
        .ok_or_else(|| Failure::usage("resolution too large"))?;
    let rows: Vec<CurvePoint> = match a.name {
        FigureName::Qubit => figure_qubit(points)?,
        FigureName::QubitMub => figure_qubit_mub(points)?,
        FigureName::QutritU1 => figure_qutrit(QutritFamily::One, &DEFAULT_QUTRIT_X, points)?,
        FigureName::QutritU2 => figure_qutrit(QutritFamily::Two, &DEFAULT_QUTRIT_X, points)?,
    };
    write_output(a.out.as_deref(), |w| write_curve_csv(&rows, w).map_err(io::Error::from))?;
    Ok(0)
}

fn cmd_catalog(a: &CatalogArgs) -> Result<u8, Failure> {
    let entries: [(&str, &str, Option<f64>); 7] = [
        ("fourier", "√2, 1, 0, 1 for N mod 4 = 0, 1, 2, 3", a.n.map(gauss_trace)),
        ("grover", "|N − 4 + 4/N|", a.n.map(grover_trace)),
        ("permutation", "number of fixed points", None),
        ("hadamard-power", "0 (tr H = 0)", a.n.map(|_| 0.0)),
        ("qubit", "2|cos θ cos α|", None),
        ("qutrit-mub", "computed numerically; any MUB gate has |tr U| ≤ √N", None),
        ("mub cap", "√N", a.n.map(mub_trace_cap)),
    ];
    let stdout = io::stdout();
    let mut out = stdout.lock();
    entries
        .iter()
        .try_for_each(|(name, form, value)| match value {
            Some(v) => writeln!(out, "{name:<15} {form:<50} {v:.12}"),
            None => writeln!(out, "{name:<15} {form}"),
        })
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn write_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let io_fail = |e: io::Error| {
        let target = path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
        Failure::usage(format!("cannot write {target}: {e}"))
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_fail)?);
            body(&mut w).and_then(|()| w.flush()).map_err(io_fail)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|()| w.flush()).map_err(io_fail)
        }
    }
}
