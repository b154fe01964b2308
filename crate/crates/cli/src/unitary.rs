use std::fs;
use std::path::{Path, PathBuf};

use qsl_core::catalog;
use qsl_core::{ComplexMatrix, QubitParams, QutritFamily, QutritMubParams};
use serde::Deserialize;
use thiserror::Error;

/// Hand-authored matrix files are checked against this looser tolerance.
pub const FILE_UNITARY_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid matrix file {path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("matrix is not unitary (max |U†U − I| = {0:.3e})")]
    NotUnitary(f64),
    #[error(transparent)]
    Core(#[from] qsl_core::Error),
}

/// `{"n": 2, "re": [[..], [..]], "im": [[..], [..]]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.re.len() != self.n || self.im.len() != self.n {
            return Err(format!("expected {} rows in both re and im", self.n));
        }
        ComplexMatrix::from_parts(&self.re, &self.im).map_err(|e| e.to_string())
    }
}

pub fn load_matrix_file(path: &Path) -> Result<ComplexMatrix, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    let format = |msg: String| LoadError::Format { path: path.to_owned(), msg };
    let file: MatrixFile = serde_json::from_str(&text).map_err(|e| format(e.to_string()))?;
    let u = file.to_matrix().map_err(format)?;
    let dev = u.unitarity_deviation();
    if dev > FILE_UNITARY_TOL {
        return Err(LoadError::NotUnitary(dev));
    }
    Ok(u)
}

/// Where a gate comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitarySpec {
    File(PathBuf),
    Fourier(usize),
    Grover { n: usize, target: usize },
    Permutation(Vec<usize>),
    HadamardPower(usize),
    Qubit(QubitParams),
    QutritMub(QutritMubParams),
}

impl UnitarySpec {
    pub fn label(&self) -> String {
        match self {
            UnitarySpec::File(p) => format!("file {}", p.display()),
            UnitarySpec::Fourier(n) => format!("Fourier F_{n}"),
            UnitarySpec::Grover { n, target } => format!("Grover G_{n} (target {target})"),
            UnitarySpec::Permutation(p) => format!("permutation {p:?}"),
            UnitarySpec::HadamardPower(q) => format!("H^⊗{q}"),
            UnitarySpec::Qubit(p) => format!(
                "qubit (φ, α, β, θ) = ({}, {}, {}, {})",
                p.phi, p.alpha, p.beta, p.theta
            ),
            UnitarySpec::QutritMub(p) => {
                format!("qutrit MUB {} (x, y) = ({}, {})", family_name(p.family), p.x, p.y)
            }
        }
    }

    pub fn build(&self) -> Result<ComplexMatrix, LoadError> {
        Ok(match self {
            UnitarySpec::File(p) => load_matrix_file(p)?,
            UnitarySpec::Fourier(n) => catalog::fourier(*n)?,
            UnitarySpec::Grover { n, target } => catalog::grover(*n, *target)?,
            UnitarySpec::Permutation(p) => catalog::permutation(p)?,
            UnitarySpec::HadamardPower(q) => catalog::hadamard_power(*q)?,
            UnitarySpec::Qubit(p) => catalog::qubit_unitary(p),
            UnitarySpec::QutritMub(p) => catalog::qutrit_mub(p),
        })
    }
}

pub fn family_name(f: QutritFamily) -> &'static str {
    match f {
        QutritFamily::One => "U1",
        QutritFamily::Two => "U2",
    }
}
