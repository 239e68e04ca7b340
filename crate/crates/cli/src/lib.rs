//! Front end for `hyperarr`: file loading, report building and the regression corpus.

pub mod commands;
pub mod corpus;
pub mod facts;
pub mod json;

use std::path::Path;

use hyperarr::arrangement::{Arrangement, ArrangementError, Hyperplane};
use hyperarr::exactmath::Rational;
use hyperarr::graphic::{Graph, GraphError};
use hyperarr::hypersolvable::HypersolvableError;
use hyperarr::logder::LogderError;

/// Exit status for malformed input.
pub const EXIT_PARSE: i32 = 1;
/// Exit status when a checked identity fails.
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_PARSE,
        }
    }
}

impl From<LogderError> for CliError {
    fn from(e: LogderError) -> Self {
        match e {
            LogderError::Inconsistent(_) | LogderError::DegreeIdentity { .. } => CliError::Invariant(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HypersolvableError> for CliError {
    fn from(e: HypersolvableError) -> Self {
        match e {
            HypersolvableError::Inconsistent(..) => CliError::Invariant(e.to_string()),
            HypersolvableError::Logder(l) => l.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement, CliError> {
    Arrangement::parse(&read_file(path)?).map_err(|e: ArrangementError| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::parse(&read_file(path)?).map_err(|e: GraphError| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parse a whitespace-separated coefficient row such as `"1 -1 0"`.
pub fn parse_hyperplane(text: &str, dim: usize) -> Result<Hyperplane, CliError> {
    let bad = |m: String| CliError::Input(format!("hyperplane `{text}`: {m}"));
    let coeffs = text
        .split_whitespace()
        .map(|t| t.parse::<Rational>().map_err(|e| bad(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != dim {
        return Err(bad(format!("expected {dim} coefficients, found {}", coeffs.len())));
    }
    Hyperplane::new(coeffs).map_err(|e| bad(e.to_string()))
}
