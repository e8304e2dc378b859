use pfzero_core::algebra::ParseError;
use pfzero_core::hamiltonian::HamiltonianError;
use pfzero_core::numerics::NumericsError;
use pfzero_core::petrov::PetrovError;
use pfzero_core::pfsystem::PfError;
use pfzero_core::zerocount::ZeroCountError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Pf(#[from] PfError),
    #[error(transparent)]
    Petrov(#[from] PetrovError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    ZeroCount(#[from] ZeroCountError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn hamiltonian_code(e: &HamiltonianError) -> i32 {
    match e {
        HamiltonianError::Parse(_) | HamiltonianError::ForeignVariable | HamiltonianError::UnsupportedDegree(_) => {
            EXIT_USAGE
        }
        _ => EXIT_DEGENERATE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => {
                EXIT_USAGE
            }
            CliError::Hamiltonian(e) => hamiltonian_code(e),
            CliError::Pf(PfError::Hamiltonian(e)) => hamiltonian_code(e),
            CliError::Pf(PfError::ComponentOutOfRange { .. }) | CliError::Pf(PfError::WeightCount { .. }) => EXIT_USAGE,
            CliError::Pf(_) | CliError::Petrov(_) => EXIT_DEGENERATE,
            CliError::Numerics(NumericsError::Hamiltonian(e)) => hamiltonian_code(e),
            CliError::Numerics(_) => EXIT_NUMERIC,
            CliError::ZeroCount(e) => match e {
                ZeroCountError::PoleOnSegment { .. }
                | ZeroCountError::Inconclusive { .. }
                | ZeroCountError::ZeroOnContour { .. } => EXIT_NUMERIC,
                ZeroCountError::InvalidRays
                | ZeroCountError::InfeasibleClearance(_)
                | ZeroCountError::InvalidDomain(_)
                | ZeroCountError::InvalidRho(_) => EXIT_USAGE,
            },
        }
    }

    /// Stable name of the error kind, reported in the JSON error body.
    pub fn kind(&self) -> String {
        let dbg = match self {
            CliError::Usage(_) => return "Usage".into(),
            CliError::Parse(_) => return "ParseError".into(),
            CliError::Io(_) => return "Io".into(),
            CliError::Json(_) => return "Json".into(),
            CliError::Csv(_) => return "Csv".into(),
            CliError::Hamiltonian(e)
            | CliError::Pf(PfError::Hamiltonian(e))
            | CliError::Numerics(NumericsError::Hamiltonian(e)) => {
                format!("{e:?}")
            }
            CliError::Pf(e) => format!("{e:?}"),
            CliError::Petrov(e) => format!("{e:?}"),
            CliError::Numerics(e) => format!("{e:?}"),
            CliError::ZeroCount(e) => format!("{e:?}"),
        };
        dbg.split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or("")
            .to_string()
    }
}
