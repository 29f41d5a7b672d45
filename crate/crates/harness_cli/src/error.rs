use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("config file {path}: {source}")]
    ConfigFile { path: PathBuf, source: toml::de::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    State(#[from] euler_core::CoreError),
    #[error(transparent)]
    Ddm(#[from] ddm::DdmError),
    #[error(transparent)]
    Fourier(#[from] discrete_fourier::FourierError),
    #[error(transparent)]
    Symbol(#[from] symbol_analysis::SymbolError),
    #[error("plot has no data")]
    EmptySeries,
    #[error("{0}")]
    Numerical(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// 2 for configuration problems, 3 for numerical failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::ConfigFile { .. } | HarnessError::State(_) => 2,
            HarnessError::Ddm(ddm::DdmError::Profile(_) | ddm::DdmError::Decomposition(_) | ddm::DdmError::State(_)) => 2,
            HarnessError::Io { .. } | HarnessError::Csv(_) | HarnessError::Json(_) => 1,
            _ => 3,
        }
    }
}
