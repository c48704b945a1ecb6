use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] tiltstab::Error),
    #[error("invalid config: {0}")]
    Config(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// One exit code per error family. Clap's own usage errors exit with 2
    /// as well, alongside parse failures.
    pub fn exit_code(&self) -> u8 {
        use tiltstab::Error as E;
        match self {
            CliError::Engine(E::Parse(_)) | CliError::Config(_) => 2,
            CliError::Engine(
                E::ZeroRank
                | E::RequiresPicardRankOne
                | E::PreconditionViolated(_)
                | E::InvalidGeometry(_),
            ) => 3,
            CliError::Engine(E::InfiniteFamily { .. }) => 4,
            CliError::Engine(E::UnsupportedTarget(_)) => 5,
            CliError::Io { .. } | CliError::Csv(_) => 6,
        }
    }
}
