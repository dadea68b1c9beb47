use std::path::PathBuf;

use thiserror::Error;

use crate::datapath::FlowKey;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared across the crate. Display strings start with a stable
/// kebab-case code so callers and scripts can match on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty-trace: at least one delay sample is required")]
    EmptyTrace,

    #[error("invalid-sample: sample {index} has value {value}, expected a finite delay >= 0 us")]
    InvalidSample { index: usize, value: f64 },

    #[error("invalid-query: NaN is not a valid evaluation point")]
    InvalidQuery,

    #[error("invalid-probability: {p} is outside (0, 1]")]
    InvalidProbability { p: f64 },

    #[error("invalid-distribution: {message}")]
    InvalidDistribution { message: String },

    #[error("cache-full: flow table at capacity with eviction disabled, rejecting {key}")]
    CacheFull { key: FlowKey },

    #[error("already-installed: flow {key} is already present")]
    AlreadyInstalled { key: FlowKey },

    #[error("missing-flow: flow {key} is not installed")]
    MissingFlow { key: FlowKey },

    #[error("invalid-rate: data rate must be a positive finite bit rate, got {rate_bps} bit/s")]
    InvalidRate { rate_bps: f64 },

    #[error(
        "unknown-model: `{model_source}` is neither a bundled reference model nor a model file"
    )]
    UnknownModel { model_source: String },

    #[error("config: unknown key `{key}` on line {line}")]
    UnknownConfigKey { key: String, line: usize },

    #[error("config: missing required key `{key}`")]
    MissingConfigKey { key: &'static str },

    #[error("config: key `{key}`: {message}")]
    ConfigValue { key: String, message: String },

    #[error("parse-error: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed-row: line {line}: expected two whitespace-separated columns")]
    MalformedRow { line: usize },

    #[error("incomplete-model: missing stage section `{stage}`")]
    IncompleteModel { stage: String },

    #[error("duplicate-stage: section `{stage}` appears more than once")]
    DuplicateStage { stage: String },

    #[error("io: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by a bad configuration file or bad
    /// configuration values (as opposed to bad data or I/O failures).
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownConfigKey { .. }
                | Error::MissingConfigKey { .. }
                | Error::ConfigValue { .. }
        )
    }
}
