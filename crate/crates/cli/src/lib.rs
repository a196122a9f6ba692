//! Tables, verification suites and an on-disk tensor cache for the `suncas`
//! command-line tool.

pub mod cache;
pub mod config;
pub mod reference;
pub mod suite;
pub mod table;

use std::path::PathBuf;

/// Exit status: every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status: the computation ran but disagreed with a published value.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit status: bad input, refused computation or I/O failure.
pub const EXIT_INFRA: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cache directory {path} is unusable: {source}")]
    CacheUnavailable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] sun_casimir::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
