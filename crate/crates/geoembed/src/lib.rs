//! File formats and the `geoembed` command line on top of `geoembed-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod io;

pub use cli::Cli;
pub use commands::{execute, run, Output};
pub use config::RunConfig;
