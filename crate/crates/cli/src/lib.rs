//! Configuration, command-line workflows and the HTTP API over a corpus snapshot.

pub mod api;
pub mod cli;
pub mod config;
pub mod error;
pub mod render;

pub use cli::run;
pub use error::CliError;
