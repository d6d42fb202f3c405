//! Command-line front end for `casimir-wedge`.
//!
//! Every run is described by a [`RunConfig`], assembled from command-line
//! flags over an optional JSON config file over built-in defaults. A run
//! produces a [`Document`] that is rendered as JSON or CSV in one piece.

#![deny(missing_docs)]

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod verify;

pub use config::RunConfig;
pub use error::CliError;
pub use output::Document;

/// Tool version written into every document.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
