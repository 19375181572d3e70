//! Command-line front end, JSON documents and self-verification for `qpsurf-core`.

pub mod cli;
pub mod error;
pub mod gen;
pub mod json;
pub mod oracle;
pub mod selftest;

pub use cli::{run, Outcome};
pub use error::CliError;
