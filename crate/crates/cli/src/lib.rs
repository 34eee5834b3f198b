//! File formats, command implementations and built-in reference fixtures for the
//! `rps-conflict` command-line tool.
//!
//! - [`document`]: JSON evidence files.
//! - [`commands`]: the `conflict`, `sweep` and `codec` commands.
//! - [`repro`]: numeric reproduction of the reference tables from built-in fixtures.
//! - [`fixtures`]: the worked bodies of evidence behind those tables.
//! - [`table`]: the CSV table model shared by `sweep` and `repro`.

pub mod commands;
pub mod document;
mod error;
pub mod fixtures;
pub mod repro;
pub mod table;

pub use error::{CliError, Result};
