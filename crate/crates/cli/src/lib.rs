//! File formats, reports and the command-line front end for
//! [`markovnet_core`].
//!
//! * [`format`]: the distribution and cluster-tree text formats.
//! * [`export`]: DOT and adjacency-matrix TSV for graphs.
//! * [`report`]: information-content and pair-KL reports.
//! * [`commands`]: the subcommands behind the `markovnet` binary.

pub mod builtin;
pub mod commands;
mod error;
pub mod export;
pub mod format;
pub mod report;

pub use error::{CliError, ParseError};
