//! Library side of the `gfix` command: document ingestion, commands and
//! reports.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, Cli, Format, Outcome};
pub use document::{ingest, SpaceDocument};
