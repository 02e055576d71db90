//! Command implementations behind the `rootscope` binary. Each command
//! writes to a caller-supplied stream so it can be tested without spawning
//! a process.

pub mod commands;
mod error;
pub mod output;

pub use error::{CliError, Result};
pub use output::{read_csv, write_records, Format, Kind, OutputRecord};
