//! Library half of the `graphprod` command-line tool: scenario parsing and
//! the subcommands, so they can be driven from tests without a process.

pub mod commands;
pub mod scenario;

pub use commands::{Exit, Outcome};
pub use scenario::{Diagnostic, Scenario};
