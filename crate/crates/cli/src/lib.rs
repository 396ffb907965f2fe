//! Library half of the `cocycle-forge` binary: scenario loading, generator
//! expressions, the subcommands and their JSON reports.

pub mod commands;
pub mod error;
pub mod expr;
pub mod report;
pub mod scenario;

pub use commands::{run, Command, RunOptions, Subgroup};
pub use error::CliError;
pub use report::{Check, Report};
pub use scenario::{load_scenario, parse_scenario, Scenario};
