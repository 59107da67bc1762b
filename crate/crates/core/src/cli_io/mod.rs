//! Scenario files, the command-line surface, and report emission.

mod commands;
mod report;
mod scenario;

pub use commands::{run_command, CommandOutcome, ENUM_TIMEOUT_ENV};
pub use report::{Report, Section, SCHEMA};
pub use scenario::{
    emit_scenario, parse_scenario_file, parse_scenario_str, CountEntry, Location, Scenario,
    ScenarioError,
};
