//! Scenario files, reports and the command-line front end.

pub mod report;
pub mod scenario;

pub use report::{run_report, Report, RunOptions, Section};
pub use scenario::{load, parse_scenario, Scenario, Violation};
