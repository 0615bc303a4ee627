//! Command-line tool, `.plx` language and report formats on top of
//! `rucert-core`.

pub mod cli;
pub mod dsl;
pub mod eval;
pub mod plot;
pub mod report;

pub use cli::run_command;
