//! Experiment runner behind the `symdyn` binary.

pub mod report;
pub mod run;
pub mod spec;

use thiserror::Error;

pub use report::Report;
pub use run::{run, Command, Overrides};
pub use spec::{parse_experiment, parse_system_spec, print_system_spec, System, SystemSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("analysis failed in {stage}: {message}")]
    Analysis { stage: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Analysis { .. } => 3,
        }
    }
}
