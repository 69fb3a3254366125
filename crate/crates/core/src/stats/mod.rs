//! Densities, ω̄-limit estimates, distributional chaos and irregularity.

mod density;
mod distributional;
mod finite;
mod irregular;
mod omega;

pub use density::{empirical_measure, upper_lower_density, DensityEstimate, EmpiricalMeasure};
pub use distributional::{dc2_verdict, distributional_functions, DistributionalFunctions};
pub use finite::{
    measure_center_finite, omega_bar_exact_finite, omega_bar_power_identity_check,
    uniform_recurrence_gap, MeasureCenter, PowerIdentityReport,
};
pub use irregular::{birkhoff_irregularity, irregular_witness_sft, IrregularWitness, IrregularityReport};
pub use omega::{
    grid_candidates, omega_bar_estimate, omega_limit_estimate, scrambled_family_check,
    OmegaBarEstimate, PairRecord, ScrambledWitness,
};

use thiserror::Error;

use crate::shadowing::ShadowError;
use crate::systems::SystemError;

/// Positive-density threshold used when none is given.
pub const DEFAULT_THETA: f64 = 0.01;
/// Tail window used when none is given.
pub const DEFAULT_TAIL: f64 = 0.5;
/// Ball radius for symbolic candidates.
pub const SYMBOLIC_EPSILON: f64 = 1.0 / 64.0;
/// Grid cell width for interval candidates.
pub const INTERVAL_GRID: f64 = 1.0 / 64.0;
/// Default periodicity bound for scrambled-family checks.
pub const DEFAULT_PERIOD_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("horizon {got} is shorter than the required {need}")]
    HorizonTooShort { need: usize, got: usize },
    #[error("orbits have different horizons ({0} and {1})")]
    HorizonMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("map is not a single cycle")]
    NotMinimal,
    #[error("system has zero topological entropy")]
    ZeroEntropy,
    #[error("system has fewer than two distinct periodic orbits")]
    NoDisjointCycles,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
}

pub(crate) fn tail_start(horizon: usize, tail_fraction: f64) -> usize {
    (((1.0 - tail_fraction) * horizon as f64).ceil() as usize).clamp(1, horizon)
}

pub(crate) fn check_tail(tail_fraction: f64) -> Result<(), StatsError> {
    if tail_fraction > 0.0 && tail_fraction <= 1.0 {
        Ok(())
    } else {
        Err(StatsError::BadParameter(format!("tail fraction {tail_fraction} not in (0, 1]")))
    }
}
