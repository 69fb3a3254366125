//! Desk-scale dynamical systems and their orbits.

mod alphabet;
mod finite;
mod interval;
mod point;
mod sft;

pub use alphabet::{Alphabet, Symbol, MAX_ALPHABET};
pub use finite::{FiniteMapSystem, Metric};
pub use interval::{IntervalMapSystem, INTERVAL_STEP_TOLERANCE};
pub use point::{exact_disagreement, sequence_metric, SeqDistance, SymbolicPoint, METRIC_DEPTH};
pub use sft::{sft_from_forbidden_words, topological_entropy, SymbolicSystem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystemError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("alphabet has {0} symbols, more than the supported maximum")]
    AlphabetTooLarge(usize),
    #[error("word {word:?} uses a symbol outside the alphabet")]
    BadWord { word: String },
    #[error("forbidden words remove every symbol: the subshift is empty")]
    EmptySubshift,
    #[error("points belong to different alphabets")]
    AlphabetMismatch,
    #[error("point is not a member of the system: {0}")]
    NotMember(String),
    #[error("invalid metric: {0}")]
    BadMetric(String),
    #[error("invalid map: {0}")]
    BadMap(String),
    #[error("invalid interval map: {0}")]
    BadIntervalMap(String),
    #[error("horizon must be at least 1")]
    ZeroHorizon,
}

/// A deterministic discrete-time system `f: X -> X` with a metric.
pub trait DynamicalSystem {
    type Point: Clone + std::fmt::Debug;

    fn step(&self, p: &Self::Point) -> Self::Point;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;

    fn contains(&self, p: &Self::Point) -> bool;

    /// Distance resolved to a given depth. Only symbolic systems care; for
    /// them the value is an upper bound once the depth is exhausted.
    fn distance_at_depth(&self, a: &Self::Point, b: &Self::Point, _depth: usize) -> f64 {
        self.distance(a, b)
    }

    /// Per-step floating tolerance of `step` (zero for exact systems).
    fn step_tolerance(&self) -> f64 {
        0.0
    }

    /// Exact equality for finite-state points, closeness within the step
    /// tolerance otherwise.
    fn same_point(&self, a: &Self::Point, b: &Self::Point) -> bool {
        self.distance(a, b) <= self.step_tolerance()
    }
}

/// A finite stretch `x_0, f(x_0), ..., f^{H-1}(x_0)` of a true orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSegment<P> {
    pub samples: Vec<P>,
    /// Declared per-step tolerance; zero for symbolic and finite systems.
    pub tolerance: f64,
}

impl<P> OrbitSegment<P> {
    pub fn horizon(&self) -> usize {
        self.samples.len()
    }

    pub fn start(&self) -> &P {
        &self.samples[0]
    }
}

pub fn orbit<S: DynamicalSystem>(
    system: &S,
    start: &S::Point,
    horizon: usize,
) -> Result<OrbitSegment<S::Point>, SystemError> {
    if horizon == 0 {
        return Err(SystemError::ZeroHorizon);
    }
    if !system.contains(start) {
        return Err(SystemError::NotMember(format!("{start:?}")));
    }
    let mut samples = Vec::with_capacity(horizon);
    samples.push(start.clone());
    for i in 1..horizon {
        let next = system.step(&samples[i - 1]);
        samples.push(next);
    }
    Ok(OrbitSegment { samples, tolerance: system.step_tolerance() })
}
