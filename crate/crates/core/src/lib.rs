//! Computable symbolic and topological dynamics.
//!
//! The crate is organised around four layers:
//!
//! * [`systems`]: subshifts of finite type, finite metric maps and
//!   piecewise-linear interval maps, with exact orbit generation.
//! * [`chain`]: chain components, graph period, cyclic classes, the
//!   relation `~_f` at a fixed scale, chain-proximal pairs and uniform
//!   chain-length bounds.
//! * [`shadowing`]: pseudo-orbits, exact shadowing on SFTs, class-constrained
//!   shadowing checks and the constructive average-shadowing tracer.
//! * [`stats`]: upper/lower densities, ω̄-limit estimation, distributional
//!   chaos functions, Birkhoff irregularity and measure centers.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod chain;
pub mod seed;
pub mod shadowing;
pub mod stats;
pub mod systems;

pub use chain::{
    chain_components, chain_equivalent, chain_proximal, cyclic_decomposition,
    delta_transition_graph, graph_period, is_chain_mixing, is_chain_transitive, path_of_length,
    symbolic_transition_graph, uniform_chain_bound, ChainBound, ChainComponentSet, ChainError,
    CyclicDecomposition, Provenance, TransitionGraph,
};
pub use shadowing::{
    average_defect_curve, average_shadow_trace, density_one_subsequence, dsp_check, is_along_d,
    random_pseudo_orbit, sft_shadow, verify_shadowing, AverageShadowTrace, DspReport,
    PseudoOrbit, ShadowError, ShadowResult,
};
pub use stats::{
    birkhoff_irregularity, dc2_verdict, distributional_functions, empirical_measure,
    irregular_witness_sft, measure_center_finite, omega_bar_estimate, omega_bar_exact_finite,
    omega_bar_power_identity_check, scrambled_family_check, uniform_recurrence_gap,
    upper_lower_density, DensityEstimate, DistributionalFunctions, EmpiricalMeasure,
    IrregularityReport, OmegaBarEstimate, ScrambledWitness, StatsError,
};
pub use systems::{
    orbit, sequence_metric, sft_from_forbidden_words, topological_entropy, Alphabet,
    DynamicalSystem, FiniteMapSystem, IntervalMapSystem, Metric, OrbitSegment, SeqDistance,
    Symbol, SymbolicPoint, SymbolicSystem, SystemError,
};
