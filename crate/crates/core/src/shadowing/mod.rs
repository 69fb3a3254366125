//! Pseudo-orbits, exact shadowing on SFTs and the average-shadowing tracer.

mod average;
mod construct;

pub use average::{
    average_defect_curve, average_shadow_trace, density_one_subsequence, AverageShadowParams,
    AverageShadowTrace, DensitySelection, GlueWindow, StageTwoLevel,
};
pub use construct::{alternating_blocks, geometric_schedule, glue_to_cycle, simple_cycles};

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::chain::{
    self, chain_components, cyclic_decomposition, is_chain_transitive, symbolic_transition_graph,
    ChainError, CyclicDecomposition,
};
use crate::seed;
use crate::systems::{DynamicalSystem, Symbol, SymbolicPoint, SymbolicSystem, SystemError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShadowError {
    #[error("delta {0} is not of the form 2^-m with m >= 1")]
    BadDelta(f64),
    #[error("defect {defect} at step {index} exceeds delta {delta}")]
    DefectExceedsDelta { index: usize, defect: f64, delta: f64 },
    #[error("point {0} of the sequence is not in the system")]
    NotMember(usize),
    #[error("system is not chain transitive")]
    NotChainTransitive,
    #[error("sequence does not advance cyclic classes at step {0}")]
    NotAlongD(usize),
    #[error("schedule exhausted: {0}")]
    ScheduleExhausted(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A finite pseudo-orbit `x_0..x_L` with its measured defects.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOrbit<P> {
    pub points: Vec<P>,
    pub delta: f64,
    /// `defects[i] = d(f(x_i), x_{i+1})`.
    pub defects: Vec<f64>,
    /// Cyclic class of each point, for chain transitive symbolic systems.
    pub class_trace: Option<Vec<usize>>,
}

impl<P: Clone + std::fmt::Debug> PseudoOrbit<P> {
    pub fn new<S: DynamicalSystem<Point = P>>(system: &S, points: Vec<P>, delta: f64) -> Result<Self, ShadowError> {
        if points.is_empty() {
            return Err(ShadowError::BadParameter("pseudo-orbit has no points".into()));
        }
        if !(delta >= 0.0) {
            return Err(ShadowError::BadParameter(format!("delta {delta}")));
        }
        if let Some(i) = points.iter().position(|p| !system.contains(p)) {
            return Err(ShadowError::NotMember(i));
        }
        let slack = system.step_tolerance();
        let mut defects = Vec::with_capacity(points.len() - 1);
        for (i, w) in points.windows(2).enumerate() {
            let d = system.distance(&system.step(&w[0]), &w[1]);
            if d > delta + slack {
                return Err(ShadowError::DefectExceedsDelta { index: i, defect: d, delta });
            }
            defects.push(d);
        }
        Ok(PseudoOrbit { points, delta, defects, class_trace: None })
    }

    /// Number of steps `L`.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() <= 1
    }
}

impl PseudoOrbit<SymbolicPoint> {
    /// Like [`PseudoOrbit::new`], also recording the class trace when the
    /// system is chain transitive.
    pub fn symbolic(system: &SymbolicSystem, points: Vec<SymbolicPoint>, delta: f64) -> Result<Self, ShadowError> {
        let mut po = PseudoOrbit::new(system, points, delta)?;
        if let Ok(d) = decomposition(system) {
            po.class_trace = Some(po.points.iter().map(|p| d.class(p.first() as usize).unwrap()).collect());
        }
        Ok(po)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowResult<P> {
    pub shadow_point: P,
    /// `max_i d(f^i(y), x_i)` over the pseudo-orbit, recomputed.
    pub epsilon_achieved: f64,
    pub horizon: usize,
    pub same_class: bool,
}

/// Cyclic decomposition of a chain transitive SFT.
pub(crate) fn decomposition(system: &SymbolicSystem) -> Result<CyclicDecomposition, ShadowError> {
    let graph = symbolic_transition_graph(system);
    if !is_chain_transitive(&graph) {
        return Err(ShadowError::NotChainTransitive);
    }
    Ok(chain::whole_decomposition(&graph)?)
}

/// `(component, class)` of every symbol; `None` for non-recurrent symbols.
pub(crate) fn class_labels(system: &SymbolicSystem) -> Vec<Option<(usize, usize)>> {
    let graph = symbolic_transition_graph(system);
    let mut labels = vec![None; graph.len()];
    for (ci, comp) in chain_components(&graph).components.iter().enumerate() {
        let d = cyclic_decomposition(comp, &graph).expect("chain components are strongly connected");
        for &v in comp {
            labels[v] = Some((ci, d.class(v).unwrap()));
        }
    }
    labels
}

/// `m` with `delta = 2^-m`, `m >= 1`.
pub fn dyadic_exponent(delta: f64) -> Result<usize, ShadowError> {
    let m = -delta.log2();
    if delta > 0.0 && m >= 1.0 && m.fract() == 0.0 && m <= 1023.0 {
        Ok(m as usize)
    } else {
        Err(ShadowError::BadDelta(delta))
    }
}

/// Seeded pseudo-orbit of `length` steps starting with symbol `first`. Each
/// `x_{i+1}` either equals `shift(x_i)` or agrees with it on exactly its
/// first `m` symbols before continuing along a random admissible walk.
pub fn random_pseudo_orbit(
    system: &SymbolicSystem,
    first: Symbol,
    length: usize,
    m: usize,
    seed: u64,
) -> Result<PseudoOrbit<SymbolicPoint>, ShadowError> {
    if m == 0 || length == 0 {
        return Err(ShadowError::BadParameter("need m >= 1 and length >= 1".into()));
    }
    if first as usize >= system.size() {
        return Err(ShadowError::BadParameter(format!("unknown symbol {first}")));
    }
    let mut rng = seed::stream(seed, 0);
    let mut points = Vec::with_capacity(length + 1);
    points.push(system.random_point(first, m + 4, &mut rng));
    for _ in 0..length {
        let prev: &SymbolicPoint = points.last().unwrap();
        let next = if rng.gen_bool(0.25) {
            prev.shift()
        } else {
            let mut word = prev.word(m + 1)[1..].to_vec();
            let walk = rng.gen_range(1..=4);
            for _ in 0..walk {
                let succ = system.successors(*word.last().unwrap());
                word.push(succ[rng.gen_range(0..succ.len())]);
            }
            system.extend_least(&word)
        };
        points.push(next);
    }
    PseudoOrbit::symbolic(system, points, (-(m as f64)).exp2())
}

/// Checks `max_i d(f^i(candidate), x_i) <= epsilon`, resolving symbolic
/// distances to `depth`. Returns the verdict and the maximum error.
pub fn verify_shadowing<S: DynamicalSystem>(
    system: &S,
    po: &PseudoOrbit<S::Point>,
    candidate: &S::Point,
    epsilon: f64,
    depth: usize,
) -> Result<(bool, f64), ShadowError> {
    if !system.contains(candidate) {
        return Err(ShadowError::System(SystemError::NotMember(format!("{candidate:?}"))));
    }
    let mut y = candidate.clone();
    let mut worst = 0.0f64;
    for (i, x) in po.points.iter().enumerate() {
        if i > 0 {
            y = system.step(&y);
        }
        worst = worst.max(system.distance_at_depth(&y, x, depth));
    }
    Ok((worst <= epsilon, worst))
}

/// Diagonal readout `y = x_0[0] x_1[0] ... x_{L-1}[0] x_L`.
pub fn sft_shadow(
    system: &SymbolicSystem,
    po: &PseudoOrbit<SymbolicPoint>,
) -> Result<ShadowResult<SymbolicPoint>, ShadowError> {
    dyadic_exponent(po.delta)?;
    let l = po.len();
    let word: Vec<Symbol> = po.points[..l].iter().map(SymbolicPoint::first).collect();
    let y = SymbolicPoint::concat(&word, &po.points[l]);
    debug_assert!(system.contains(&y));
    let (_, eps) = verify_shadowing(system, po, &y, f64::INFINITY, crate::systems::METRIC_DEPTH)?;
    let labels = class_labels(system);
    let same_class = labels[y.first() as usize] == labels[po.points[0].first() as usize];
    Ok(ShadowResult { shadow_point: y, epsilon_achieved: eps, horizon: l, same_class })
}

/// Whether every step advances the cyclic class by one.
pub fn is_along_d(system: &SymbolicSystem, po: &PseudoOrbit<SymbolicPoint>) -> Result<bool, ShadowError> {
    Ok(first_class_break(system, &po.points)?.is_none())
}

pub(crate) fn first_class_break(system: &SymbolicSystem, points: &[SymbolicPoint]) -> Result<Option<usize>, ShadowError> {
    let d = decomposition(system)?;
    let class = |p: &SymbolicPoint| d.class(p.first() as usize).unwrap();
    Ok(points.windows(2).position(|w| class(&w[1]) != (class(&w[0]) + 1) % d.m))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub class: usize,
    pub trials: usize,
    pub worst_epsilon: f64,
    pub all_same_class: bool,
    /// All shadows stayed in class and met `2^(-m+1)`.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DspReport {
    pub m_delta: usize,
    pub period: usize,
    pub length: usize,
    pub classes: Vec<ClassReport>,
    /// Pass verdicts agree across all classes.
    pub uniform: bool,
}

/// Runs `trials` seeded pseudo-orbits from every cyclic class through
/// [`sft_shadow`]. Trials run in parallel; results are merged in trial order.
pub fn dsp_check(
    system: &SymbolicSystem,
    m_delta: usize,
    trials: usize,
    length: usize,
    seed: u64,
) -> Result<DspReport, ShadowError> {
    let d = decomposition(system)?;
    let jobs: Vec<(usize, usize)> = (0..d.m).flat_map(|c| (0..trials).map(move |t| (c, t))).collect();
    let outcomes: Vec<Result<(f64, bool), ShadowError>> = jobs
        .par_iter()
        .map(|&(c, t)| {
            let mut rng = seed::stream(seed, ((c as u64) << 32) | t as u64);
            let members = &d.classes[c];
            let first = members[rng.gen_range(0..members.len())] as Symbol;
            let po = random_pseudo_orbit(system, first, length, m_delta, rng.gen())?;
            let r = sft_shadow(system, &po)?;
            let y_class = d.class(r.shadow_point.first() as usize);
            Ok((r.epsilon_achieved, r.same_class && y_class == Some(c)))
        })
        .collect();
    let bound = (1.0 - m_delta as f64).exp2();
    let mut classes = Vec::with_capacity(d.m);
    for c in 0..d.m {
        let mut worst = 0.0f64;
        let mut all_same = true;
        for r in &outcomes[c * trials..(c + 1) * trials] {
            let (eps, same) = r.clone()?;
            worst = worst.max(eps);
            all_same &= same;
        }
        classes.push(ClassReport { class: c, trials, worst_epsilon: worst, all_same_class: all_same, pass: all_same && worst <= bound });
    }
    let uniform = classes.windows(2).all(|w| w[0].pass == w[1].pass);
    Ok(DspReport { m_delta, period: d.m, length, classes, uniform })
}
