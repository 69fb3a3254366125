use rayon::prelude::*;

use crate::systems::DynamicalSystem;

use super::density::from_hits;
use super::{check_tail, tail_start, StatsError};

pub(crate) const MIN_HORIZON: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaBarEstimate<P> {
    pub candidates: Vec<P>,
    /// Upper-density estimate of the visits to each candidate's ball.
    pub upper: Vec<f64>,
    pub theta: f64,
    /// Ball radius; 0 means exact equality.
    pub epsilon: f64,
    pub tail_fraction: f64,
    pub horizon: usize,
    /// Indices of candidates with `upper > theta`.
    pub members: Vec<usize>,
}

impl<P: Clone> OmegaBarEstimate<P> {
    pub fn points(&self) -> Vec<P> {
        self.members.iter().map(|&i| self.candidates[i].clone()).collect()
    }
}

fn near<S: DynamicalSystem>(system: &S, a: &S::Point, b: &S::Point, epsilon: f64) -> bool {
    if epsilon == 0.0 {
        system.same_point(a, b)
    } else {
        system.distance(a, b) < epsilon
    }
}

/// Estimates `d̄({i : d(x_i, y) < epsilon})` for each candidate `y` and keeps
/// those above `theta`. `epsilon = 0` asks for exact equality.
pub fn omega_bar_estimate<S: DynamicalSystem>(
    system: &S,
    samples: &[S::Point],
    candidates: &[S::Point],
    epsilon: f64,
    theta: f64,
    tail_fraction: f64,
) -> Result<OmegaBarEstimate<S::Point>, StatsError> {
    if samples.len() < MIN_HORIZON {
        return Err(StatsError::HorizonTooShort { need: MIN_HORIZON, got: samples.len() });
    }
    check_tail(tail_fraction)?;
    if !(epsilon >= 0.0) || !(theta >= 0.0) {
        return Err(StatsError::BadParameter("epsilon and theta must be nonnegative".into()));
    }
    let upper: Vec<f64> = candidates
        .iter()
        .map(|y| {
            let hits: Vec<bool> = samples.iter().map(|x| near(system, x, y, epsilon)).collect();
            from_hits(&hits, tail_fraction).upper
        })
        .collect();
    let members = (0..candidates.len()).filter(|&i| upper[i] > theta).collect();
    Ok(OmegaBarEstimate {
        candidates: candidates.to_vec(),
        upper,
        theta,
        epsilon,
        tail_fraction,
        horizon: samples.len(),
        members,
    })
}

/// Candidates visited at some time `i >= theta n_0`, `n_0` the first prefix
/// length of the tail window: the finite-horizon ω-limit reading matched to
/// [`omega_bar_estimate`], since a prefix density above `theta` at `n >= n_0`
/// needs a visit at or after `theta n_0`.
pub fn omega_limit_estimate<S: DynamicalSystem>(
    system: &S,
    samples: &[S::Point],
    candidates: &[S::Point],
    epsilon: f64,
    theta: f64,
    tail_fraction: f64,
) -> Result<Vec<usize>, StatsError> {
    check_tail(tail_fraction)?;
    let from = (theta * tail_start(samples.len(), tail_fraction) as f64).floor() as usize;
    let from = from.min(samples.len().saturating_sub(1));
    Ok((0..candidates.len())
        .filter(|&i| samples[from..].iter().any(|x| near(system, x, &candidates[i], epsilon)))
        .collect())
}

/// Centres of `cells` equal cells of `[0, 1]`.
pub fn grid_candidates(cells: usize) -> Vec<f64> {
    (0..cells).map(|k| (k as f64 + 0.5) / cells as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub x: usize,
    pub y: usize,
    /// `ω̄(x) \ ω̄(y)` estimate is nonempty.
    pub difference_nonempty: bool,
    pub intersection_nonempty: bool,
    /// Some member of the `ω̄(x)` estimate has no period up to the bound.
    pub non_periodic_found: bool,
}

impl PairRecord {
    pub fn passes(&self) -> bool {
        self.difference_nonempty && self.intersection_nonempty && self.non_periodic_found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScrambledWitness<P> {
    pub points: Vec<P>,
    /// Candidate indices in each point's ω̄ estimate.
    pub estimates: Vec<Vec<usize>>,
    pub pairs: Vec<PairRecord>,
    pub theta: f64,
    pub epsilon: f64,
    pub period_bound: usize,
    pub horizon: usize,
    pub verdict: bool,
}

fn is_periodic<S: DynamicalSystem>(system: &S, p: &S::Point, bound: usize) -> bool {
    let mut q = p.clone();
    (1..=bound).any(|_| {
        q = system.step(&q);
        system.same_point(&q, p)
    })
}

/// Finite-witness check of an ω̄-scrambled family: for every ordered pair the
/// ω̄ estimates must differ, meet, and contain a point of period above
/// `period_bound`. Per-point estimates run in parallel, merged in order.
#[allow(clippy::too_many_arguments)]
pub fn scrambled_family_check<S>(
    system: &S,
    points: &[S::Point],
    candidates: &[S::Point],
    horizon: usize,
    theta: f64,
    epsilon: f64,
    tail_fraction: f64,
    period_bound: usize,
) -> Result<ScrambledWitness<S::Point>, StatsError>
where
    S: DynamicalSystem + Sync,
    S::Point: Send + Sync,
{
    if points.len() < 2 {
        return Err(StatsError::BadParameter("family needs at least two points".into()));
    }
    let estimates: Vec<Vec<usize>> = points
        .par_iter()
        .map(|p| {
            let mut samples = Vec::with_capacity(horizon);
            let mut q = p.clone();
            for _ in 0..horizon {
                samples.push(q.clone());
                q = system.step(&q);
            }
            omega_bar_estimate(system, &samples, candidates, epsilon, theta, tail_fraction).map(|e| e.members)
        })
        .collect::<Result<_, _>>()?;
    let periodic: Vec<bool> = candidates.iter().map(|c| is_periodic(system, c, period_bound)).collect();
    let mut pairs = Vec::new();
    for x in 0..points.len() {
        for y in 0..points.len() {
            if x == y {
                continue;
            }
            let (ex, ey) = (&estimates[x], &estimates[y]);
            pairs.push(PairRecord {
                x,
                y,
                difference_nonempty: ex.iter().any(|c| !ey.contains(c)),
                intersection_nonempty: ex.iter().any(|c| ey.contains(c)),
                non_periodic_found: ex.iter().any(|&c| !periodic[c]),
            });
        }
    }
    let verdict = pairs.iter().all(PairRecord::passes);
    Ok(ScrambledWitness {
        points: points.to_vec(),
        estimates,
        pairs,
        theta,
        epsilon,
        period_bound,
        horizon,
        verdict,
    })
}
