use crate::systems::OrbitSegment;

use super::{check_tail, tail_start, StatsError};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub horizon: usize,
    /// `|A ∩ [0, n)| / n` for `n = 1..=H`.
    pub prefix_densities: Vec<f64>,
    pub upper: f64,
    pub lower: f64,
    pub tail_fraction: f64,
}

/// Upper and lower density of `indices` as the max and min prefix density
/// over `n >= (1 - tail_fraction) H`.
pub fn upper_lower_density(indices: &[usize], horizon: usize, tail_fraction: f64) -> Result<DensityEstimate, StatsError> {
    if horizon < 2 {
        return Err(StatsError::HorizonTooShort { need: 2, got: horizon });
    }
    check_tail(tail_fraction)?;
    let mut hit = vec![false; horizon];
    for &i in indices {
        if i < horizon {
            hit[i] = true;
        }
    }
    Ok(from_hits(&hit, tail_fraction))
}

pub(crate) fn from_hits(hit: &[bool], tail_fraction: f64) -> DensityEstimate {
    let horizon = hit.len();
    let mut count = 0usize;
    let prefix_densities: Vec<f64> = hit
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            count += h as usize;
            count as f64 / (i + 1) as f64
        })
        .collect();
    let window = &prefix_densities[tail_start(horizon, tail_fraction) - 1..];
    let upper = window.iter().cloned().fold(0.0, f64::max);
    let lower = window.iter().cloned().fold(1.0, f64::min);
    DensityEstimate { horizon, prefix_densities, upper, lower, tail_fraction }
}

/// Normalised visit counts of an orbit segment.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure<P> {
    /// Sorted by point; weights are positive and sum to 1.
    pub support: Vec<(P, f64)>,
    pub horizon: usize,
}

impl<P: PartialEq> EmpiricalMeasure<P> {
    pub fn weight(&self, p: &P) -> f64 {
        self.support.iter().find(|(q, _)| q == p).map_or(0.0, |(_, w)| *w)
    }
}

pub fn empirical_measure<P: Ord + Clone>(orbit: &OrbitSegment<P>) -> EmpiricalMeasure<P> {
    let mut samples: Vec<&P> = orbit.samples.iter().collect();
    samples.sort();
    let h = samples.len() as f64;
    let mut support: Vec<(P, f64)> = Vec::new();
    for p in samples {
        match support.last_mut() {
            Some((q, w)) if q == p => *w += 1.0,
            _ => support.push((p.clone(), 1.0)),
        }
    }
    for (_, w) in &mut support {
        *w /= h;
    }
    EmpiricalMeasure { support, horizon: orbit.horizon() }
}
