use rand::Rng;

use crate::chain::symbolic_transition_graph;
use crate::seed;
use crate::shadowing::{self, glue_to_cycle, sft_shadow, simple_cycles, PseudoOrbit};
use crate::systems::{topological_entropy, Symbol, SymbolicPoint, SymbolicSystem};

use super::omega::MIN_HORIZON;
use super::{check_tail, tail_start, StatsError};

#[derive(Debug, Clone, PartialEq)]
pub struct IrregularityReport {
    /// Prefix Birkhoff averages `(1/n) sum_{i<n} phi(f^i x)`.
    pub averages: Vec<f64>,
    pub lim_sup: f64,
    pub lim_inf: f64,
    pub oscillation: f64,
    pub epsilon: f64,
    pub tail_fraction: f64,
    pub irregular: bool,
}

/// Oscillation of the prefix averages of `observations` over the tail window.
pub fn birkhoff_irregularity(observations: &[f64], epsilon: f64, tail_fraction: f64) -> Result<IrregularityReport, StatsError> {
    if observations.len() < MIN_HORIZON {
        return Err(StatsError::HorizonTooShort { need: MIN_HORIZON, got: observations.len() });
    }
    check_tail(tail_fraction)?;
    let mut sum = 0.0;
    let averages: Vec<f64> = observations
        .iter()
        .enumerate()
        .map(|(i, v)| {
            sum += v;
            sum / (i + 1) as f64
        })
        .collect();
    let window = &averages[tail_start(averages.len(), tail_fraction) - 1..];
    let lim_sup = window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lim_inf = window.iter().cloned().fold(f64::INFINITY, f64::min);
    let oscillation = lim_sup - lim_inf;
    Ok(IrregularityReport {
        averages,
        lim_sup,
        lim_inf,
        oscillation,
        epsilon,
        tail_fraction,
        irregular: oscillation > epsilon,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrregularWitness {
    pub point: SymbolicPoint,
    pub report: IrregularityReport,
    /// Simple cycles carrying `K_0` and `K_1`.
    pub cycles: [Vec<usize>; 2],
    /// Symbols where `phi = 1`: those on `K_1` but not on `K_0`.
    pub observable: Vec<usize>,
    /// Steps spent in each stage of the pseudo-orbit.
    pub stages: Vec<usize>,
    pub shadow_epsilon: f64,
    pub class: usize,
}

/// Picks the ordered pair of distinct simple cycles whose first-symbol
/// indicator separates them most, vertex-disjoint pairs first.
fn separated_cycles(cycles: &[Vec<usize>]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for (i, k0) in cycles.iter().enumerate() {
        for (j, k1) in cycles.iter().enumerate() {
            if i == j {
                continue;
            }
            let only = k1.iter().filter(|v| !k0.contains(v)).count();
            let sep = only as f64 / k1.len() as f64;
            if sep > 0.0 && best.is_none_or(|b| sep > b.2) {
                best = Some((i, j, sep));
            }
        }
    }
    best
}

/// Builds a point of class `class` whose first-symbol Birkhoff averages keep
/// oscillating: a pseudo-orbit dwells near `K_0` and `K_1` alternately, for
/// times growing by `ratio`, joined by chains; it is then shadowed by
/// [`sft_shadow`]. The verdict uses `epsilon = 1/4` and the tail window
/// `max(1/2, 1 - 1/ratio^2)`.
pub fn irregular_witness_sft(
    system: &SymbolicSystem,
    class: usize,
    ratio: f64,
    horizon: usize,
    seed: u64,
) -> Result<IrregularWitness, StatsError> {
    let dec = shadowing::decomposition(system)?;
    if class >= dec.m {
        return Err(StatsError::BadParameter(format!("class {class} out of range 0..{}", dec.m)));
    }
    if !(ratio > 1.0) {
        return Err(StatsError::BadParameter(format!("block ratio {ratio} must exceed 1")));
    }
    if horizon < MIN_HORIZON {
        return Err(StatsError::HorizonTooShort { need: MIN_HORIZON, got: horizon });
    }
    let graph = symbolic_transition_graph(system);
    let cycles = simple_cycles(&graph, 4096);
    let (i0, i1, _) = separated_cycles(&cycles).ok_or(StatsError::NoDisjointCycles)?;
    if topological_entropy(system) <= 0.0 {
        return Err(StatsError::ZeroEntropy);
    }
    let ks = [cycles[i0].clone(), cycles[i1].clone()];
    let observable: Vec<usize> = ks[1].iter().copied().filter(|v| !ks[0].contains(v)).collect();

    let mut rng = seed::stream(seed, 0);
    let members = &dec.classes[class];
    let start = members[rng.gen_range(0..members.len())] as Symbol;
    let lead = system.random_point(start, 4, &mut rng).word(5);

    let mut points: Vec<SymbolicPoint> = Vec::with_capacity(horizon);
    let mut stages = Vec::new();
    let mut dwell = 4.0f64;
    let mut from = *lead.last().unwrap() as usize;
    let mut prefix: Vec<Symbol> = lead[..lead.len() - 1].to_vec();
    let mut s = 0;
    while points.len() < horizon {
        let k = &ks[s % 2];
        let (path, pos) = glue_to_cycle(&graph, from, k, 1).expect("transitive graphs reach every cycle");
        prefix.extend(path[..path.len() - 1].iter().map(|&v| v as Symbol));
        let period: Vec<Symbol> = (0..k.len()).map(|t| k[(pos + t) % k.len()] as Symbol).collect();
        let z = SymbolicPoint::new(&prefix, &period);
        let steps = (prefix.len() + dwell.round() as usize).min(horizon - points.len());
        for t in 0..steps {
            points.push(z.shift_by(t));
        }
        stages.push(steps);
        let last = points.last().unwrap();
        from = last.symbol(1) as usize;
        prefix = Vec::new();
        dwell *= ratio;
        s += 1;
    }
    let po = PseudoOrbit::new(system, points, 0.5)?;
    let shadow = sft_shadow(system, &po)?;
    let y = shadow.shadow_point;
    let phi: Vec<f64> = (0..horizon)
        .map(|i| observable.contains(&(y.symbol(i) as usize)) as u8 as f64)
        .collect();
    let tail = (1.0 - 1.0 / (ratio * ratio)).max(0.5);
    let report = birkhoff_irregularity(&phi, 0.25, tail)?;
    Ok(IrregularWitness {
        class: dec.class(y.first() as usize).unwrap(),
        point: y,
        report,
        cycles: ks,
        observable,
        stages,
        shadow_epsilon: shadow.epsilon_achieved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{sft_from_forbidden_words, Alphabet};

    #[test]
    fn regular_examples() {
        let fixed = birkhoff_irregularity(&[1.0; 200], 0.25, 0.5).unwrap();
        assert_eq!(fixed.oscillation, 0.0);
        assert!(!fixed.irregular);
        let alt: Vec<f64> = (0..1000).map(|i| (i % 2) as f64).collect();
        let r = birkhoff_irregularity(&alt, 0.25, 0.5).unwrap();
        assert!((r.averages.last().unwrap() - 0.5).abs() < 1e-3);
        assert!(r.oscillation < 2e-3);
        assert!(birkhoff_irregularity(&[0.0; 50], 0.25, 0.5).is_err());
    }

    #[test]
    fn doubling_blocks() {
        let mut obs = Vec::new();
        let mut k = 0;
        while obs.len() < 1 << 16 {
            let len = (1usize << k).min((1 << 16) - obs.len());
            obs.extend(std::iter::repeat_n((k % 2) as f64, len));
            k += 1;
        }
        let r = birkhoff_irregularity(&obs, 0.25, 0.75).unwrap();
        assert!(r.oscillation >= 1.0 / 3.0 - 0.01, "{}", r.oscillation);
    }

    #[test]
    fn golden_mean_witness() {
        let g = sft_from_forbidden_words(&Alphabet::numeric(2).unwrap(), &[vec![1, 1]]).unwrap();
        let w = irregular_witness_sft(&g, 0, 4.0, 1 << 14, 3).unwrap();
        assert_eq!(w.cycles, [vec![0], vec![0, 1]]);
        assert_eq!(w.observable, vec![1]);
        assert!(w.report.irregular, "{}", w.report.oscillation);
    }

    #[test]
    fn full_shift_witness() {
        let full = SymbolicSystem::full_shift(2);
        let w = irregular_witness_sft(&full, 0, 2.0, 1 << 16, 1).unwrap();
        assert!(w.report.oscillation >= 1.0 / 3.0 - 0.05, "{}", w.report.oscillation);
        assert!(w.shadow_epsilon <= 1.0);
    }

    #[test]
    fn two_point_has_one_cycle() {
        let two = SymbolicSystem::from_matrix(vec![vec![false, true], vec![true, false]]).unwrap();
        assert_eq!(irregular_witness_sft(&two, 0, 2.0, 1024, 0), Err(StatsError::NoDisjointCycles));
    }
}
