use std::collections::BTreeSet;

use crate::systems::{FiniteMapSystem, SystemError};

use super::StatsError;

fn check_point(system: &FiniteMapSystem, p: usize) -> Result<(), StatsError> {
    if p < system.len() {
        Ok(())
    } else {
        Err(StatsError::System(SystemError::NotMember(p.to_string())))
    }
}

/// The cycle the orbit of `start` eventually enters, sorted.
pub fn omega_bar_exact_finite(system: &FiniteMapSystem, start: usize) -> Result<Vec<usize>, StatsError> {
    check_point(system, start)?;
    let mut seen = vec![usize::MAX; system.len()];
    let mut p = start;
    let mut t = 0;
    while seen[p] == usize::MAX {
        seen[p] = t;
        p = system.image(p);
        t += 1;
    }
    let mut cycle = vec![p];
    let mut q = system.image(p);
    while q != p {
        cycle.push(q);
        q = system.image(q);
    }
    cycle.sort_unstable();
    Ok(cycle)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIdentityReport {
    pub m: usize,
    /// `ω̄(x, f)`.
    pub lhs: Vec<usize>,
    /// `ω̄(f^i(x), f^m)` for `i = 0..m`.
    pub pieces: Vec<Vec<usize>>,
    /// `ω̄(x, f)` equals the union of the pieces.
    pub union_holds: bool,
    /// `f^i(ω̄(x, f^m)) = ω̄(f^i(x), f^m)` for every `i < m`.
    pub image_holds: bool,
}

impl PowerIdentityReport {
    pub fn holds(&self) -> bool {
        self.union_holds && self.image_holds
    }
}

pub fn omega_bar_power_identity_check(
    system: &FiniteMapSystem,
    start: usize,
    m: usize,
) -> Result<PowerIdentityReport, StatsError> {
    if m == 0 {
        return Err(StatsError::BadParameter("m must be at least 1".into()));
    }
    let lhs = omega_bar_exact_finite(system, start)?;
    let power = system.power(m);
    let base = omega_bar_exact_finite(&power, start)?;
    let mut pieces = Vec::with_capacity(m);
    let mut image_holds = true;
    for i in 0..m {
        let piece = omega_bar_exact_finite(&power, system.iterate(start, i))?;
        let image: BTreeSet<usize> = base.iter().map(|&p| system.iterate(p, i)).collect();
        image_holds &= image.into_iter().collect::<Vec<_>>() == piece;
        pieces.push(piece);
    }
    let union: BTreeSet<usize> = pieces.iter().flatten().copied().collect();
    let union_holds = union.into_iter().collect::<Vec<_>>() == lhs;
    Ok(PowerIdentityReport { m, lhs, pieces, union_holds, image_holds })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureCenter {
    /// Union of all cycles of the functional graph.
    pub center: Vec<usize>,
    /// `{x : x ∈ ω̄(x)}`, pointwise.
    pub recurrent: Vec<usize>,
    /// Union of supports of invariant measures, as the stable image `f^n(X)`.
    pub invariant_supports: Vec<usize>,
    pub agree: bool,
}

pub fn measure_center_finite(system: &FiniteMapSystem) -> MeasureCenter {
    let n = system.len();
    // Cycle detection by coloured walks.
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    for s in 0..n {
        let mut path = Vec::new();
        let mut p = s;
        while state[p] == 0 {
            state[p] = 1;
            path.push(p);
            p = system.image(p);
        }
        if state[p] == 1 {
            let mut q = p;
            loop {
                on_cycle[q] = true;
                q = system.image(q);
                if q == p {
                    break;
                }
            }
        }
        for v in path {
            state[v] = 2;
        }
    }
    let center: Vec<usize> = (0..n).filter(|&p| on_cycle[p]).collect();

    let recurrent: Vec<usize> = (0..n)
        .filter(|&p| omega_bar_exact_finite(system, p).is_ok_and(|w| w.binary_search(&p).is_ok()))
        .collect();

    let mut image: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let mut next = vec![false; n];
        for p in 0..n {
            if image[p] {
                next[system.image(p)] = true;
            }
        }
        image = next;
    }
    let invariant_supports: Vec<usize> = (0..n).filter(|&p| image[p]).collect();

    let agree = center == recurrent && center == invariant_supports;
    MeasureCenter { center, recurrent, invariant_supports, agree }
}

/// Least `k` such that every window of `k` consecutive times contains a
/// visit to every point; the map must be a single cycle.
pub fn uniform_recurrence_gap(system: &FiniteMapSystem) -> Result<usize, StatsError> {
    if !system.is_single_cycle() {
        return Err(StatsError::NotMinimal);
    }
    let n = system.len();
    let mut last = vec![None; n];
    let mut gap = 1;
    let mut p = 0;
    for t in 0..2 * n + 1 {
        if let Some(prev) = last[p] {
            gap = gap.max(t - prev);
        }
        last[p] = Some(t);
        p = system.image(p);
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::Metric;

    fn map(v: Vec<usize>) -> FiniteMapSystem {
        FiniteMapSystem::from_indices(v, Metric::Discrete).unwrap()
    }

    #[test]
    fn exact_omega_bar() {
        let f = map(vec![1, 2, 1]);
        assert_eq!(omega_bar_exact_finite(&f, 0).unwrap(), vec![1, 2]);
        let fixed = map(vec![0, 0]);
        assert_eq!(omega_bar_exact_finite(&fixed, 0).unwrap(), vec![0]);
        assert!(omega_bar_exact_finite(&f, 7).is_err());
    }

    #[test]
    fn six_cycle_squared() {
        let f = map(vec![1, 2, 3, 4, 5, 0]);
        let r = omega_bar_power_identity_check(&f, 0, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.pieces, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let fixed = map(vec![0]);
        assert!(omega_bar_power_identity_check(&fixed, 0, 3).unwrap().holds());
    }

    #[test]
    fn measure_centers() {
        assert_eq!(measure_center_finite(&map(vec![1, 2, 1])).center, vec![1, 2]);
        let id = measure_center_finite(&map(vec![0, 1, 2]));
        assert_eq!(id.center, vec![0, 1, 2]);
        assert!(id.agree);
    }

    #[test]
    fn recurrence_gaps() {
        assert_eq!(uniform_recurrence_gap(&map(vec![0])), Ok(1));
        assert_eq!(uniform_recurrence_gap(&map(vec![1, 2, 3, 4, 0])), Ok(5));
        assert_eq!(uniform_recurrence_gap(&map(vec![1, 2, 1])), Err(StatsError::NotMinimal));
    }
}
