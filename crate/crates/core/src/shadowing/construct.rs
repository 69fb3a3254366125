use crate::chain::{path_of_length, TransitionGraph};
use crate::systems::{DynamicalSystem, SymbolicPoint, SymbolicSystem};

use super::{decomposition, ShadowError};

/// Simple cycles, each rotated to start at its least vertex, ordered by
/// length then lexicographically. Stops after `limit` cycles.
pub fn simple_cycles(graph: &TransitionGraph, limit: usize) -> Vec<Vec<usize>> {
    fn dfs(
        graph: &TransitionGraph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        let v = *path.last().unwrap();
        for &w in graph.successors(v) {
            if out.len() >= limit {
                return;
            }
            if w == start {
                out.push(path.clone());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                dfs(graph, start, path, on_path, out, limit);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.len()];
    for s in 0..graph.len() {
        if out.len() >= limit {
            break;
        }
        on_path[s] = true;
        dfs(graph, s, &mut vec![s], &mut on_path, &mut out, limit);
        on_path[s] = false;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Shortest walk of length at least `min_len` from `from` onto `cycle`.
/// Returns the walk and the position on the cycle where it lands.
pub fn glue_to_cycle(
    graph: &TransitionGraph,
    from: usize,
    cycle: &[usize],
    min_len: usize,
) -> Option<(Vec<usize>, usize)> {
    let max_len = min_len.max(1) + graph.len() * graph.len() + cycle.len();
    (min_len.max(1)..=max_len).find_map(|k| {
        cycle
            .iter()
            .enumerate()
            .find_map(|(pos, &target)| path_of_length(graph, from, target, k).map(|p| (p, pos)))
    })
}

/// Block lengths `first, first*ratio, ...` cycling through `anchors` anchor
/// points, the last block cut so the lengths sum to `horizon`.
pub fn geometric_schedule(anchors: usize, first: usize, ratio: f64, horizon: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut len = first.max(1) as f64;
    let mut used = 0;
    let mut k = 0;
    while used < horizon {
        let l = (len.round() as usize).max(1).min(horizon - used);
        out.push((k % anchors.max(1), l));
        used += l;
        len *= ratio;
        k += 1;
    }
    out
}

/// Sequence that follows the orbit of `anchors[a]` for each scheduled
/// `(a, length)` block. Each new block enters its periodic orbit at the
/// least phase that keeps the cyclic classes advancing, so the result runs
/// along the cyclic decomposition with defects only at block joins.
pub fn alternating_blocks(
    system: &SymbolicSystem,
    anchors: &[SymbolicPoint],
    schedule: &[(usize, usize)],
) -> Result<Vec<SymbolicPoint>, ShadowError> {
    let d = decomposition(system)?;
    for (i, p) in anchors.iter().enumerate() {
        if !p.is_periodic() || !system.contains(p) {
            return Err(ShadowError::BadParameter(format!("anchor {i} is not a periodic point of the system")));
        }
    }
    let class = |p: &SymbolicPoint| d.class(p.first() as usize).unwrap();
    let mut out: Vec<SymbolicPoint> = Vec::with_capacity(schedule.iter().map(|b| b.1).sum());
    for &(a, len) in schedule {
        let anchor = anchors
            .get(a)
            .ok_or_else(|| ShadowError::BadParameter(format!("no anchor {a}")))?;
        let mut p = match out.last() {
            None => anchor.clone(),
            Some(prev) => {
                let want = (class(prev) + 1) % d.m;
                let t = (0..anchor.period_len())
                    .find(|&t| class(&anchor.shift_by(t)) == want)
                    .expect("periodic orbits meet every class");
                anchor.shift_by(t)
            }
        };
        for _ in 0..len {
            out.push(p.clone());
            p = system.step(&p);
        }
    }
    Ok(out)
}
