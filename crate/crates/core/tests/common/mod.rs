#![allow(dead_code)]

use rand::Rng;
use symdyn::{FiniteMapSystem, Metric, TransitionGraph};

/// Reachability by exactly `k` steps, `k = 0..=max`, as boolean matrices.
pub fn walk_matrices(g: &TransitionGraph, max: usize) -> Vec<Vec<Vec<bool>>> {
    let n = g.len();
    let mut cur: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut out = vec![cur.clone()];
    for _ in 0..max {
        let next = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| cur[i][k] && g.has_edge(k, j))).collect())
            .collect();
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Transitive closure with paths of length >= 1.
pub fn closure(g: &TransitionGraph) -> Vec<Vec<bool>> {
    let n = g.len();
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| g.has_edge(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

pub fn is_strongly_connected(g: &TransitionGraph) -> bool {
    let c = closure(g);
    !g.is_empty() && c.iter().all(|row| row.iter().all(|&b| b))
}

pub fn graph_from_mask(n: usize, mask: u64) -> TransitionGraph {
    let edges: Vec<(usize, usize)> = (0..n * n).filter(|&b| mask >> b & 1 == 1).map(|b| (b / n, b % n)).collect();
    TransitionGraph::from_edges(n, &edges)
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> TransitionGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    TransitionGraph::from_edges(n, &edges)
}

/// A random Hamiltonian cycle plus up to `n` random extra edges.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize) -> TransitionGraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let extra = rng.gen_range(0..=n);
    let p: f64 = rng.gen_range(0.0..0.4);
    for u in 0..n {
        for v in 0..n {
            if edges.len() < n + extra && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    TransitionGraph::from_edges(n, &edges)
}

pub fn random_functional<R: Rng>(rng: &mut R, n: usize) -> FiniteMapSystem {
    let map = (0..n).map(|_| rng.gen_range(0..n)).collect();
    FiniteMapSystem::from_indices(map, Metric::Discrete).unwrap()
}

/// Simple cycle lengths by brute-force DFS.
pub fn cycle_lengths(g: &TransitionGraph) -> Vec<usize> {
    fn go(g: &TransitionGraph, s: usize, v: usize, depth: usize, seen: &mut Vec<bool>, out: &mut Vec<usize>) {
        for &w in g.successors(v) {
            if w == s {
                out.push(depth + 1);
            } else if w > s && !seen[w] {
                seen[w] = true;
                go(g, s, w, depth + 1, seen, out);
                seen[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; g.len()];
    for s in 0..g.len() {
        go(g, s, s, 0, &mut seen, &mut out);
    }
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn random_transitive_sft<R: Rng>(rng: &mut R, n: usize) -> symdyn::SymbolicSystem {
    let g = random_strongly_connected(rng, n);
    let m = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    symdyn::SymbolicSystem::from_matrix(m).unwrap()
}

/// All eventually periodic points with `preperiod + period <= size` over `k` symbols.
pub fn small_points(k: u16, size: usize) -> Vec<symdyn::SymbolicPoint> {
    let mut out = std::collections::BTreeSet::new();
    for total in 1..=size {
        let count = (k as usize).pow(total as u32);
        for code in 0..count {
            let mut c = code;
            let w: Vec<u16> = (0..total)
                .map(|_| {
                    let s = (c % k as usize) as u16;
                    c /= k as usize;
                    s
                })
                .collect();
            for split in 0..total {
                out.insert(symdyn::SymbolicPoint::new(&w[..split], &w[split..]));
            }
        }
    }
    out.into_iter().collect()
}

/// Orbit samples of the point spelling `lens[k]` symbols of `anchors[k]` in
/// turn, then `0^∞`.
pub fn block_orbit(blocks: &[(symdyn::SymbolicPoint, usize)], horizon: usize) -> Vec<symdyn::SymbolicPoint> {
    let mut word = Vec::new();
    for (a, len) in blocks {
        word.extend(a.word(*len));
    }
    let x = symdyn::SymbolicPoint::new(&word, &[0]);
    (0..horizon).map(|i| x.shift_by(i)).collect()
}

/// Blocks alternating through `anchors` with lengths `first * ratio^k`.
pub fn geometric_blocks(
    anchors: &[symdyn::SymbolicPoint],
    first: usize,
    ratio: f64,
    horizon: usize,
) -> Vec<(symdyn::SymbolicPoint, usize)> {
    let (mut out, mut total, mut len, mut k) = (Vec::new(), 0, first as f64, 0);
    while total < horizon {
        let l = (len.round() as usize).max(1);
        out.push((anchors[k % anchors.len()].clone(), l));
        total += l;
        len *= ratio;
        k += 1;
    }
    out
}
