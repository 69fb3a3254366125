use super::graph::TransitionGraph;
use super::{normalized, ChainError, CyclicDecomposition};

/// A length-`k` walk `x -> ... -> y`, taking the least admissible successor
/// at every step.
pub fn path_of_length(graph: &TransitionGraph, x: usize, y: usize, k: usize) -> Option<Vec<usize>> {
    let n = graph.len();
    if k == 0 || x >= n || y >= n {
        return None;
    }
    // can[t][v]: v reaches y in exactly t steps.
    let mut can = vec![vec![false; n]; k + 1];
    can[0][y] = true;
    for t in 1..=k {
        let (done, rest) = can.split_at_mut(t);
        let prev = &done[t - 1];
        for (v, slot) in rest[0].iter_mut().enumerate() {
            *slot = graph.successors(v).iter().any(|&w| prev[w]);
        }
    }
    if !can[k][x] {
        return None;
    }
    let mut path = Vec::with_capacity(k + 1);
    path.push(x);
    let mut cur = x;
    for t in (0..k).rev() {
        cur = *graph.successors(cur).iter().find(|&&w| can[t][w]).expect("dp consistency");
        path.push(cur);
    }
    Some(path)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairBound {
    pub x: usize,
    pub y: usize,
    /// Least `n` with a path of length `m n'` for every `n'` from `n` to the checked maximum.
    pub least_n: usize,
}

/// Range certificate for the uniform length bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainBound {
    pub m: usize,
    pub n: usize,
    pub l_max: usize,
    /// Frobenius number of the closed-walk lengths (divided by `m`), clamped at 0.
    pub frobenius: usize,
    pub pairs: Vec<PairBound>,
    /// Every pair `x ~ y` has a path of length `m N`. Since every vertex has a
    /// length-`m` walk back into its own class, this extends to all `n >= N`.
    pub holds_for_all_larger: bool,
}

impl ChainBound {
    pub fn witness(&self, graph: &TransitionGraph, x: usize, y: usize, n: usize) -> Option<Vec<usize>> {
        path_of_length(graph, x, y, self.m * n)
    }

    pub fn pair(&self, x: usize, y: usize) -> Option<&PairBound> {
        self.pairs.iter().find(|p| p.x == x && p.y == y)
    }
}

type Bits = Vec<u64>;

fn bits(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// Lengths `0..=max_len` of walks from `x`, as one bitset of endpoints per length.
fn reach_table(graph: &TransitionGraph, succ_bits: &[Bits], x: usize, max_len: usize) -> Vec<Bits> {
    let n = graph.len();
    let mut table = Vec::with_capacity(max_len + 1);
    let mut cur = bits(n);
    set(&mut cur, x);
    table.push(cur.clone());
    for _ in 0..max_len {
        let mut next = bits(n);
        for v in 0..n {
            if get(&cur, v) {
                for (a, b) in next.iter_mut().zip(&succ_bits[v]) {
                    *a |= b;
                }
            }
        }
        cur = next;
        table.push(cur.clone());
    }
    table
}

fn frobenius(gens: &[usize]) -> usize {
    if gens.contains(&1) || gens.is_empty() {
        return 0;
    }
    let a = *gens.iter().max().unwrap();
    let limit = a * a + a;
    let mut ok = vec![false; limit + 1];
    ok[0] = true;
    for t in 1..=limit {
        ok[t] = gens.iter().any(|&g| g <= t && ok[t - g]);
    }
    (0..=limit).rev().find(|&t| !ok[t]).unwrap_or(0)
}

/// Least `N` such that every pair `x ~ y` is joined by paths of every length
/// `m n` with `N <= n <= L_max / m`, where `L_max = |V|^2 m + m F`.
pub fn uniform_chain_bound(
    graph: &TransitionGraph,
    decomposition: &CyclicDecomposition,
) -> Result<ChainBound, ChainError> {
    let comp = normalized(&decomposition.vertices, graph)?;
    let m = decomposition.m;
    let v = comp.len();
    let succ_bits: Vec<Bits> = (0..graph.len())
        .map(|u| {
            let mut b = bits(graph.len());
            for &w in graph.successors(u) {
                set(&mut b, w);
            }
            b
        })
        .collect();

    let mut closed: Vec<usize> = Vec::new();
    for &x in &comp {
        let table = reach_table(graph, &succ_bits, x, 2 * v);
        for (len, row) in table.iter().enumerate().skip(1) {
            if get(row, x) && !closed.contains(&(len / m)) {
                closed.push(len / m);
            }
        }
    }
    closed.sort_unstable();
    let f = frobenius(&closed);
    let n_max = v * v + f;
    let l_max = m * n_max;

    let mut pairs = Vec::new();
    let mut at_n: Vec<Vec<bool>> = Vec::new();
    for &x in &comp {
        let table = reach_table(graph, &succ_bits, x, l_max);
        for &y in &comp {
            if decomposition.class(x) != decomposition.class(y) {
                continue;
            }
            let hits: Vec<bool> = (0..=n_max).map(|n| n > 0 && get(&table[m * n], y)).collect();
            let least_n = (1..=n_max).rev().take_while(|&n| hits[n]).last().unwrap_or(n_max + 1);
            pairs.push(PairBound { x, y, least_n });
            at_n.push(hits);
        }
    }
    let n = pairs.iter().map(|p| p.least_n).max().unwrap_or(1).max(1);
    let holds_for_all_larger = n <= n_max && at_n.iter().all(|h| h[n]);
    Ok(ChainBound { m, n, l_max, frobenius: f, pairs, holds_for_all_larger })
}
