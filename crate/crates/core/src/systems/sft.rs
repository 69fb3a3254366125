use std::collections::{HashMap, HashSet};

use rand::Rng;

use super::point::{sequence_metric, SeqDistance, SymbolicPoint, METRIC_DEPTH};
use super::{Alphabet, DynamicalSystem, Symbol, SystemError, MAX_ALPHABET};
use crate::chain::graph::strongly_connected_components;

/// A one-step subshift of finite type, pruned to its essential graph.
#[derive(Debug, Clone)]
pub struct SymbolicSystem {
    base: Alphabet,
    alphabet: Alphabet,
    blocks: Vec<Vec<Symbol>>,
    allowed: Vec<Vec<bool>>,
    succ: Vec<Vec<Symbol>>,
    memory: usize,
}

impl PartialEq for SymbolicSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.allowed == other.allowed && self.memory == other.memory
    }
}

/// Recodes the subshift avoiding `forbidden` into a one-step presentation on
/// allowed `N`-blocks, `N + 1` being the longest forbidden word.
pub fn sft_from_forbidden_words(
    alphabet: &Alphabet,
    forbidden: &[Vec<Symbol>],
) -> Result<SymbolicSystem, SystemError> {
    for w in forbidden {
        if w.is_empty() || w.iter().any(|&s| s as usize >= alphabet.len()) {
            return Err(SystemError::BadWord { word: format!("{w:?}") });
        }
    }
    let longest = forbidden.iter().map(Vec::len).max().unwrap_or(0);
    let memory = longest.saturating_sub(1).max(1);
    let forbidden_set: HashSet<&[Symbol]> = forbidden.iter().map(Vec::as_slice).collect();
    let mut lengths: Vec<usize> = forbidden.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let clean_end = |w: &[Symbol]| {
        lengths
            .iter()
            .take_while(|&&l| l <= w.len())
            .all(|&l| !forbidden_set.contains(&w[w.len() - l..]))
    };

    // Allowed blocks of length `memory`, in lexicographic order.
    let n = alphabet.len() as Symbol;
    let mut blocks: Vec<Vec<Symbol>> = vec![vec![]];
    for _ in 0..memory {
        let mut next = Vec::new();
        for b in &blocks {
            for s in 0..n {
                let mut w = b.clone();
                w.push(s);
                if clean_end(&w) {
                    next.push(w);
                }
            }
        }
        if next.len() > MAX_ALPHABET {
            return Err(SystemError::AlphabetTooLarge(next.len()));
        }
        blocks = next;
    }
    let index: HashMap<&[Symbol], usize> =
        blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let k = blocks.len();
    let mut allowed = vec![vec![false; k]; k];
    for (i, b) in blocks.iter().enumerate() {
        for s in 0..n {
            let mut w = b.clone();
            w.push(s);
            if !clean_end(&w) {
                continue;
            }
            if let Some(&j) = index.get(&w[1..]) {
                allowed[i][j] = true;
            }
        }
    }
    let names: Vec<String> = blocks.iter().map(|b| alphabet.format_word(b)).collect();
    SymbolicSystem::assemble(alphabet.clone(), names, blocks, allowed, memory)
}

impl SymbolicSystem {
    /// One-step system from an explicit transition matrix.
    pub fn from_allowed(
        alphabet: Alphabet,
        allowed: Vec<Vec<bool>>,
        memory: usize,
    ) -> Result<Self, SystemError> {
        let k = alphabet.len();
        if allowed.len() != k || allowed.iter().any(|r| r.len() != k) {
            return Err(SystemError::BadWord {
                word: format!("transition matrix must be {k}x{k}"),
            });
        }
        let names = alphabet.symbols().to_vec();
        let blocks = (0..k as Symbol).map(|s| vec![s]).collect();
        SymbolicSystem::assemble(alphabet, names, blocks, allowed, memory.max(1))
    }

    pub fn full_shift(n: usize) -> Self {
        let alphabet = Alphabet::numeric(n).expect("n >= 1");
        SymbolicSystem::from_allowed(alphabet, vec![vec![true; n]; n], 1).expect("full shift")
    }

    /// Convenience constructor over numeric symbol names.
    pub fn from_matrix(allowed: Vec<Vec<bool>>) -> Result<Self, SystemError> {
        SymbolicSystem::from_allowed(Alphabet::numeric(allowed.len())?, allowed, 1)
    }

    fn assemble(
        base: Alphabet,
        names: Vec<String>,
        blocks: Vec<Vec<Symbol>>,
        allowed: Vec<Vec<bool>>,
        memory: usize,
    ) -> Result<Self, SystemError> {
        let k = allowed.len();
        let mut alive = vec![true; k];
        loop {
            let mut changed = false;
            for v in 0..k {
                if !alive[v] {
                    continue;
                }
                let has_out = (0..k).any(|w| alive[w] && allowed[v][w]);
                let has_in = (0..k).any(|u| alive[u] && allowed[u][v]);
                if !has_out || !has_in {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let keep: Vec<usize> = (0..k).filter(|&v| alive[v]).collect();
        if keep.is_empty() {
            return Err(SystemError::EmptySubshift);
        }
        let allowed: Vec<Vec<bool>> =
            keep.iter().map(|&u| keep.iter().map(|&v| allowed[u][v]).collect()).collect();
        let succ = allowed
            .iter()
            .map(|row| (0..row.len()).filter(|&j| row[j]).map(|j| j as Symbol).collect())
            .collect();
        Ok(SymbolicSystem {
            base,
            alphabet: Alphabet::new(keep.iter().map(|&v| names[v].clone()))?,
            blocks: keep.iter().map(|&v| blocks[v].clone()).collect(),
            allowed,
            succ,
            memory,
        })
    }

    /// The recoded (one-step) alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base_alphabet(&self) -> &Alphabet {
        &self.base
    }

    /// Block over the base alphabet carried by each recoded symbol.
    pub fn block(&self, s: Symbol) -> &[Symbol] {
        &self.blocks[s as usize]
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn size(&self) -> usize {
        self.allowed.len()
    }

    pub fn allowed(&self, a: Symbol, b: Symbol) -> bool {
        self.allowed[a as usize][b as usize]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.allowed
    }

    pub fn successors(&self, a: Symbol) -> &[Symbol] {
        &self.succ[a as usize]
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.succ.iter().map(|s| s.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn is_admissible_word(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.size())
            && w.windows(2).all(|p| self.allowed(p[0], p[1]))
    }

    /// Checked distance; fails when either point uses symbols outside this
    /// system's alphabet.
    pub fn sequence_metric(
        &self,
        x: &SymbolicPoint,
        y: &SymbolicPoint,
        depth: usize,
    ) -> Result<SeqDistance, SystemError> {
        let k = self.size();
        if x.symbols_used().chain(y.symbols_used()).any(|s| s as usize >= k) {
            return Err(SystemError::AlphabetMismatch);
        }
        Ok(sequence_metric(x, y, depth))
    }

    /// `word` followed by the least-successor continuation of its last symbol.
    pub fn extend_least(&self, word: &[Symbol]) -> SymbolicPoint {
        let mut cur = *word.last().expect("nonempty word");
        let mut seen: HashMap<Symbol, usize> = HashMap::new();
        let mut tail = Vec::new();
        loop {
            let next = self.succ[cur as usize][0];
            if let Some(&pos) = seen.get(&next) {
                let mut prefix = word.to_vec();
                prefix.extend_from_slice(&tail[..pos]);
                return SymbolicPoint::new(&prefix, &tail[pos..]);
            }
            seen.insert(next, tail.len());
            tail.push(next);
            cur = next;
        }
    }

    /// Recodes a sequence over the base alphabet onto blocks.
    pub fn encode_point(&self, base: &SymbolicPoint) -> Result<SymbolicPoint, SystemError> {
        let n = self.memory;
        let index: HashMap<&[Symbol], Symbol> =
            self.blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i as Symbol)).collect();
        let (pre, q) = (base.preperiod(), base.period_len());
        let window = base.word(pre + q + n);
        let code = |i: usize| {
            index
                .get(&window[i..i + n])
                .copied()
                .ok_or_else(|| SystemError::NotMember(format!("{base:?}")))
        };
        let prefix = (0..pre).map(code).collect::<Result<Vec<_>, _>>()?;
        let period = (pre..pre + q).map(code).collect::<Result<Vec<_>, _>>()?;
        let p = SymbolicPoint::new(&prefix, &period);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(SystemError::NotMember(format!("{base:?}")))
        }
    }

    /// The base-alphabet sequence read off a recoded point.
    pub fn decode_point(&self, p: &SymbolicPoint) -> SymbolicPoint {
        let first = |w: Vec<Symbol>| w.iter().map(|&s| self.blocks[s as usize][0]).collect::<Vec<_>>();
        SymbolicPoint::new(&first(p.prefix_word()), &first(p.period_word()))
    }

    /// A random admissible point: `first`, a uniform random walk of
    /// `walk` further symbols, then the least-successor continuation.
    pub fn random_point<R: Rng>(&self, first: Symbol, walk: usize, rng: &mut R) -> SymbolicPoint {
        let mut word = vec![first];
        for _ in 0..walk {
            let succ = self.successors(*word.last().unwrap());
            word.push(succ[rng.gen_range(0..succ.len())]);
        }
        self.extend_least(&word)
    }
}

impl DynamicalSystem for SymbolicSystem {
    type Point = SymbolicPoint;

    fn step(&self, p: &SymbolicPoint) -> SymbolicPoint {
        p.shift()
    }

    fn distance(&self, a: &SymbolicPoint, b: &SymbolicPoint) -> f64 {
        sequence_metric(a, b, METRIC_DEPTH).value
    }

    fn distance_at_depth(&self, a: &SymbolicPoint, b: &SymbolicPoint, depth: usize) -> f64 {
        sequence_metric(a, b, depth).value
    }

    fn contains(&self, p: &SymbolicPoint) -> bool {
        let k = self.size();
        p.symbols_used().all(|s| (s as usize) < k) && p.adjacent_pairs().all(|(a, b)| self.allowed(a, b))
    }

    fn same_point(&self, a: &SymbolicPoint, b: &SymbolicPoint) -> bool {
        a == b
    }
}

/// `ln ρ(A)` for the transition matrix `A`.
///
/// `ρ(A)` is the largest Perron root over irreducible diagonal blocks. Each
/// block is iterated as `A_c + I`, which is primitive, and stopped once the
/// Collatz–Wielandt bracket `min (Bv)_i/v_i <= ρ + 1 <= max (Bv)_i/v_i` is
/// tighter than `1e-10` relative.
pub fn topological_entropy(system: &SymbolicSystem) -> f64 {
    const REL_TOL: f64 = 1e-10;
    const MAX_ITER: usize = 1_000_000;
    let adj = system.adjacency();
    let mut best = 0.0f64;
    for comp in strongly_connected_components(&adj) {
        let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| adj[v].iter().filter_map(|w| local.get(w).copied()).collect())
            .collect();
        if edges.iter().all(Vec::is_empty) {
            continue;
        }
        let n = comp.len();
        let mut v = vec![1.0f64; n];
        let mut radius = 0.0;
        for _ in 0..MAX_ITER {
            let w: Vec<f64> = (0..n).map(|i| v[i] + edges[i].iter().map(|&j| v[j]).sum::<f64>()).collect();
            let (lo, hi) = (0..n).fold((f64::INFINITY, 0.0f64), |(lo, hi), i| {
                let r = w[i] / v[i];
                (lo.min(r), hi.max(r))
            });
            radius = 0.5 * (lo + hi) - 1.0;
            let norm = w.iter().cloned().fold(0.0, f64::max);
            v = w.into_iter().map(|x| x / norm).collect();
            if hi - lo <= REL_TOL * hi {
                break;
            }
        }
        best = best.max(radius);
    }
    if best <= 1.0 {
        // Integer matrices with a cycle have ρ >= 1; anything below is
        // iteration noise.
        0.0
    } else {
        best.ln()
    }
}
