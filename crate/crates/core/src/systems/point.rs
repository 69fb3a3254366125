use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Symbol;

/// Depth used when a symbolic distance is needed as a plain number.
pub const METRIC_DEPTH: usize = 64;

/// An eventually periodic one-sided sequence `u v v v ...`.
///
/// The representation is kept canonical: `v` is primitive and `u` is the
/// shortest possible preperiod, so structural equality is sequence equality.
/// Shifting only moves offsets, so `shift` is O(1) and orbits share storage.
#[derive(Clone)]
pub struct SymbolicPoint {
    prefix: Arc<[Symbol]>,
    offset: usize,
    period: Arc<[Symbol]>,
    phase: usize,
}

fn primitive_root(word: &[Symbol]) -> &[Symbol] {
    let q = word.len();
    for d in 1..=q {
        if q.is_multiple_of(d) && (d..q).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

impl SymbolicPoint {
    /// Builds `prefix period period ...`; `period` must be nonempty.
    pub fn new(prefix: &[Symbol], period: &[Symbol]) -> Self {
        assert!(!period.is_empty(), "period word must be nonempty");
        let mut prefix = prefix.to_vec();
        let mut period = primitive_root(period).to_vec();
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        SymbolicPoint { prefix: prefix.into(), offset: 0, period: period.into(), phase: 0 }
    }

    pub fn periodic(period: &[Symbol]) -> Self {
        SymbolicPoint::new(&[], period)
    }

    pub fn constant(s: Symbol) -> Self {
        SymbolicPoint::periodic(&[s])
    }

    /// `word` followed by the sequence `tail`.
    pub fn concat(word: &[Symbol], tail: &SymbolicPoint) -> Self {
        let mut prefix = word.to_vec();
        prefix.extend(tail.prefix_word());
        SymbolicPoint::new(&prefix, &tail.period_word())
    }

    pub fn preperiod(&self) -> usize {
        self.prefix.len() - self.offset
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.preperiod() == 0
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> Symbol {
        let pre = self.preperiod();
        if i < pre {
            self.prefix[self.offset + i]
        } else {
            self.period[(self.phase + i - pre) % self.period.len()]
        }
    }

    pub fn first(&self) -> Symbol {
        self.symbol(0)
    }

    /// First `n` symbols.
    pub fn word(&self, n: usize) -> Vec<Symbol> {
        (0..n).map(|i| self.symbol(i)).collect()
    }

    pub fn prefix_word(&self) -> Vec<Symbol> {
        self.prefix[self.offset..].to_vec()
    }

    pub fn period_word(&self) -> Vec<Symbol> {
        let q = self.period.len();
        (0..q).map(|i| self.period[(self.phase + i) % q]).collect()
    }

    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, n: usize) -> Self {
        let pre = self.preperiod();
        let mut out = self.clone();
        if n <= pre {
            out.offset += n;
        } else {
            out.offset = self.prefix.len();
            out.phase = (self.phase + n - pre) % self.period.len();
        }
        out
    }

    /// Every symbol index that can occur in the sequence.
    pub fn symbols_used(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.preperiod() + self.period_len()).map(move |i| self.symbol(i))
    }

    /// Adjacent pairs covering the whole sequence, including the junction
    /// into the period and the wrap inside it.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        let n = self.preperiod() + self.period_len();
        (0..n).map(move |i| (self.symbol(i), self.symbol(i + 1)))
    }
}

impl PartialEq for SymbolicPoint {
    fn eq(&self, other: &Self) -> bool {
        self.preperiod() == other.preperiod()
            && self.period_len() == other.period_len()
            && (0..self.preperiod() + self.period_len()).all(|i| self.symbol(i) == other.symbol(i))
    }
}

impl Eq for SymbolicPoint {}

impl Hash for SymbolicPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.preperiod().hash(state);
        self.period_len().hash(state);
        for i in 0..self.preperiod() + self.period_len() {
            self.symbol(i).hash(state);
        }
    }
}

impl Ord for SymbolicPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.prefix_word(), self.period_word()).cmp(&(other.prefix_word(), other.period_word()))
    }
}

impl PartialOrd for SymbolicPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: Vec<Symbol>| w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}]({})", join(self.prefix_word()), join(self.period_word()))
    }
}

/// Result of comparing two sequences to a bounded depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqDistance {
    pub value: f64,
    /// Set when the sequences agree on the whole depth but differ later;
    /// `value` is then the upper bound `2^-depth`.
    pub truncated: bool,
}

/// `d(x, y) = 2^-k`, `k` the least disagreement index, resolved to `depth`.
pub fn sequence_metric(x: &SymbolicPoint, y: &SymbolicPoint, depth: usize) -> SeqDistance {
    let depth = depth.max(1);
    for k in 0..depth {
        if x.symbol(k) != y.symbol(k) {
            return SeqDistance { value: (-(k as f64)).exp2(), truncated: false };
        }
    }
    if x == y {
        SeqDistance { value: 0.0, truncated: false }
    } else {
        SeqDistance { value: (-(depth as f64)).exp2(), truncated: true }
    }
}

/// Least disagreement index, or `None` for equal sequences. Always terminates
/// because unequal canonical representations differ somewhere.
pub fn exact_disagreement(x: &SymbolicPoint, y: &SymbolicPoint) -> Option<usize> {
    if x == y {
        return None;
    }
    (0..).find(|&k| x.symbol(k) != y.symbol(k))
}
