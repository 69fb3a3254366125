use crate::systems::{DynamicalSystem, FiniteMapSystem, SymbolicSystem};

use super::ChainError;

/// Where a transition graph came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    /// Vertices are SFT symbols and edges allowed transitions.
    Symbolic,
    /// Vertices are points of a finite map; `x -> y` iff `d(f(x), y) <= delta`.
    Delta(f64),
    /// Built directly from an edge list.
    Explicit,
}

/// A finite directed graph, self-loops allowed. Successor lists are sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionGraph {
    labels: Vec<String>,
    succ: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl TransitionGraph {
    pub fn new(labels: Vec<String>, mut succ: Vec<Vec<usize>>, provenance: Provenance) -> Self {
        assert_eq!(labels.len(), succ.len(), "one successor list per vertex");
        let n = labels.len();
        for s in &mut succ {
            assert!(s.iter().all(|&v| v < n), "edge target out of range");
            s.sort_unstable();
            s.dedup();
        }
        TransitionGraph { labels, succ, provenance }
    }

    /// Vertices `0..n` labelled by their index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in edges {
            succ[u].push(v);
        }
        TransitionGraph::new((0..n).map(|i| i.to_string()).collect(), succ, Provenance::Explicit)
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), ChainError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(ChainError::UnknownVertex(v))
        }
    }
}

pub fn delta_transition_graph(system: &FiniteMapSystem, delta: f64) -> Result<TransitionGraph, ChainError> {
    if !(delta >= 0.0) {
        return Err(ChainError::BadDelta(delta));
    }
    let n = system.len();
    let succ = (0..n)
        .map(|x| {
            let fx = system.step(&x);
            (0..n).filter(|&y| system.dist(fx, y) <= delta).collect()
        })
        .collect();
    Ok(TransitionGraph::new(system.names().to_vec(), succ, Provenance::Delta(delta)))
}

pub fn symbolic_transition_graph(system: &SymbolicSystem) -> TransitionGraph {
    TransitionGraph::new(system.alphabet().symbols().to_vec(), system.adjacency(), Provenance::Symbolic)
}

/// Tarjan's algorithm, iterative. Each component is sorted and components
/// are ordered by their least vertex.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Whether `vertices` induce a strongly connected subgraph with a cycle.
pub(crate) fn is_recurrent_class(graph: &TransitionGraph, vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let mut inside = vec![false; graph.len()];
    for &v in vertices {
        inside[v] = true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; graph.len()];
        let mut todo = vec![vertices[0]];
        seen[vertices[0]] = true;
        let mut count = 1;
        while let Some(u) = todo.pop() {
            for &w in vertices {
                let edge = if forward { graph.has_edge(u, w) } else { graph.has_edge(w, u) };
                if edge && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    todo.push(w);
                }
            }
        }
        count
    };
    let has_edge = vertices.iter().any(|&u| graph.successors(u).iter().any(|&w| inside[w]));
    has_edge && reach(true) == vertices.len() && reach(false) == vertices.len()
}
