//! Chain-recurrence structure of finite transition graphs.

pub(crate) mod graph;
mod paths;

pub use graph::{
    delta_transition_graph, strongly_connected_components, symbolic_transition_graph, Provenance,
    TransitionGraph,
};
pub use paths::{path_of_length, uniform_chain_bound, ChainBound, PairBound};

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("vertex set is not a strongly connected component with a cycle")]
    NotStronglyConnected,
    #[error("vertices lie in different chain components")]
    DifferentComponents,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("delta must be a nonnegative number, got {0}")]
    BadDelta(f64),
}

/// Chain components and the non-recurrent leftovers.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComponentSet {
    pub components: Vec<Vec<usize>>,
    pub non_recurrent: Vec<usize>,
}

impl ChainComponentSet {
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.binary_search(&v).is_ok())
    }
}

/// Classes `D_0..D_{m-1}` of a strongly connected component.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicDecomposition {
    pub m: usize,
    /// Component vertices, sorted.
    pub vertices: Vec<usize>,
    /// Indexed by graph vertex; `None` outside the component.
    pub class_of: Vec<Option<usize>>,
    pub classes: Vec<Vec<usize>>,
}

impl CyclicDecomposition {
    pub fn class(&self, v: usize) -> Option<usize> {
        self.class_of.get(v).copied().flatten()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.class(v).is_some()
    }
}

pub fn chain_components(graph: &TransitionGraph) -> ChainComponentSet {
    let mut components = Vec::new();
    let mut non_recurrent = Vec::new();
    for comp in strongly_connected_components(graph.adjacency()) {
        let cyclic = comp.len() > 1 || graph.has_edge(comp[0], comp[0]);
        if cyclic {
            components.push(comp);
        } else {
            non_recurrent.extend(comp);
        }
    }
    non_recurrent.sort_unstable();
    ChainComponentSet { components, non_recurrent }
}

pub fn is_chain_transitive(graph: &TransitionGraph) -> bool {
    let all: Vec<usize> = (0..graph.len()).collect();
    graph::is_recurrent_class(graph, &all)
}

/// BFS levels from the least vertex of `component`, within the component.
fn levels(component: &[usize], graph: &TransitionGraph) -> Vec<Option<usize>> {
    let mut level = vec![None; graph.len()];
    let mut inside = vec![false; graph.len()];
    for &v in component {
        inside[v] = true;
    }
    let root = component[0];
    level[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let lu = level[u].unwrap();
        for &w in graph.successors(u) {
            if inside[w] && level[w].is_none() {
                level[w] = Some(lu + 1);
                queue.push_back(w);
            }
        }
    }
    level
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn normalized(component: &[usize], graph: &TransitionGraph) -> Result<Vec<usize>, ChainError> {
    let mut comp = component.to_vec();
    comp.sort_unstable();
    comp.dedup();
    for &v in &comp {
        graph.check_vertex(v)?;
    }
    if !graph::is_recurrent_class(graph, &comp) {
        return Err(ChainError::NotStronglyConnected);
    }
    Ok(comp)
}

/// Gcd of cycle lengths in a strongly connected component, from BFS levels.
pub fn graph_period(component: &[usize], graph: &TransitionGraph) -> Result<usize, ChainError> {
    let comp = normalized(component, graph)?;
    Ok(period_of(&comp, graph, &levels(&comp, graph)))
}

fn period_of(comp: &[usize], graph: &TransitionGraph, level: &[Option<usize>]) -> usize {
    let mut m = 0;
    for &u in comp {
        let lu = level[u].unwrap();
        for &v in graph.successors(u) {
            if let Some(lv) = level[v] {
                m = gcd(m, (lu + 1).abs_diff(lv));
            }
        }
    }
    m
}

pub fn cyclic_decomposition(component: &[usize], graph: &TransitionGraph) -> Result<CyclicDecomposition, ChainError> {
    let comp = normalized(component, graph)?;
    let level = levels(&comp, graph);
    let m = period_of(&comp, graph, &level);
    let mut class_of = vec![None; graph.len()];
    let mut classes = vec![Vec::new(); m];
    for &v in &comp {
        let c = level[v].unwrap() % m;
        class_of[v] = Some(c);
        classes[c].push(v);
    }
    Ok(CyclicDecomposition { m, vertices: comp, class_of, classes })
}

/// `x ~ y` within a decomposed component.
pub fn chain_equivalent(
    graph: &TransitionGraph,
    decomposition: &CyclicDecomposition,
    x: usize,
    y: usize,
) -> Result<bool, ChainError> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    match (decomposition.class(x), decomposition.class(y)) {
        (Some(a), Some(b)) => Ok(a == b),
        _ => Err(ChainError::DifferentComponents),
    }
}

/// Whether two equal-length walks from `x` and `y` can meet.
pub fn chain_proximal(graph: &TransitionGraph, x: usize, y: usize) -> Result<bool, ChainError> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    let n = graph.len();
    let mut seen = vec![false; n * n];
    seen[x * n + y] = true;
    let mut todo = vec![(x, y)];
    while let Some((u, v)) = todo.pop() {
        if u == v {
            return Ok(true);
        }
        for &a in graph.successors(u) {
            for &b in graph.successors(v) {
                if !seen[a * n + b] {
                    seen[a * n + b] = true;
                    todo.push((a, b));
                }
            }
        }
    }
    Ok(false)
}

pub fn is_chain_mixing(graph: &TransitionGraph) -> bool {
    let all: Vec<usize> = (0..graph.len()).collect();
    is_chain_transitive(graph) && graph_period(&all, graph) == Ok(1)
}

/// Decomposition of the whole graph, when it is chain transitive.
pub(crate) fn whole_decomposition(graph: &TransitionGraph) -> Result<CyclicDecomposition, ChainError> {
    let all: Vec<usize> = (0..graph.len()).collect();
    cyclic_decomposition(&all, graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> TransitionGraph {
        TransitionGraph::from_edges(2, &[(0, 1), (1, 0)])
    }

    fn golden() -> TransitionGraph {
        TransitionGraph::from_edges(2, &[(0, 0), (0, 1), (1, 0)])
    }

    #[test]
    fn components_examples() {
        let g = TransitionGraph::from_edges(3, &[(0, 1), (1, 0), (2, 2)]);
        let c = chain_components(&g);
        assert_eq!(c.components, vec![vec![0, 1], vec![2]]);
        assert!(c.non_recurrent.is_empty());
        let g = TransitionGraph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]);
        let c = chain_components(&g);
        assert_eq!(c.components, vec![vec![2]]);
        assert_eq!(c.non_recurrent, vec![0, 1]);
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_chain_transitive(&two_cycle()));
        assert!(!is_chain_transitive(&TransitionGraph::from_edges(2, &[(0, 1), (1, 1)])));
        assert!(is_chain_transitive(&golden()));
        assert!(!is_chain_transitive(&TransitionGraph::from_edges(1, &[])));
    }

    #[test]
    fn period_examples() {
        assert_eq!(graph_period(&[0, 1], &two_cycle()), Ok(2));
        assert_eq!(graph_period(&[0, 1], &golden()), Ok(1));
        let g = TransitionGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]);
        assert_eq!(graph_period(&[0, 1, 2], &g), Ok(1));
        let chain = TransitionGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(graph_period(&[0, 1], &chain), Err(ChainError::NotStronglyConnected));
        assert_eq!(graph_period(&[0], &chain), Err(ChainError::NotStronglyConnected));
    }

    #[test]
    fn decomposition_examples() {
        let d = cyclic_decomposition(&[0, 1], &two_cycle()).unwrap();
        assert_eq!((d.m, d.classes.clone()), (2, vec![vec![0], vec![1]]));
        let four = TransitionGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = cyclic_decomposition(&[3, 2, 1, 0], &four).unwrap();
        assert_eq!(d.classes, vec![vec![0], vec![1], vec![2], vec![3]]);
        let g = TransitionGraph::from_edges(4, &[(0, 1), (0, 3), (1, 2), (3, 2), (2, 0)]);
        let d = cyclic_decomposition(&[0, 1, 2, 3], &g).unwrap();
        assert_eq!(d.m, 3);
        assert_eq!(d.classes, vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn anchoring_uses_least_vertex() {
        // Component {1, 2} inside a larger graph: vertex 1 gets class 0.
        let g = TransitionGraph::from_edges(3, &[(0, 2), (1, 2), (2, 1)]);
        let d = cyclic_decomposition(&[2, 1], &g).unwrap();
        assert_eq!(d.class(1), Some(0));
        assert_eq!(d.class(2), Some(1));
        assert_eq!(d.class(0), None);
    }

    #[test]
    fn equivalence_and_proximality_examples() {
        let g = two_cycle();
        let d = cyclic_decomposition(&[0, 1], &g).unwrap();
        assert_eq!(chain_equivalent(&g, &d, 0, 0), Ok(true));
        assert_eq!(chain_equivalent(&g, &d, 0, 1), Ok(false));
        assert_eq!(chain_proximal(&g, 0, 0), Ok(true));
        assert_eq!(chain_proximal(&g, 0, 1), Ok(false));
        let g2 = TransitionGraph::from_edges(3, &[(0, 1), (1, 0), (2, 2)]);
        let d2 = cyclic_decomposition(&[0, 1], &g2).unwrap();
        assert_eq!(chain_equivalent(&g2, &d2, 0, 2), Err(ChainError::DifferentComponents));
    }

    #[test]
    fn mixing_examples() {
        let full = TransitionGraph::from_edges(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(is_chain_mixing(&full));
        assert!(!is_chain_mixing(&two_cycle()));
        assert!(is_chain_mixing(&golden()));
    }
}
