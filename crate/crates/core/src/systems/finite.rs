use std::collections::HashMap;

use super::{DynamicalSystem, SystemError};

const TRIANGLE_SLACK: f64 = 1e-12;

/// How distances between the points of a finite map are given.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// `d(x, y) = 1` for `x != y`.
    Discrete,
    /// Points sit at the given coordinates on the real line.
    Line(Vec<f64>),
    /// Explicit distance table.
    Table(Vec<Vec<f64>>),
}

/// A self-map of a finite metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMapSystem {
    names: Vec<String>,
    index: HashMap<String, usize>,
    map: Vec<usize>,
    metric: Metric,
    table: Vec<Vec<f64>>,
}

impl FiniteMapSystem {
    pub fn new(names: Vec<String>, map: Vec<usize>, metric: Metric) -> Result<Self, SystemError> {
        let n = names.len();
        if n == 0 {
            return Err(SystemError::BadMap("no points".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(SystemError::BadMap(format!("duplicate point `{s}`")));
            }
        }
        if map.len() != n {
            return Err(SystemError::BadMap(format!("map has {} entries for {n} points", map.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= n) {
            return Err(SystemError::BadMap(format!("image {bad} out of range")));
        }
        let table = match &metric {
            Metric::Discrete => (0..n)
                .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
                .collect(),
            Metric::Line(xs) => {
                if xs.len() != n {
                    return Err(SystemError::BadMetric(format!("{} coordinates for {n} points", xs.len())));
                }
                (0..n).map(|i| (0..n).map(|j| (xs[i] - xs[j]).abs()).collect()).collect()
            }
            Metric::Table(t) => t.clone(),
        };
        check_metric(&table)?;
        Ok(FiniteMapSystem { names, index, map, metric, table })
    }

    /// Points named `"0".."n-1"`.
    pub fn from_indices(map: Vec<usize>, metric: Metric) -> Result<Self, SystemError> {
        let names = (0..map.len()).map(|i| i.to_string()).collect();
        FiniteMapSystem::new(names, map, metric)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.table[a][b]
    }

    pub fn iterate(&self, p: usize, n: usize) -> usize {
        (0..n).fold(p, |x, _| self.map[x])
    }

    /// The same space under `f^m`.
    pub fn power(&self, m: usize) -> FiniteMapSystem {
        let map = (0..self.len()).map(|p| self.iterate(p, m)).collect();
        FiniteMapSystem { map, ..self.clone() }
    }

    /// Whether `f` permutes the points in a single cycle.
    pub fn is_single_cycle(&self) -> bool {
        let n = self.len();
        let mut p = 0;
        for k in 1..=n {
            p = self.map[p];
            if p == 0 {
                return k == n;
            }
        }
        false
    }
}

fn check_metric(t: &[Vec<f64>]) -> Result<(), SystemError> {
    let n = t.len();
    if t.iter().any(|r| r.len() != n) {
        return Err(SystemError::BadMetric("table is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let d = t[i][j];
            if !d.is_finite() || d < 0.0 {
                return Err(SystemError::BadMetric(format!("d({i},{j}) = {d}")));
            }
            if (i == j) != (d == 0.0) {
                return Err(SystemError::BadMetric(format!("d({i},{j}) = {d} breaks identity")));
            }
            if d != t[j][i] {
                return Err(SystemError::BadMetric(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if t[i][k] > t[i][j] + t[j][k] + TRIANGLE_SLACK {
                    return Err(SystemError::BadMetric(format!("triangle inequality fails at ({i},{j},{k})")));
                }
            }
        }
    }
    Ok(())
}

impl DynamicalSystem for FiniteMapSystem {
    type Point = usize;

    fn step(&self, p: &usize) -> usize {
        self.map[*p]
    }

    fn distance(&self, a: &usize, b: &usize) -> f64 {
        self.table[*a][*b]
    }

    fn contains(&self, p: &usize) -> bool {
        *p < self.len()
    }

    fn same_point(&self, a: &usize, b: &usize) -> bool {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_map_and_metric() {
        assert!(matches!(FiniteMapSystem::from_indices(vec![0, 5], Metric::Discrete), Err(SystemError::BadMap(_))));
        let asym = Metric::Table(vec![vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(matches!(FiniteMapSystem::from_indices(vec![0, 1], asym), Err(SystemError::BadMetric(_))));
        let triangle = Metric::Table(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ]);
        assert!(matches!(FiniteMapSystem::from_indices(vec![0, 1, 2], triangle), Err(SystemError::BadMetric(_))));
        let line = Metric::Line(vec![0.0, 0.4, 1.0]);
        let s = FiniteMapSystem::from_indices(vec![0, 1, 2], line).unwrap();
        assert!((s.dist(0, 2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn powers_and_cycles() {
        let s = FiniteMapSystem::from_indices(vec![1, 2, 3, 4, 5, 0], Metric::Discrete).unwrap();
        assert!(s.is_single_cycle());
        assert_eq!(s.power(2).map(), &[2, 3, 4, 5, 0, 1]);
        assert!(!s.power(2).is_single_cycle());
        let t = FiniteMapSystem::from_indices(vec![1, 2, 1], Metric::Discrete).unwrap();
        assert!(!t.is_single_cycle());
    }
}
