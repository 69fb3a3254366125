use super::{DynamicalSystem, SystemError};

/// Declared per-step tolerance of binary64 iteration.
pub const INTERVAL_STEP_TOLERANCE: f64 = 1e-12;

/// A continuous piecewise-linear self-map of `[0, 1]`, given by its values
/// at a strictly increasing list of breakpoints from 0 to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMapSystem {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl IntervalMapSystem {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, SystemError> {
        let bad = |m: &str| Err(SystemError::BadIntervalMap(m.to_string()));
        if breakpoints.len() < 2 {
            return bad("need at least two breakpoints");
        }
        if breakpoints.len() != values.len() {
            return bad("breakpoints and values differ in length");
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return bad("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("breakpoints must be strictly increasing");
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("values must lie in [0, 1]");
        }
        Ok(IntervalMapSystem { breakpoints, values })
    }

    pub fn tent() -> Self {
        IntervalMapSystem::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0]).expect("tent map")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> f64 {
        let b = &self.breakpoints;
        let i = match b.partition_point(|&t| t <= x) {
            0 => 0,
            k if k >= b.len() => b.len() - 2,
            k => k - 1,
        };
        let t = (x - b[i]) / (b[i + 1] - b[i]);
        let y = self.values[i] + t * (self.values[i + 1] - self.values[i]);
        y.clamp(0.0, 1.0)
    }
}

impl DynamicalSystem for IntervalMapSystem {
    type Point = f64;

    fn step(&self, x: &f64) -> f64 {
        self.eval(*x)
    }

    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }

    fn contains(&self, x: &f64) -> bool {
        (0.0..=1.0).contains(x)
    }

    fn step_tolerance(&self) -> f64 {
        INTERVAL_STEP_TOLERANCE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_values() {
        let t = IntervalMapSystem::tent();
        assert_eq!(t.eval(0.25), 0.5);
        assert_eq!(t.eval(0.5), 1.0);
        assert_eq!(t.eval(1.0), 0.0);
        assert_eq!(t.eval(0.0), 0.0);
        assert!((t.eval(0.7) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed() {
        assert!(IntervalMapSystem::new(vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(IntervalMapSystem::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 4]).is_err());
        assert!(IntervalMapSystem::new(vec![0.1, 1.0], vec![0.0, 0.0]).is_err());
        assert!(IntervalMapSystem::new(vec![0.0, 1.0], vec![0.0, 1.5]).is_err());
    }
}
