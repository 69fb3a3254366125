use crate::systems::DynamicalSystem;

use super::{check_tail, tail_start, StatsError};

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionalFunctions {
    pub t_grid: Vec<f64>,
    /// Liminf estimates `F_xy(t)`.
    pub f: Vec<f64>,
    /// Limsup estimates `F*_xy(t)`.
    pub f_star: Vec<f64>,
    pub horizon: usize,
    pub tail_fraction: f64,
}

/// Tail-window min and max of `|{i < n : d(x_i, y_i) < t}| / n` per grid `t`.
pub fn distributional_functions<S: DynamicalSystem>(
    system: &S,
    xs: &[S::Point],
    ys: &[S::Point],
    t_grid: &[f64],
    tail_fraction: f64,
) -> Result<DistributionalFunctions, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::HorizonMismatch(xs.len(), ys.len()));
    }
    if xs.is_empty() {
        return Err(StatsError::HorizonTooShort { need: 1, got: 0 });
    }
    check_tail(tail_fraction)?;
    if t_grid.is_empty() || t_grid.windows(2).any(|w| !(w[0] < w[1])) || !(t_grid[0] > 0.0) {
        return Err(StatsError::BadParameter("t grid must be positive and strictly increasing".into()));
    }
    let h = xs.len();
    let dist: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| system.distance(x, y)).collect();
    let start = tail_start(h, tail_fraction);
    let mut f = Vec::with_capacity(t_grid.len());
    let mut f_star = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let (mut lo, mut hi, mut count) = (1.0f64, 0.0f64, 0usize);
        for (i, &d) in dist.iter().enumerate() {
            count += (d < t) as usize;
            let n = i + 1;
            if n >= start {
                let freq = count as f64 / n as f64;
                lo = lo.min(freq);
                hi = hi.max(freq);
            }
        }
        f.push(lo);
        f_star.push(hi);
    }
    Ok(DistributionalFunctions { t_grid: t_grid.to_vec(), f, f_star, horizon: h, tail_fraction })
}

/// `F(delta) < 1 - slack` and `F*(t) > 1 - slack` for every grid `t`.
pub fn dc2_verdict(df: &DistributionalFunctions, delta: f64, slack: f64) -> Result<bool, StatsError> {
    let k = df
        .t_grid
        .iter()
        .position(|&t| t == delta)
        .ok_or_else(|| StatsError::BadParameter(format!("delta {delta} is not on the grid")))?;
    Ok(df.f[k] < 1.0 - slack && df.f_star.iter().all(|&v| v > 1.0 - slack))
}
