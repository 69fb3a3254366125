use crate::chain::{path_of_length, symbolic_transition_graph};
use crate::systems::{DynamicalSystem, Symbol, SymbolicPoint, SymbolicSystem, METRIC_DEPTH};

use super::{decomposition, first_class_break, ShadowError};

/// `(1/n) sum_{i<n} d(f(x_i), x_{i+1})` for `n = 1..L`.
pub fn average_defect_curve<S: DynamicalSystem>(system: &S, points: &[S::Point]) -> Vec<f64> {
    let mut sum = 0.0;
    points
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            sum += system.distance(&system.step(&w[0]), &w[1]);
            sum / (i + 1) as f64
        })
        .collect()
}

/// Indices kept by [`density_one_subsequence`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySelection {
    pub indices: Vec<usize>,
    /// `|selected ∩ [0, n)| / n` for `n = 1..len`.
    pub prefix_density: Vec<f64>,
    /// `(first index, tolerance)` of each tolerance level.
    pub levels: Vec<(usize, f64)>,
}

impl DensitySelection {
    pub fn level_at(&self, i: usize) -> usize {
        self.levels.partition_point(|&(start, _)| start <= i).saturating_sub(1)
    }

    pub fn final_density(&self) -> f64 {
        self.prefix_density.last().copied().unwrap_or(1.0)
    }
}

/// Keeps index `i` when `values[i] < tau_j`, `tau_j = 2^-j` the tolerance in
/// force at `i`. Level `j + 1` starts at `n` once `n >= growth * n_j` and the
/// running mean of `values[..n]` is below `tau_{j+1}^2`; the rejected indices
/// at level `j` then number at most `n tau_j`.
pub fn density_one_subsequence(values: &[f64], growth: f64) -> DensitySelection {
    let mut levels = vec![(0usize, 1.0f64)];
    let mut indices = Vec::new();
    let mut prefix_density = Vec::with_capacity(values.len());
    let mut sum = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            let &(start, tau) = levels.last().unwrap();
            let next = tau / 2.0;
            if i as f64 >= growth * start.max(1) as f64 && sum / (i as f64) < next * next {
                levels.push((i, next));
            }
        }
        if v < levels.last().unwrap().1 {
            indices.push(i);
        }
        sum += v;
        prefix_density.push(indices.len() as f64 / (i + 1) as f64);
    }
    DensitySelection { indices, prefix_density, levels }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageShadowParams {
    /// Shadowing accuracy; stage-two tolerances are `eta_k = epsilon 2^-(k+2)`.
    pub epsilon: f64,
    /// Growth factor between tolerance levels of the density selection.
    pub density_growth: f64,
    /// Growth factor between stage-two block boundaries.
    pub boundary_growth: f64,
}

impl Default for AverageShadowParams {
    fn default() -> Self {
        AverageShadowParams { epsilon: 0.5, density_growth: 2.0, boundary_growth: 4.0 }
    }
}

/// A stretch `[start, target)` replaced by a true orbit segment that agrees
/// with `x_start` on `resolution + 1` symbols and lands exactly on `x_target`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlueWindow {
    pub start: usize,
    pub target: usize,
    pub resolution: usize,
    pub path_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageTwoLevel {
    pub eta: f64,
    /// `2^-s <= eta`.
    pub s: usize,
    pub boundary: usize,
    /// `d(f^i(x), y_i) <= eta` held for every `i >= boundary`.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageShadowTrace {
    pub point: SymbolicPoint,
    /// Always false here: the constructed point is eventually periodic.
    pub truncated: bool,
    pub horizon: usize,
    /// `(1/n) sum_{i<n} d(f^i(x), x_i)`, `n = 1..H`.
    pub cesaro_errors: Vec<f64>,
    /// Average defect curve of the input.
    pub input_defects: Vec<f64>,
    pub density_levels: Vec<(usize, f64)>,
    pub windows: Vec<GlueWindow>,
    pub levels: Vec<StageTwoLevel>,
    pub epsilon: f64,
    /// `(1/H)(n_1 + sum_k (n_{k+1} - n_k) eta_k)`: what the certified
    /// levels allow for `(1/H) sum_i d(f^i(x), y_i)`.
    pub schedule_bound: f64,
    pub distance_to_start: f64,
    pub class_preserved: bool,
}

impl AverageShadowTrace {
    pub fn final_error(&self) -> f64 {
        *self.cesaro_errors.last().unwrap()
    }
}

fn agreement(a: &SymbolicPoint, b: &SymbolicPoint) -> usize {
    (0..METRIC_DEPTH).find(|&k| a.symbol(k) != b.symbol(k)).unwrap_or(METRIC_DEPTH)
}

/// Builds a point whose orbit averages to within the input's Cesàro defect.
///
/// Stage one replaces each step rejected by [`density_one_subsequence`] with
/// a genuine orbit segment glued from `x_b` to `x_a` along a chain of the
/// right length, giving a sequence `y` whose pointwise defects tend to 0.
/// Stage two reads `y` off along the diagonal and certifies, per level
/// `eta_k`, that the orbit stays `eta_k`-close to `y` beyond a boundary
/// growing by `boundary_growth`.
pub fn average_shadow_trace(
    system: &SymbolicSystem,
    spec: &[SymbolicPoint],
    params: &AverageShadowParams,
) -> Result<AverageShadowTrace, ShadowError> {
    let h = spec.len();
    if h < 2 {
        return Err(ShadowError::BadParameter("need at least two points".into()));
    }
    if !(params.epsilon > 0.0 && params.density_growth > 1.0 && params.boundary_growth > 1.0) {
        return Err(ShadowError::BadParameter("epsilon > 0 and growth factors > 1 required".into()));
    }
    if let Some(i) = spec.iter().position(|p| !system.contains(p)) {
        return Err(ShadowError::NotMember(i));
    }
    let dec = decomposition(system)?;
    if let Some(i) = first_class_break(system, spec)? {
        return Err(ShadowError::NotAlongD(i));
    }
    let graph = symbolic_transition_graph(system);

    // Stage one.
    let defects: Vec<f64> = spec.windows(2).map(|w| system.distance(&w[0].shift(), &w[1])).collect();
    let selection = density_one_subsequence(&defects, params.density_growth);
    let mut selected = vec![false; h - 1];
    for &i in &selection.indices {
        selected[i] = true;
    }
    let s_eps = (-params.epsilon.log2()).floor().max(0.0) as usize;
    let resolution = |b: usize| {
        let j = selection.level_at(b);
        if b == 0 {
            j.max(s_eps)
        } else {
            j
        }
    };
    let mut y: Vec<SymbolicPoint> = spec.to_vec();
    let mut windows: Vec<GlueWindow> = Vec::new();
    let mut cursor = 0;
    for i in 0..h - 1 {
        if selected[i] || i < cursor {
            continue;
        }
        let mut found = None;
        'search: for a in i + 1..h {
            for len in (a - i)..=(a - cursor) {
                let b = a - len;
                let r = resolution(b);
                if len < r + 1 {
                    continue;
                }
                let from = spec[b].symbol(r) as usize;
                if let Some(path) = path_of_length(&graph, from, spec[a].first() as usize, len - r) {
                    found = Some((b, a, r, path));
                    break 'search;
                }
            }
        }
        match found {
            Some((b, a, r, path)) => {
                let mut word = spec[b].word(r + 1);
                word.extend(path[1..path.len() - 1].iter().map(|&v| v as Symbol));
                let z = SymbolicPoint::concat(&word, &spec[a]);
                for t in 0..a - b {
                    y[b + t] = z.shift_by(t);
                }
                windows.push(GlueWindow { start: b, target: a, resolution: r, path_len: path.len() - 1 });
                cursor = a;
            }
            None => {
                // No chain fits before the horizon: follow a true orbit to the end.
                let r = resolution(i);
                let z = system.extend_least(&spec[i].word(r + 1));
                for t in 0..h - i {
                    y[i + t] = z.shift_by(t);
                }
                windows.push(GlueWindow { start: i, target: h, resolution: r, path_len: 0 });
                cursor = h;
            }
        }
    }

    // Stage two.
    let agree: Vec<usize> = y.windows(2).map(|w| agreement(&w[0].shift(), &w[1])).collect();
    if let Some(i) = agree.iter().position(|&a| a == 0) {
        return Err(ShadowError::ScheduleExhausted(format!("regularised sequence breaks at step {i}")));
    }
    let word: Vec<Symbol> = y[..h - 1].iter().map(SymbolicPoint::first).collect();
    let x = SymbolicPoint::concat(&word, &y[h - 1]);
    debug_assert!(system.contains(&x));

    let mut levels = Vec::new();
    let mut boundary = 0usize;
    for k in 1.. {
        let eta = params.epsilon * (-(k as f64 + 2.0)).exp2();
        let s = (-eta.log2()).ceil() as usize;
        if s > METRIC_DEPTH {
            break;
        }
        // Least T with every later step agreeing on at least s symbols.
        let t = agree.iter().rposition(|&a| a < s).map_or(0, |p| p + 1);
        let n = if k == 1 { t } else { t.max((boundary.max(1) as f64 * params.boundary_growth).ceil() as usize) };
        if n >= h - 1 {
            if k == 1 {
                return Err(ShadowError::ScheduleExhausted(format!(
                    "defects never fall below {eta} within the horizon"
                )));
            }
            break;
        }
        boundary = n;
        let verified = (n..h).all(|i| system.distance(&x.shift_by(i), &y[i]) <= eta);
        levels.push(StageTwoLevel { eta, s, boundary: n, verified });
    }

    let mut sum = 0.0;
    let cesaro_errors: Vec<f64> = (0..h)
        .map(|i| {
            sum += system.distance(&x.shift_by(i), &spec[i]);
            sum / (i + 1) as f64
        })
        .collect();
    let class_preserved = dec.class(x.first() as usize) == dec.class(spec[0].first() as usize);
    let mut schedule_bound = levels.first().map_or(h, |l| l.boundary) as f64;
    for (k, l) in levels.iter().enumerate() {
        let end = levels.get(k + 1).map_or(h, |n| n.boundary);
        schedule_bound += (end - l.boundary) as f64 * l.eta;
    }
    schedule_bound /= h as f64;
    Ok(AverageShadowTrace {
        distance_to_start: system.distance(&x, &spec[0]),
        point: x,
        truncated: false,
        horizon: h,
        cesaro_errors,
        input_defects: average_defect_curve(system, spec),
        density_levels: selection.levels,
        windows,
        levels,
        epsilon: params.epsilon,
        schedule_bound,
        class_preserved,
    })
}
