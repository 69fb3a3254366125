//! Command dispatch.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use symdyn::chain::{chain_components, delta_transition_graph, is_chain_mixing, is_chain_transitive};
use symdyn::shadowing::{alternating_blocks, geometric_schedule, simple_cycles, AverageShadowParams};
use symdyn::stats::{
    grid_candidates, DEFAULT_PERIOD_BOUND, DEFAULT_TAIL, DEFAULT_THETA, INTERVAL_GRID, SYMBOLIC_EPSILON,
};
use symdyn::*;

use crate::report::{num, nums, set};
use crate::spec::{finite_point, format_sft_point, interval_point, sft_point, Experiment, PointSpec, System};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Decompose,
    DspCheck,
    Shadow,
    AvgShadow,
    OmegaBar,
    Dc2Scan,
    IrregularScan,
    ScrambledCheck,
    MeasureCenter,
    Entropy,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::DspCheck => "dsp-check",
            Command::Shadow => "shadow",
            Command::AvgShadow => "avg-shadow",
            Command::OmegaBar => "omega-bar",
            Command::Dc2Scan => "dc2-scan",
            Command::IrregularScan => "irregular-scan",
            Command::ScrambledCheck => "scrambled-check",
            Command::MeasureCenter => "measure-center",
            Command::Entropy => "entropy",
        }
    }
}

/// Command-line values that take precedence over the experiment file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub horizon: Option<usize>,
    pub m: Option<usize>,
    pub theta: Option<f64>,
    pub tail: Option<f64>,
    pub ratio: Option<f64>,
}

/// Fully resolved parameters of one run.
struct Ctx<'a> {
    exp: &'a Experiment,
    seed: Option<u64>,
    horizon: Option<usize>,
    m: Option<usize>,
    theta: f64,
    tail: f64,
    ratio: Option<f64>,
}

impl Ctx<'_> {
    fn seed(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| invalid("this command is randomized and needs --seed"))
    }

    fn horizon(&self, default: usize) -> Result<usize, CliError> {
        let h = self.horizon.unwrap_or(default);
        if h == 0 {
            return Err(invalid("horizon must be at least 1"));
        }
        Ok(h)
    }

    fn m(&self) -> Result<usize, CliError> {
        let m = self.m.unwrap_or(3);
        if !(1..=60).contains(&m) {
            return Err(invalid("m must lie in 1..=60"));
        }
        Ok(m)
    }

    fn ratio(&self, default: f64) -> Result<f64, CliError> {
        let r = self.ratio.unwrap_or(default);
        if !(r > 1.0 && r.is_finite()) {
            return Err(invalid("ratio must exceed 1"));
        }
        Ok(r)
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn stage<E: std::fmt::Display>(name: &'static str) -> impl Fn(E) -> CliError {
    move |e| CliError::Analysis { stage: name, message: e.to_string() }
}

fn need<'a, T>(v: &'a Option<T>, field: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| invalid(format!("params.{field} is required for this command")))
}

fn sft(sys: &System, cmd: Command) -> Result<&SymbolicSystem, CliError> {
    match sys {
        System::Sft(s) => Ok(s),
        other => Err(invalid(format!("{} needs an sft, got {}", cmd.name(), other.kind()))),
    }
}

/// Runs one command and returns its payload.
pub fn run(cmd: Command, exp: &Experiment, over: &Overrides) -> Result<Value, CliError> {
    let p = &exp.params;
    let ctx = Ctx {
        exp,
        seed: over.seed.or(exp.seed),
        horizon: over.horizon.or(p.horizon),
        m: over.m.or(p.m),
        theta: over.theta.or(p.theta).unwrap_or(DEFAULT_THETA),
        tail: over.tail.or(p.tail).unwrap_or(DEFAULT_TAIL),
        ratio: over.ratio.or(p.ratio),
    };
    if !(ctx.theta >= 0.0 && ctx.theta < 1.0) {
        return Err(invalid("theta must lie in [0, 1)"));
    }
    if !(ctx.tail > 0.0 && ctx.tail <= 1.0) {
        return Err(invalid("tail must lie in (0, 1]"));
    }
    match cmd {
        Command::Decompose => decompose(&ctx),
        Command::DspCheck => dsp(&ctx),
        Command::Shadow => shadow(&ctx),
        Command::AvgShadow => avg_shadow(&ctx),
        Command::OmegaBar => omega_bar(&ctx),
        Command::Dc2Scan => dc2_scan(&ctx),
        Command::IrregularScan => irregular_scan(&ctx),
        Command::ScrambledCheck => scrambled(&ctx),
        Command::MeasureCenter => measure_center(&ctx),
        Command::Entropy => entropy(&ctx),
    }
}

fn decompose(ctx: &Ctx) -> Result<Value, CliError> {
    let graph = match &ctx.exp.system {
        System::Sft(s) => symbolic_transition_graph(s),
        System::Finite(f) => {
            let delta = ctx.exp.params.delta.unwrap_or(0.5);
            delta_transition_graph(f, delta).map_err(|e| invalid(e.to_string()))?
        }
        System::Interval(_) => return Err(invalid("decompose needs an sft or a finite map")),
    };
    let names = |vs: &[usize]| set(vs.iter().map(|&v| graph.label(v).to_string()));
    let comps = chain_components(&graph);
    let mut out = Vec::new();
    for comp in &comps.components {
        let dec = cyclic_decomposition(comp, &graph).map_err(stage("cyclic_decomposition"))?;
        let bound = uniform_chain_bound(&graph, &dec).map_err(stage("uniform_chain_bound"))?;
        out.push(json!({
            "vertices": names(comp),
            "m": dec.m,
            "classes": dec.classes.iter().map(|c| names(c)).collect::<Vec<_>>(),
            "chain_bound": {
                "n": bound.n,
                "l_max": bound.l_max,
                "frobenius": bound.frobenius,
                "holds_for_all_larger": bound.holds_for_all_larger,
            },
        }));
    }
    Ok(json!({
        "vertices": graph.labels(),
        "chain_transitive": is_chain_transitive(&graph),
        "chain_mixing": is_chain_mixing(&graph),
        "components": out,
        "non_recurrent": names(&comps.non_recurrent),
    }))
}

fn dsp(ctx: &Ctx) -> Result<Value, CliError> {
    let s = sft(&ctx.exp.system, Command::DspCheck)?;
    let trials = ctx.exp.params.trials.unwrap_or(100);
    let r = dsp_check(s, ctx.m()?, trials, ctx.horizon(32)?, ctx.seed()?).map_err(stage("dsp_check"))?;
    let d = cyclic_decomposition(&(0..s.size()).collect::<Vec<_>>(), &symbolic_transition_graph(s))
        .map_err(stage("cyclic_decomposition"))?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "class": c.class,
                "symbols": set(d.classes[c.class].iter().map(|&v| s.alphabet().name(v as Symbol).to_string())),
                "trials": c.trials,
                "worst_epsilon": num(c.worst_epsilon),
                "all_same_class": c.all_same_class,
                "pass": c.pass,
            })
        })
        .collect();
    Ok(json!({
        "m_delta": r.m_delta,
        "epsilon_bound": num((1.0 - r.m_delta as f64).exp2()),
        "period": r.period,
        "length": r.length,
        "uniform": r.uniform,
        "classes": classes,
    }))
}

fn shadow(ctx: &Ctx) -> Result<Value, CliError> {
    let s = sft(&ctx.exp.system, Command::Shadow)?;
    let m = ctx.m()?;
    let delta = (-(m as f64)).exp2();
    let po = match &ctx.exp.params.pseudo_orbit {
        Some(points) => {
            let pts = points.iter().map(|p| sft_point(s, p)).collect::<Result<Vec<_>, _>>()?;
            if pts.len() < 2 {
                return Err(invalid("params.pseudo_orbit needs at least two points"));
            }
            PseudoOrbit::symbolic(s, pts, delta).map_err(|e| invalid(e.to_string()))?
        }
        None => {
            let first = match &ctx.exp.params.first_symbol {
                Some(name) => s.alphabet().lookup(name).ok_or_else(|| invalid(format!("unknown symbol `{name}`")))?,
                None => 0,
            };
            random_pseudo_orbit(s, first, ctx.horizon(32)?, m, ctx.seed()?).map_err(stage("random_pseudo_orbit"))?
        }
    };
    let r = sft_shadow(s, &po).map_err(stage("sft_shadow"))?;
    Ok(json!({
        "m_delta": m,
        "horizon": r.horizon,
        "max_defect": num(po.defects.iter().copied().fold(0.0, f64::max)),
        "shadow_point": format_sft_point(s, &r.shadow_point),
        "epsilon_achieved": num(r.epsilon_achieved),
        "epsilon_bound": num((1.0 - m as f64).exp2()),
        "same_class": r.same_class,
    }))
}

fn avg_shadow(ctx: &Ctx) -> Result<Value, CliError> {
    let s = sft(&ctx.exp.system, Command::AvgShadow)?;
    let p = &ctx.exp.params;
    let anchors = match &p.anchors {
        Some(a) => a.iter().map(|x| sft_point(s, x)).collect::<Result<Vec<_>, _>>()?,
        None => simple_cycles(&symbolic_transition_graph(s), 2)
            .iter()
            .map(|c| SymbolicPoint::periodic(&c.iter().map(|&v| v as Symbol).collect::<Vec<_>>()))
            .collect(),
    };
    if anchors.is_empty() || anchors.iter().any(|a| !a.is_periodic()) {
        return Err(invalid("anchors must be a nonempty list of periodic points"));
    }
    let h = ctx.horizon(1 << 14)?;
    let first = p.first_block.unwrap_or(16).max(1);
    let schedule = geometric_schedule(anchors.len(), first, ctx.ratio(4.0)?, h);
    let xs = alternating_blocks(s, &anchors, &schedule).map_err(stage("alternating_blocks"))?;
    let mut params = AverageShadowParams::default();
    if let Some(e) = p.epsilon {
        params.epsilon = e;
    }
    let t = average_shadow_trace(s, &xs, &params).map_err(stage("average_shadow_trace"))?;
    let checkpoints: Vec<Value> = (0..)
        .map(|k| 1usize << k)
        .take_while(|&n| n < t.horizon)
        .chain([t.horizon])
        .map(|n| json!([n, num(t.cesaro_errors[n - 1])]))
        .collect();
    Ok(json!({
        "anchors": anchors.iter().map(|a| format_sft_point(s, a)).collect::<Vec<_>>(),
        "schedule": schedule.iter().map(|&(a, l)| json!([a, l])).collect::<Vec<_>>(),
        "point": format_sft_point(s, &t.point),
        "truncated": t.truncated,
        "horizon": t.horizon,
        "final_error": num(t.final_error()),
        "input_defect": num(*t.input_defects.last().unwrap()),
        "schedule_bound": num(t.schedule_bound),
        "cesaro_checkpoints": checkpoints,
        "glue_windows": t.windows.len(),
        "levels": t.levels.iter().map(|l| json!({
            "eta": num(l.eta), "s": l.s, "boundary": l.boundary, "verified": l.verified,
        })).collect::<Vec<_>>(),
        "epsilon": num(t.epsilon),
        "distance_to_start": num(t.distance_to_start),
        "class_preserved": t.class_preserved,
    }))
}

/// Periodic points of period at most `q` of an sft.
fn periodic_points(s: &SymbolicSystem, q: usize) -> Vec<SymbolicPoint> {
    fn go(s: &SymbolicSystem, w: &mut Vec<Symbol>, q: usize, out: &mut BTreeSet<SymbolicPoint>) {
        if s.allowed(*w.last().unwrap(), w[0]) {
            out.insert(SymbolicPoint::periodic(w));
        }
        if w.len() < q {
            for &b in s.successors(*w.last().unwrap()) {
                w.push(b);
                go(s, w, q, out);
                w.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for a in 0..s.size() as Symbol {
        go(s, &mut vec![a], q, &mut out);
    }
    out.into_iter().collect()
}

/// Points resolved for one system kind, with their report labels.
enum Points {
    Sft(Vec<SymbolicPoint>),
    Finite(Vec<usize>),
    Interval(Vec<f64>),
}

impl Points {
    fn len(&self) -> usize {
        match self {
            Points::Sft(v) => v.len(),
            Points::Finite(v) => v.len(),
            Points::Interval(v) => v.len(),
        }
    }

    fn labels(&self, sys: &System) -> Vec<Value> {
        match (self, sys) {
            (Points::Sft(v), System::Sft(s)) => v.iter().map(|p| Value::String(format_sft_point(s, p))).collect(),
            (Points::Finite(v), System::Finite(f)) => v.iter().map(|&p| Value::String(f.name(p).into())).collect(),
            (Points::Interval(v), _) => v.iter().map(|&x| num(x)).collect(),
            _ => unreachable!("points resolved against their own system"),
        }
    }
}

fn resolve(sys: &System, specs: &[PointSpec]) -> Result<Points, CliError> {
    Ok(match sys {
        System::Sft(s) => Points::Sft(specs.iter().map(|p| sft_point(s, p)).collect::<Result<_, _>>()?),
        System::Finite(f) => Points::Finite(specs.iter().map(|p| finite_point(f, p)).collect::<Result<_, _>>()?),
        System::Interval(_) => Points::Interval(specs.iter().map(interval_point).collect::<Result<_, _>>()?),
    })
}

fn candidates(ctx: &Ctx) -> Result<Points, CliError> {
    if let Some(c) = &ctx.exp.params.candidates {
        return resolve(&ctx.exp.system, c);
    }
    Ok(match &ctx.exp.system {
        System::Sft(s) => Points::Sft(periodic_points(s, 4)),
        System::Finite(f) => Points::Finite((0..f.len()).collect()),
        System::Interval(_) => Points::Interval(grid_candidates((1.0 / INTERVAL_GRID) as usize)),
    })
}

fn epsilon(ctx: &Ctx) -> Result<f64, CliError> {
    let e = ctx.exp.params.epsilon.unwrap_or(match ctx.exp.system {
        System::Sft(_) => SYMBOLIC_EPSILON,
        System::Finite(_) => 0.0,
        System::Interval(_) => INTERVAL_GRID / 2.0,
    });
    if !(e >= 0.0 && e.is_finite()) {
        return Err(invalid("epsilon must be a nonnegative number"));
    }
    Ok(e)
}

/// Labels sorted as a set: strings lexicographically, numbers ascending.
fn sorted(mut v: Vec<Value>) -> Value {
    v.sort_by(|a, b| match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        _ => a.to_string().cmp(&b.to_string()),
    });
    v.dedup();
    Value::Array(v)
}

fn samples<S: DynamicalSystem>(sys: &S, start: &S::Point, h: usize) -> Result<Vec<S::Point>, CliError> {
    Ok(orbit(sys, start, h).map_err(|e| invalid(e.to_string()))?.samples)
}

fn omega_members<S: DynamicalSystem>(
    sys: &S,
    start: &S::Point,
    cands: &[S::Point],
    ctx: &Ctx,
    h: usize,
) -> Result<(Vec<usize>, Vec<f64>), CliError> {
    let xs = samples(sys, start, h)?;
    let e = omega_bar_estimate(sys, &xs, cands, epsilon(ctx)?, ctx.theta, ctx.tail).map_err(stage("omega_bar_estimate"))?;
    Ok((e.members, e.upper))
}

fn omega_bar(ctx: &Ctx) -> Result<Value, CliError> {
    let sys = &ctx.exp.system;
    let start = need(&ctx.exp.params.start, "start")?;
    let h = ctx.horizon(4096)?;
    let cands = candidates(ctx)?;
    let start = resolve(sys, std::slice::from_ref(start))?;
    let (members, upper) = match (sys, &start, &cands) {
        (System::Sft(s), Points::Sft(x), Points::Sft(c)) => omega_members(s, &x[0], c, ctx, h)?,
        (System::Finite(f), Points::Finite(x), Points::Finite(c)) => omega_members(f, &x[0], c, ctx, h)?,
        (System::Interval(f), Points::Interval(x), Points::Interval(c)) => omega_members(f, &x[0], c, ctx, h)?,
        _ => unreachable!(),
    };
    let labels = cands.labels(sys);
    let mut payload = json!({
        "start": start.labels(sys)[0],
        "horizon": h,
        "theta": num(ctx.theta),
        "epsilon": num(epsilon(ctx)?),
        "tail_fraction": num(ctx.tail),
        "candidates": cands.len(),
        "members": sorted(members.iter().map(|&i| labels[i].clone()).collect()),
        "upper_density": sorted(members.iter().map(|&i| json!([labels[i], num(upper[i])])).collect()),
    });
    if let (System::Finite(f), Points::Finite(x)) = (sys, &start) {
        let exact = omega_bar_exact_finite(f, x[0]).map_err(stage("omega_bar_exact_finite"))?;
        payload["exact"] = set(exact.iter().map(|&p| f.name(p).to_string()));
    }
    Ok(payload)
}

fn default_grid() -> Vec<f64> {
    (0..=8).rev().map(|k| (-(k as f64)).exp2()).collect()
}

fn dc2_scan(ctx: &Ctx) -> Result<Value, CliError> {
    let sys = &ctx.exp.system;
    let p = &ctx.exp.params;
    let pts = resolve(sys, &[need(&p.x, "x")?.clone(), need(&p.y, "y")?.clone()])?;
    let h = ctx.horizon(4096)?;
    let grid = p.t_grid.clone().unwrap_or_else(default_grid);
    let slack = p.slack.unwrap_or(0.05);
    if !(0.0..1.0).contains(&slack) {
        return Err(invalid("slack must lie in [0, 1)"));
    }
    let df = match (sys, &pts) {
        (System::Sft(s), Points::Sft(v)) => distributional_functions(s, &samples(s, &v[0], h)?, &samples(s, &v[1], h)?, &grid, ctx.tail),
        (System::Finite(f), Points::Finite(v)) => distributional_functions(f, &samples(f, &v[0], h)?, &samples(f, &v[1], h)?, &grid, ctx.tail),
        (System::Interval(f), Points::Interval(v)) => distributional_functions(f, &samples(f, &v[0], h)?, &samples(f, &v[1], h)?, &grid, ctx.tail),
        _ => unreachable!(),
    }
    .map_err(|e| invalid(e.to_string()))?;
    let mut witness = None;
    for &t in &grid {
        if dc2_verdict(&df, t, slack).map_err(stage("dc2_verdict"))? {
            witness = Some(t);
            break;
        }
    }
    let labels = pts.labels(sys);
    Ok(json!({
        "x": labels[0],
        "y": labels[1],
        "horizon": h,
        "tail_fraction": num(ctx.tail),
        "slack": num(slack),
        "t_grid": nums(&df.t_grid),
        "f": nums(&df.f),
        "f_star": nums(&df.f_star),
        "dc2": witness.is_some(),
        "witness_delta": witness.map_or(Value::Null, num),
    }))
}

fn irregular_scan(ctx: &Ctx) -> Result<Value, CliError> {
    let s = sft(&ctx.exp.system, Command::IrregularScan)?;
    let class = ctx.exp.params.class.unwrap_or(0);
    let w = irregular_witness_sft(s, class, ctx.ratio(2.0)?, ctx.horizon(1 << 16)?, ctx.seed()?)
        .map_err(stage("irregular_witness_sft"))?;
    let name = |v: usize| s.alphabet().name(v as Symbol).to_string();
    let r = &w.report;
    Ok(json!({
        "class": w.class,
        "point": format_sft_point(s, &w.point),
        "cycles": w.cycles.iter().map(|c| c.iter().map(|&v| name(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "observable_support": set(w.observable.iter().map(|&v| name(v))),
        "stages": w.stages,
        "shadow_epsilon": num(w.shadow_epsilon),
        "lim_inf": num(r.lim_inf),
        "lim_sup": num(r.lim_sup),
        "oscillation": num(r.oscillation),
        "epsilon": num(r.epsilon),
        "tail_fraction": num(r.tail_fraction),
        "irregular": r.irregular,
    }))
}

fn scrambled(ctx: &Ctx) -> Result<Value, CliError> {
    let sys = &ctx.exp.system;
    let p = &ctx.exp.params;
    let pts = resolve(sys, need(&p.points, "points")?)?;
    if pts.len() < 2 {
        return Err(invalid("params.points needs at least two points"));
    }
    let cands = candidates(ctx)?;
    let h = ctx.horizon(4096)?;
    let eps = epsilon(ctx)?;
    let bound = p.period_bound.unwrap_or(DEFAULT_PERIOD_BOUND);
    let w = match (sys, &pts, &cands) {
        (System::Sft(s), Points::Sft(x), Points::Sft(c)) => {
            scrambled_family_check(s, x, c, h, ctx.theta, eps, ctx.tail, bound).map(|w| (w.estimates, w.pairs, w.verdict))
        }
        (System::Finite(f), Points::Finite(x), Points::Finite(c)) => {
            scrambled_family_check(f, x, c, h, ctx.theta, eps, ctx.tail, bound).map(|w| (w.estimates, w.pairs, w.verdict))
        }
        (System::Interval(f), Points::Interval(x), Points::Interval(c)) => {
            scrambled_family_check(f, x, c, h, ctx.theta, eps, ctx.tail, bound).map(|w| (w.estimates, w.pairs, w.verdict))
        }
        _ => unreachable!(),
    }
    .map_err(stage("scrambled_family_check"))?;
    let (estimates, pairs, verdict) = w;
    let labels = cands.labels(sys);
    Ok(json!({
        "points": pts.labels(sys),
        "horizon": h,
        "theta": num(ctx.theta),
        "epsilon": num(eps),
        "period_bound": bound,
        "estimates": estimates.iter().map(|e| sorted(e.iter().map(|&i| labels[i].clone()).collect())).collect::<Vec<_>>(),
        "pairs": pairs.iter().map(|r| json!({
            "x": r.x,
            "y": r.y,
            "difference_nonempty": r.difference_nonempty,
            "intersection_nonempty": r.intersection_nonempty,
            "non_periodic_found": r.non_periodic_found,
            "passes": r.passes(),
        })).collect::<Vec<_>>(),
        "verdict": verdict,
    }))
}

fn measure_center(ctx: &Ctx) -> Result<Value, CliError> {
    let System::Finite(f) = &ctx.exp.system else {
        return Err(invalid("measure-center needs a finite map"));
    };
    let c = measure_center_finite(f);
    let names = |v: &[usize]| set(v.iter().map(|&p| f.name(p).to_string()));
    Ok(json!({
        "center": names(&c.center),
        "recurrent": names(&c.recurrent),
        "invariant_supports": names(&c.invariant_supports),
        "agree": c.agree,
        "uniform_recurrence_gap": uniform_recurrence_gap(f).ok(),
    }))
}

fn entropy(ctx: &Ctx) -> Result<Value, CliError> {
    let s = sft(&ctx.exp.system, Command::Entropy)?;
    Ok(json!({
        "entropy": num(topological_entropy(s)),
        "memory": s.memory(),
        "symbols": s.size(),
    }))
}
