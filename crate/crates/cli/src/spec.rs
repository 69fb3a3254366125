//! JSON system and experiment specs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use symdyn::{
    sft_from_forbidden_words, Alphabet, FiniteMapSystem, IntervalMapSystem, Metric, SymbolicPoint,
    SymbolicSystem,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Sft {
        alphabet: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        forbidden: Option<Vec<String>>,
        /// One-step transition matrix over `alphabet`, 0/1 entries.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<u8>>>,
    },
    FiniteMap {
        points: Vec<String>,
        map: BTreeMap<String, String>,
        #[serde(default = "discrete")]
        metric: MetricSpec,
    },
    IntervalPl {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(String),
    Line { line: Vec<f64> },
    Table { table: Vec<Vec<f64>> },
}

fn discrete() -> MetricSpec {
    MetricSpec::Named("discrete".into())
}

#[derive(Debug, Clone)]
pub enum System {
    Sft(SymbolicSystem),
    Finite(FiniteMapSystem),
    Interval(IntervalMapSystem),
}

impl System {
    pub fn kind(&self) -> &'static str {
        match self {
            System::Sft(_) => "sft",
            System::Finite(_) => "finite_map",
            System::Interval(_) => "interval_pl",
        }
    }
}

impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (System::Sft(a), System::Sft(b)) => a == b,
            (System::Finite(a), System::Finite(b)) => a == b,
            (System::Interval(a), System::Interval(b)) => {
                a.breakpoints() == b.breakpoints() && a.values() == b.values()
            }
            _ => false,
        }
    }
}

fn invalid(field: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {err}"))
}

impl SystemSpec {
    pub fn build(&self) -> Result<System, CliError> {
        match self {
            SystemSpec::Sft { alphabet, forbidden, matrix } => {
                let a = Alphabet::new(alphabet.clone()).map_err(|e| invalid("alphabet", e))?;
                match (forbidden, matrix) {
                    (Some(words), None) => {
                        let words = words
                            .iter()
                            .enumerate()
                            .map(|(i, w)| a.parse_word(w).map_err(|e| invalid(&format!("forbidden[{i}]"), e)))
                            .collect::<Result<Vec<_>, _>>()?;
                        let s = sft_from_forbidden_words(&a, &words).map_err(|e| invalid("forbidden", e))?;
                        Ok(System::Sft(s))
                    }
                    (None, Some(m)) => {
                        let k = a.len();
                        if m.len() != k || m.iter().any(|r| r.len() != k) {
                            return Err(invalid("matrix", format!("must be {k}x{k}")));
                        }
                        if m.iter().flatten().any(|&v| v > 1) {
                            return Err(invalid("matrix", "entries must be 0 or 1"));
                        }
                        let allowed = m.iter().map(|r| r.iter().map(|&v| v == 1).collect()).collect();
                        let s = SymbolicSystem::from_allowed(a, allowed, 1).map_err(|e| invalid("matrix", e))?;
                        Ok(System::Sft(s))
                    }
                    _ => Err(invalid("sft", "give exactly one of `forbidden` or `matrix`")),
                }
            }
            SystemSpec::FiniteMap { points, map, metric } => {
                let index: BTreeMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
                let mut images = Vec::with_capacity(points.len());
                for p in points {
                    let target = map.get(p).ok_or_else(|| invalid("map", format!("no image for `{p}`")))?;
                    let &t = index.get(target.as_str()).ok_or_else(|| invalid(&format!("map.{p}"), format!("unknown point `{target}`")))?;
                    images.push(t);
                }
                if let Some(k) = map.keys().find(|k| !index.contains_key(k.as_str())) {
                    return Err(invalid("map", format!("unknown point `{k}`")));
                }
                let metric = match metric {
                    MetricSpec::Named(n) if n == "discrete" => Metric::Discrete,
                    MetricSpec::Named(n) => return Err(invalid("metric", format!("unknown metric `{n}`"))),
                    MetricSpec::Line { line } => Metric::Line(line.clone()),
                    MetricSpec::Table { table } => Metric::Table(table.clone()),
                };
                let f = FiniteMapSystem::new(points.clone(), images, metric).map_err(|e| invalid("finite_map", e))?;
                Ok(System::Finite(f))
            }
            SystemSpec::IntervalPl { breakpoints, values } => {
                let f = IntervalMapSystem::new(breakpoints.clone(), values.clone())
                    .map_err(|e| invalid("interval_pl", e))?;
                Ok(System::Interval(f))
            }
        }
    }

    /// A spec that builds back to `system`.
    pub fn describe(system: &System) -> SystemSpec {
        match system {
            System::Sft(s) => describe_sft(s),
            System::Finite(f) => SystemSpec::FiniteMap {
                points: f.names().to_vec(),
                map: (0..f.len()).map(|p| (f.name(p).to_string(), f.name(f.image(p)).to_string())).collect(),
                metric: match f.metric() {
                    Metric::Discrete => discrete(),
                    Metric::Line(xs) => MetricSpec::Line { line: xs.clone() },
                    Metric::Table(t) => MetricSpec::Table { table: t.clone() },
                },
            },
            System::Interval(f) => SystemSpec::IntervalPl {
                breakpoints: f.breakpoints().to_vec(),
                values: f.values().to_vec(),
            },
        }
    }
}

/// Every `(N+1)`-word that is not an edge of the pruned block graph.
fn describe_sft(s: &SymbolicSystem) -> SystemSpec {
    let base = s.base_alphabet();
    let n = s.memory();
    let k = base.len();
    let mut edges = std::collections::BTreeSet::new();
    for a in 0..s.size() {
        for &b in s.successors(a as u16) {
            let mut w = s.block(a as u16).to_vec();
            w.push(*s.block(b).last().unwrap());
            edges.insert(w);
        }
    }
    let mut forbidden = Vec::new();
    for code in 0..k.pow(n as u32 + 1) {
        let mut c = code;
        let mut w = vec![0u16; n + 1];
        for slot in w.iter_mut().rev() {
            *slot = (c % k) as u16;
            c /= k;
        }
        if !edges.contains(&w) {
            forbidden.push(base.format_word(&w));
        }
    }
    SystemSpec::Sft { alphabet: base.symbols().to_vec(), forbidden: Some(forbidden), matrix: None }
}

/// A point as written in an experiment file: a finite-map point name, an
/// interval coordinate, or an eventually periodic word `prefix (period)^∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Number(f64),
    Name(String),
    Sequence {
        #[serde(default)]
        prefix: String,
        period: String,
    },
}

pub fn sft_point(s: &SymbolicSystem, p: &PointSpec) -> Result<SymbolicPoint, CliError> {
    let PointSpec::Sequence { prefix, period } = p else {
        return Err(invalid("point", format!("expected {{\"prefix\", \"period\"}} for an sft, got {p:?}")));
    };
    let a = s.base_alphabet();
    let u = if prefix.is_empty() { vec![] } else { a.parse_word(prefix).map_err(|e| invalid("point", e))? };
    let v = a.parse_word(period).map_err(|e| invalid("point", e))?;
    s.encode_point(&SymbolicPoint::new(&u, &v)).map_err(|e| invalid("point", e))
}

pub fn finite_point(f: &FiniteMapSystem, p: &PointSpec) -> Result<usize, CliError> {
    match p {
        PointSpec::Name(n) => f.lookup(n).ok_or_else(|| invalid("point", format!("unknown point `{n}`"))),
        _ => Err(invalid("point", format!("expected a point name, got {p:?}"))),
    }
}

pub fn interval_point(p: &PointSpec) -> Result<f64, CliError> {
    match p {
        PointSpec::Number(x) if (0.0..=1.0).contains(x) => Ok(*x),
        _ => Err(invalid("point", format!("expected a number in [0, 1], got {p:?}"))),
    }
}

/// `u(v)` over the base alphabet.
pub fn format_sft_point(s: &SymbolicSystem, p: &SymbolicPoint) -> String {
    let b = s.decode_point(p);
    let a = s.base_alphabet();
    format!("{}({})", a.format_word(&b.prefix_word()), a.format_word(&b.period_word()))
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub m: Option<usize>,
    pub horizon: Option<usize>,
    pub theta: Option<f64>,
    pub tail: Option<f64>,
    pub ratio: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub trials: Option<usize>,
    pub first_block: Option<usize>,
    pub first_symbol: Option<String>,
    pub class: Option<usize>,
    pub slack: Option<f64>,
    pub period_bound: Option<usize>,
    pub t_grid: Option<Vec<f64>>,
    pub start: Option<PointSpec>,
    pub x: Option<PointSpec>,
    pub y: Option<PointSpec>,
    pub points: Option<Vec<PointSpec>>,
    pub candidates: Option<Vec<PointSpec>>,
    pub anchors: Option<Vec<PointSpec>>,
    pub pseudo_orbit: Option<Vec<PointSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    system: Value,
    #[serde(default)]
    command: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    params: Params,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub system: System,
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub params: Params,
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("{what}: {e}")))
}

pub fn parse_system_spec(text: &str) -> Result<System, CliError> {
    parse_json::<SystemSpec>(text, "system spec")?.build()
}

pub fn print_system_spec(system: &System) -> String {
    serde_json::to_string_pretty(&SystemSpec::describe(system)).expect("specs serialize")
}

/// Reads either a bare system spec or an experiment wrapper
/// `{"system": spec-or-path, "command", "seed", "params"}`.
pub fn parse_experiment(text: &str, dir: &Path) -> Result<Experiment, CliError> {
    let value: Value = parse_json(text, "spec")?;
    if value.get("kind").is_some() {
        return Ok(Experiment { system: parse_system_spec(text)?, command: None, seed: None, params: Params::default() });
    }
    let file: ExperimentFile = parse_json(text, "experiment")?;
    let system = match &file.system {
        Value::String(path) => {
            let path = dir.join(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Validation(format!("system file {}: {e}", path.display())))?;
            parse_system_spec(&text)?
        }
        v => serde_json::from_value::<SystemSpec>(v.clone())
            .map_err(|e| CliError::Validation(format!("system: {e}")))?
            .build()?,
    };
    Ok(Experiment { system, command: file.command, seed: file.seed, params: file.params })
}
