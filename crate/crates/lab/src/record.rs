//! Per-trial rows, aggregates and their CSV and JSON forms.

use std::fmt;

use freeprod::scalar::format_ratio;
use freeprod::Exact;
use serde_json::{json, Map, Value as Json};

use crate::config::SweepPoint;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(f) => Some(*f),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => write!(f, "{s}"),
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// Metrics of one successful trial, in the experiment's column order.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub success: bool,
    pub metrics: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub experiment: String,
    pub point: usize,
    pub trial: usize,
    /// Global index in point-major order; the seed is derived from it.
    pub index: usize,
    pub seed: u64,
    pub density: Exact,
    pub ell: usize,
    pub m: usize,
    /// Error message of a trial that stopped on a budget or input error.
    pub error: Option<String>,
    pub outcome: Option<Outcome>,
    pub elapsed_ms: f64,
}

impl TrialRecord {
    pub fn success(&self) -> bool {
        self.outcome.as_ref().is_some_and(|o| o.success)
    }

    pub fn metric(&self, columns: &[&str], name: &str) -> Option<&Value> {
        let i = columns.iter().position(|c| *c == name)?;
        self.outcome.as_ref().map(|o| &o.metrics[i])
    }
}

pub const LEADING_COLUMNS: [&str; 9] = ["experiment", "point", "trial", "index", "seed", "d", "ell", "m", "status"];
pub const TIMING_COLUMN: &str = "elapsed_ms";

/// Header plus one row per record; the timing column comes last.
pub fn to_csv(columns: &[&str], records: &[TrialRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = LEADING_COLUMNS.iter().copied().chain(["success"]).chain(columns.iter().copied()).chain([TIMING_COLUMN]).collect();
    w.write_record(&header).expect("in-memory write");
    for r in records {
        let mut row = vec![r.experiment.clone(), r.point.to_string(), r.trial.to_string(), r.index.to_string(), r.seed.to_string(), format_ratio(&r.density), r.ell.to_string(), r.m.to_string()];
        match (&r.error, &r.outcome) {
            (Some(e), _) => {
                row.push(format!("error: {e}"));
                row.push(String::new());
                row.extend(columns.iter().map(|_| String::new()));
            }
            (None, Some(o)) => {
                row.push("ok".into());
                row.push(o.success.to_string());
                row.extend(o.metrics.iter().map(Value::to_string));
            }
            (None, None) => unreachable!("a record holds an outcome or an error"),
        }
        row.push(format!("{:.3}", r.elapsed_ms));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// The CSV with the timing column removed.
pub fn strip_timing(csv_text: &str) -> String {
    csv_text.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}

/// Wilson score interval at 95% for `k` successes in `n` trials.
pub fn wilson(k: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let (n, p) = (n as f64, k as f64 / n as f64);
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub point: SweepPoint,
    pub trials: usize,
    pub errors: usize,
    pub successes: usize,
    /// Successes over completed trials.
    pub fraction: f64,
    pub wilson: (f64, f64),
    /// Mean and median of each numeric metric over completed trials.
    pub summaries: Vec<(String, f64, f64)>,
}

pub fn aggregate(points: &[SweepPoint], columns: &[&str], records: &[TrialRecord]) -> Vec<Aggregate> {
    points
        .iter()
        .map(|p| {
            let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.point == p.index).collect();
            let done: Vec<&Outcome> = rows.iter().filter_map(|r| r.outcome.as_ref()).collect();
            let successes = done.iter().filter(|o| o.success).count();
            let summaries = columns
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    let mut xs: Vec<f64> = done.iter().filter_map(|o| o.metrics[i].as_f64()).collect();
                    if xs.is_empty() || xs.len() != done.len() {
                        return None;
                    }
                    Some((c.to_string(), mean(&xs), median(&mut xs)))
                })
                .collect();
            Aggregate {
                point: p.clone(),
                trials: rows.len(),
                errors: rows.len() - done.len(),
                successes,
                fraction: if done.is_empty() { 0.0 } else { successes as f64 / done.len() as f64 },
                wilson: wilson(successes, done.len()),
                summaries,
            }
        })
        .collect()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

pub fn summary_json(experiment: &str, anchor: &str, master_seed: u64, config_text: &str, aggregates: &[Aggregate]) -> Json {
    let points: Vec<Json> = aggregates
        .iter()
        .map(|a| {
            let metrics: Map<String, Json> = a.summaries.iter().map(|(c, m, med)| (c.clone(), json!({ "mean": m, "median": med }))).collect();
            json!({
                "point": a.point.index,
                "d": format_ratio(&a.point.density),
                "ell": a.point.ell,
                "m": a.point.m,
                "trials": a.trials,
                "errors": a.errors,
                "successes": a.successes,
                "fraction": a.fraction,
                "wilson95": [a.wilson.0, a.wilson.1],
                "metrics": metrics,
            })
        })
        .collect();
    json!({
        "experiment": experiment,
        "anchor": anchor,
        "master_seed": master_seed,
        "config": config_text,
        "points": points,
    })
}

pub(crate) fn outcome(success: bool, metrics: Vec<Value>) -> Outcome {
    Outcome { success, metrics }
}

pub(crate) fn values<const N: usize>(v: [Value; N]) -> Vec<Value> {
    v.into()
}
