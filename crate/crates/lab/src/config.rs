//! Key-value experiment configuration.
//!
//! One `key = value` pair per line; `#` starts a comment. Lists are
//! comma separated. Unknown keys are rejected.

use std::collections::BTreeMap;

use freeprod::factor::{FactorGroup, FreeProductWord};
use freeprod::sampler::{ModelParams, SamplerKind, DEFAULT_RELATOR_CAP};
use freeprod::scalar::{format_ratio, parse_ratio};
use freeprod::Exact;

use crate::LabError;

const KEYS: &[&str] = &[
    "experiment",
    "factors",
    "density",
    "ell",
    "m",
    "trials",
    "seed",
    "sampler",
    "relator_cap",
    "diagram_faces",
    "diagram_connectors",
    "wall_budget",
    "coset_bound",
    "relators",
    "fiber_radius",
    "epsilon",
    "csv",
    "json",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub factors: Vec<FactorGroup>,
    pub densities: Vec<Exact>,
    pub ells: Vec<usize>,
    pub ms: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub sampler: SamplerKind,
    pub relator_cap: Option<u64>,
    /// Face bound `K` for diagram enumeration and random diagrams.
    pub diagram_faces: usize,
    /// Connector bound `M` for diagram enumeration.
    pub diagram_connectors: usize,
    pub wall_budget: usize,
    pub coset_bound: usize,
    /// Fixed relators for experiments on a given presentation.
    pub relators: Vec<FreeProductWord>,
    pub fiber_radius: usize,
    pub epsilon: Exact,
    pub csv: String,
    pub json: String,
}

/// One sweep point; `index` is its position in density-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub index: usize,
    pub density: Exact,
    pub ell: usize,
    pub m: usize,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("line {}: expected key = value", n + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(bad(format!("line {}: unknown key {k}", n + 1)));
            }
            if map.insert(k, v.trim()).is_some() {
                return Err(bad(format!("line {}: duplicate key {k}", n + 1)));
            }
        }
        let get = |k: &str, default: &'static str| map.get(k).copied().unwrap_or(default);
        let experiment = map.get("experiment").ok_or_else(|| bad("missing experiment".into()))?.to_string();
        let factors = get("factors", "cyclic:3=a cyclic:3=b")
            .split_whitespace()
            .map(|s| FactorGroup::parse_spec(s).map_err(|e| bad(format!("factors: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let densities = list(get("density", "1/16"), "density", parse_ratio)?;
        let ells = list(get("ell", "8"), "ell", |s| s.parse().ok())?;
        let ms = list(get("m", "1"), "m", |s| s.parse().ok())?;
        let relators = get("relators", "1:t1 2:t1 1:t1 2:t1")
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| FreeProductWord::parse(s.trim()).map_err(|e| bad(format!("relators: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let cap = match get("relator_cap", "") {
            "" => Some(DEFAULT_RELATOR_CAP),
            "none" => None,
            c => Some(number(c, "relator_cap")?),
        };
        let c = ExperimentConfig {
            csv: get("csv", "").to_string(),
            json: get("json", "").to_string(),
            factors,
            densities,
            ells,
            ms,
            trials: number(get("trials", "1"), "trials")? as usize,
            seed: number(get("seed", "0"), "seed")?,
            sampler: SamplerKind::from_tag(get("sampler", "exact-uniform")).ok_or_else(|| bad("sampler: expected exact-uniform or sequential".into()))?,
            relator_cap: cap,
            diagram_faces: number(get("diagram_faces", "2"), "diagram_faces")? as usize,
            diagram_connectors: number(get("diagram_connectors", "3"), "diagram_connectors")? as usize,
            wall_budget: number(get("wall_budget", "20"), "wall_budget")? as usize,
            coset_bound: number(get("coset_bound", "100000"), "coset_bound")? as usize,
            relators,
            fiber_radius: number(get("fiber_radius", "3"), "fiber_radius")? as usize,
            epsilon: parse_ratio(get("epsilon", "1/20")).ok_or_else(|| bad("epsilon".into()))?,
            experiment,
        };
        let c = ExperimentConfig {
            csv: if c.csv.is_empty() { format!("{}.csv", c.experiment) } else { c.csv.clone() },
            json: if c.json.is_empty() { format!("{}.json", c.experiment) } else { c.json.clone() },
            ..c
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.trials == 0 {
            return Err(bad("trials must be at least 1".into()));
        }
        for p in self.points() {
            self.model_params(&p, self.seed).map_err(|e| bad(format!("sweep point d={} ℓ={} m={}: {e}", format_ratio(&p.density), p.ell, p.m)))?;
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<SweepPoint> {
        let mut out = Vec::new();
        for &density in &self.densities {
            for &ell in &self.ells {
                for &m in &self.ms {
                    out.push(SweepPoint { index: out.len(), density, ell, m });
                }
            }
        }
        out
    }

    pub fn trial_count(&self) -> usize {
        self.points().len() * self.trials
    }

    pub fn model_params(&self, p: &SweepPoint, seed: u64) -> Result<ModelParams, freeprod::sampler::SamplerError> {
        Ok(ModelParams::new(self.factors.clone(), p.density, p.m, p.ell, seed)?.with_cap(self.relator_cap))
    }

    /// The configuration back in key-value form, with every default filled in.
    pub fn to_text(&self) -> String {
        let join = |v: Vec<String>| v.join(", ");
        let mut lines = vec![
            format!("experiment = {}", self.experiment),
            format!("factors = {}", self.factors.iter().map(FactorGroup::spec).collect::<Vec<_>>().join(" ")),
            format!("density = {}", join(self.densities.iter().map(format_ratio).collect())),
            format!("ell = {}", join(self.ells.iter().map(usize::to_string).collect())),
            format!("m = {}", join(self.ms.iter().map(usize::to_string).collect())),
            format!("trials = {}", self.trials),
            format!("seed = {}", self.seed),
            format!("sampler = {}", self.sampler.tag()),
            format!("relator_cap = {}", self.relator_cap.map_or("none".into(), |c| c.to_string())),
            format!("diagram_faces = {}", self.diagram_faces),
            format!("diagram_connectors = {}", self.diagram_connectors),
            format!("wall_budget = {}", self.wall_budget),
            format!("coset_bound = {}", self.coset_bound),
            format!("relators = {}", self.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")),
            format!("fiber_radius = {}", self.fiber_radius),
            format!("epsilon = {}", format_ratio(&self.epsilon)),
            format!("csv = {}", self.csv),
            format!("json = {}", self.json),
        ];
        lines.push(String::new());
        lines.join("\n")
    }
}

fn bad(msg: String) -> LabError {
    LabError::Config(msg)
}

fn number(s: &str, key: &str) -> Result<u64, LabError> {
    s.trim().parse().map_err(|_| bad(format!("{key}: expected a non-negative integer, got {s:?}")))
}

fn list<T>(s: &str, key: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, LabError> {
    let out: Vec<T> = s.split(',').map(|x| parse(x.trim()).ok_or_else(|| bad(format!("{key}: cannot parse {:?}", x.trim())))).collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(bad(format!("{key}: empty list")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let c = ExperimentConfig::parse("experiment = dihedral-transition\ndensity = 0.3, 3/5  # two points\nell = 30\ntrials = 20\n").unwrap();
        assert_eq!(c.densities, vec![Exact::new(3, 10), Exact::new(3, 5)]);
        assert_eq!(c.points().len(), 2);
        assert_eq!(c.trial_count(), 40);
        assert_eq!(c.csv, "dihedral-transition.csv");
        assert_eq!(c.factors.len(), 2);
        assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "density = 1/2",
            "experiment = x\ntrials = 0",
            "experiment = x\ncolour = red",
            "experiment = x\ndensity = 3/2",
            "experiment = x\nell = 1",
            "experiment = x\nfactors = cyclic:2 cyclic:2",
            "experiment = x\nexperiment = y",
            "experiment = x\nseed = -1",
        ] {
            assert!(matches!(ExperimentConfig::parse(text), Err(LabError::Config(_))), "{text}");
        }
    }
}
