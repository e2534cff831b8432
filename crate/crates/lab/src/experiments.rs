//! The experiment catalog and the per-trial procedures.

use freeprod::complex::{build_mixed, build_xr_finite, coset_enumerate, subdivision_params, CellComplex, Fiber, GeodesicChoice, PolygonalComplex, Presentation};
use freeprod::diagram::{
    cancellation, enumerate_bounded, fulfill, greendlinger_check, lambda, pair_gluings, polygon, random_diagram, AbstractDiagram, Decoration, EnumerationBudget, RandomDiagramParams, SearchBudget,
};
use freeprod::factor::{FactorGroup, FreeProduct, FreeProductWord};
use freeprod::sampler::{dihedral_witness, prefix_collisions, sample_relator_set, DihedralVerdict, Model, RelatorSet};
use freeprod::walls::{antipodality, check_epsilon, dual_cube_complex, project_hypergraph, trace_all, two_sided_projection_check, walls_of, DualBudget};
use freeprod::{Exact, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentConfig, SweepPoint};
use crate::record::{outcome, values, Outcome, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    DihedralTransition,
    SmallCancellationRate,
    CancellationAudit,
    GreendlingerAudit,
    IsoperimetryAudit,
    HypergraphSuite,
    AntipodalitySuite,
    CubulateDemo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub experiment: Experiment,
    pub name: &'static str,
    /// The statement the experiment probes.
    pub anchor: &'static str,
    /// What counts as a successful trial.
    pub success: &'static str,
    /// Metric columns in CSV order.
    pub columns: &'static [&'static str],
}

pub const CATALOG: [CatalogEntry; 8] = [
    CatalogEntry {
        experiment: Experiment::DihedralTransition,
        name: "dihedral-transition",
        anchor: "above density 1/2 the quotient is a finite dihedral group",
        success: "prefix collisions identify every factor ball",
        columns: &["relators", "truncated", "collisions", "verdict", "identified"],
    },
    CatalogEntry {
        experiment: Experiment::SmallCancellationRate,
        name: "small-cancellation-rate",
        anchor: "below density 1/12 the relators satisfy C'(1/6) over the free product",
        success: "every piece is shorter than ℓ/6 syllables",
        columns: &["relators", "max_piece", "lambda", "c_prime_sixth"],
    },
    CatalogEntry {
        experiment: Experiment::CancellationAudit,
        name: "cancellation-audit",
        anchor: "fulfillable bounded diagrams satisfy can(Y) ≤ d·Area(Y)·2ℓ",
        success: "no fulfillable enumerated diagram exceeds the cancellation bound",
        columns: &["relators", "diagrams", "fulfillable", "undecided", "max_can_fraction", "violations"],
    },
    CatalogEntry {
        experiment: Experiment::GreendlingerAudit,
        name: "greendlinger-audit",
        anchor: "two faces with at least L(1 − 5d/2) external edges",
        success: "every two-face gluing meeting the cancellation hypothesis has the conclusion",
        columns: &["relators", "diagrams", "hypothesis", "conclusion", "holds_given_hypothesis"],
    },
    CatalogEntry {
        experiment: Experiment::IsoperimetryAudit,
        name: "isoperimetry-audit",
        anchor: "reduced disc diagrams satisfy |∂D| ≥ (1 − 2d − ε)·L·Area(D)",
        success: "no one- or two-face disc diagram falls below the isoperimetric bound",
        columns: &["relators", "diagrams", "min_ratio", "violations"],
    },
    CatalogEntry {
        experiment: Experiment::HypergraphSuite,
        name: "hypergraph-suite",
        anchor: "embedded hypergraphs are two-sided walls",
        success: "with H¹(X; Z/2) = 0, every embedded tree hypergraph has two complementary components",
        columns: &["faces", "edges", "betti1", "hypergraphs", "embedded", "walls", "violations", "dual_vertices", "dual_dimension"],
    },
    CatalogEntry {
        experiment: Experiment::AntipodalitySuite,
        name: "antipodality-suite",
        anchor: "projected hypergraphs in the balanced complex are ε-antipodal",
        success: "every projected hypergraph passes the ε-antipodality check",
        columns: &["tau", "k", "big_l", "hypergraphs", "projected", "fiber_only", "min_ratio", "violations", "not_two_sided"],
    },
    CatalogEntry {
        experiment: Experiment::CubulateDemo,
        name: "cubulate-demo",
        anchor: "the model complex acts on the cube complex dual to its walls",
        success: "the dual cube complex is built and its links are flag",
        columns: &["cosets", "vertices", "edges", "polygons", "euler", "hypergraphs", "walls", "not_embedded", "not_two_sided", "f_vector", "dimension", "link_flag"],
    },
];

pub fn list_experiments() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// Work shared by all trials of one sweep point.
pub(crate) enum Prepared {
    Model(Model),
    Enumerated(Model, Vec<AbstractDiagram>),
    Fixed,
}

pub(crate) fn prepare(entry: &CatalogEntry, config: &ExperimentConfig, point: &SweepPoint) -> Result<Prepared, String> {
    let model = || Model::new(config.model_params(point, config.seed).map_err(|e| e.to_string())?).map_err(|e| e.to_string());
    Ok(match entry.experiment {
        Experiment::DihedralTransition | Experiment::SmallCancellationRate | Experiment::GreendlingerAudit | Experiment::IsoperimetryAudit => Prepared::Model(model()?),
        Experiment::CancellationAudit => {
            let report = enumerate_bounded(config.diagram_faces, config.diagram_connectors, point.ell, EnumerationBudget::default()).map_err(|e| e.to_string())?;
            Prepared::Enumerated(model()?, report.labelled)
        }
        Experiment::HypergraphSuite | Experiment::AntipodalitySuite | Experiment::CubulateDemo => Prepared::Fixed,
    })
}

pub(crate) fn run_trial(entry: &CatalogEntry, config: &ExperimentConfig, point: &SweepPoint, prepared: &Prepared, seed: u64, rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    match (entry.experiment, prepared) {
        (Experiment::DihedralTransition, Prepared::Model(model)) => {
            let rs = sample(config, model, seed, rng)?;
            let verdict = dihedral_witness(&model.balls, &rs.relators);
            let m = values([rs.relators.len().into(), rs.truncated.into(), prefix_collisions(&rs.relators).len().into(), verdict.tag().into(), verdict.fraction().into()]);
            Ok(outcome(verdict == DihedralVerdict::Collapsed, m))
        }
        (Experiment::SmallCancellationRate, Prepared::Model(model)) => {
            let rs = sample(config, model, seed, rng)?;
            let lam = lambda(&model.product, &rs.relators);
            let pass = lam < Exact::new(1, 6);
            Ok(outcome(pass, values([rs.relators.len().into(), Value::Int((lam * point.ell as i64).to_integer()), lam.to_f64().into(), pass.into()])))
        }
        (Experiment::CancellationAudit, Prepared::Enumerated(model, diagrams)) => {
            let rs = sample(config, model, seed, rng)?;
            let (mut fulfillable, mut undecided, mut violations) = (0usize, 0usize, 0usize);
            let mut max_fraction = Exact::from_integer(0);
            for y in diagrams {
                match fulfill(y, &model.product, &rs.relators, SearchBudget::default()) {
                    Ok(f) if f.is_fulfilled() => {
                        fulfillable += 1;
                        let fraction = Exact::new(cancellation(y) as i64, (2 * point.ell * y.area()) as i64);
                        max_fraction = max_fraction.max(fraction);
                        if fraction > point.density {
                            violations += 1;
                        }
                    }
                    Ok(_) => {}
                    Err(_) => undecided += 1,
                }
            }
            let m = values([rs.relators.len().into(), diagrams.len().into(), fulfillable.into(), undecided.into(), max_fraction.to_f64().into(), violations.into()]);
            Ok(outcome(violations == 0, m))
        }
        (Experiment::GreendlingerAudit, Prepared::Model(model)) => {
            let rs = sample(config, model, seed, rng)?;
            let gluings = pair_gluings(&model.product, &rs.relators);
            let (mut hyp, mut concl, mut both) = (0usize, 0usize, 0usize);
            for g in &gluings {
                let r = greendlinger_check(&g.diagram, point.density);
                hyp += r.hypothesis as usize;
                concl += r.conclusion as usize;
                both += (r.hypothesis && r.conclusion) as usize;
            }
            Ok(outcome(both == hyp, values([rs.relators.len().into(), gluings.len().into(), hyp.into(), concl.into(), both.into()])))
        }
        (Experiment::IsoperimetryAudit, Prepared::Model(model)) => {
            let rs = sample(config, model, seed, rng)?;
            let mut discs: Vec<AbstractDiagram> = vec![polygon(point.ell)];
            discs.extend(pair_gluings(&model.product, &rs.relators).into_iter().map(|g| g.diagram).filter(|d| d.boundary_length() > 0));
            let bound = Exact::from_integer(1) - point.density * 2 - config.epsilon;
            let ratios: Vec<Exact> = discs.iter().map(|d| Exact::new(d.boundary_length() as i64, (2 * point.ell * d.area()) as i64)).collect();
            let violations = ratios.iter().filter(|&&r| r < bound).count();
            let min = ratios.iter().copied().min().unwrap_or(Exact::from_integer(1));
            Ok(outcome(violations == 0, values([rs.relators.len().into(), discs.len().into(), min.to_f64().into(), violations.into()])))
        }
        (Experiment::HypergraphSuite, Prepared::Fixed) => hypergraph_trial(config, point, rng),
        (Experiment::AntipodalitySuite, Prepared::Fixed) => antipodality_trial(config, point, rng),
        (Experiment::CubulateDemo, Prepared::Fixed) => cubulate(config),
        _ => unreachable!("prepared data matches the experiment"),
    }
}

fn sample(config: &ExperimentConfig, model: &Model, seed: u64, rng: &mut ChaCha8Rng) -> Result<RelatorSet, String> {
    let mut model = model.clone();
    model.params.seed = seed;
    sample_relator_set(&model, config.sampler, rng).map_err(|e| e.to_string())
}

fn hypergraph_trial(config: &ExperimentConfig, point: &SweepPoint, rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let params = RandomDiagramParams { max_faces: config.diagram_faces, min_ell: point.ell, max_ell: point.ell, ..RandomDiagramParams::default() };
    let d = random_diagram(&params, rng);
    let x = PolygonalComplex::from_diagram(&d, None).map_err(|e| e.to_string())?;
    let hs = trace_all(&x).map_err(|e| e.to_string())?;
    let betti = x.first_betti_mod2();
    let mut embedded = 0;
    let mut violations = 0;
    for h in &hs {
        if h.is_embedded_tree() {
            embedded += 1;
            // only complexes with H¹(X; Z/2) = 0 force separation
            if betti == 0 && h.complement_components(&x).map_err(|e| e.to_string())?.count != 2 {
                violations += 1;
            }
        }
    }
    let family = walls_of(&x).map_err(|e| e.to_string())?;
    let ws = family.wallspace(x.vertex_count());
    let budget = DualBudget { max_walls: config.wall_budget, ..DualBudget::default() };
    let (dual_vertices, dual_dimension): (Value, Value) = match dual_cube_complex(&ws, budget) {
        Ok(dual) => (dual.vertex_count().into(), dual.dimension().into()),
        Err(_) => ("budget".into(), "budget".into()),
    };
    let m = values([d.area().into(), x.edge_count().into(), betti.into(), hs.len().into(), embedded.into(), family.walls.len().into(), violations.into(), dual_vertices, dual_dimension]);
    Ok(outcome(violations == 0, m))
}

/// A random relator of `ℓ` syllables in `Z * Z/3`, with powers of the free
/// generator in `±1, ±2`.
fn line_fixture_relator<R: Rng>(ell: usize, rng: &mut R) -> FreeProductWord {
    let text: Vec<String> = (0..ell)
        .map(|i| {
            if i % 2 == 0 {
                let sign = if rng.gen_bool(0.5) { "-1" } else { "1" };
                format!("1:w{}", vec![sign; rng.gen_range(1..=2)].join("."))
            } else {
                format!("2:t{}", rng.gen_range(1..=2))
            }
        })
        .collect();
    FreeProductWord::parse(&text.join(" ")).expect("relator text is well formed")
}

fn antipodality_trial(config: &ExperimentConfig, point: &SweepPoint, rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    if point.ell % 2 == 1 {
        return Err("the line-fiber fixture needs an even ℓ".into());
    }
    let product = FreeProduct::new(vec![FactorGroup::free(1), FactorGroup::cyclic(3, "b")]);
    let r = line_fixture_relator(point.ell, rng);
    let d = polygon(point.ell);
    let dec = Decoration::from_assignment(&d, &product, std::slice::from_ref(&r), &[0]).map_err(|e| e.to_string())?;
    let x = PolygonalComplex::from_diagram(&d, Some(&dec)).map_err(|e| e.to_string())?;
    let mixed = build_mixed(&x, &product, &[Fiber::line(config.fiber_radius), Fiber::point(1)], GeodesicChoice::LexMin).map_err(|e| e.to_string())?;
    let tau = mixed.tau();
    let params = subdivision_params(point.density, point.ell, tau).map_err(|e| e.to_string())?;
    let m = mixed.balanced(params.k).map_err(|e| e.to_string())?;
    let big_l = m.base().polygon_length();
    let hs = trace_all(&m).map_err(|e| e.to_string())?;
    let (mut projected, mut fiber_only, mut violations, mut not_two_sided) = (0usize, 0usize, 0usize, 0usize);
    let mut min_ratio: Option<Exact> = None;
    for h in &hs {
        let g = project_hypergraph(&m, h);
        if g.pairs.is_empty() {
            fiber_only += 1;
        } else {
            projected += 1;
            match antipodality::<Exact, _>(m.base(), &g, big_l) {
                Some(ratio) => {
                    min_ratio = Some(min_ratio.map_or(ratio, |r| r.min(ratio)));
                    if !check_epsilon(ratio, params.epsilon) {
                        violations += 1;
                    }
                }
                None => violations += 1,
            }
        }
        if !two_sided_projection_check(&m, h).map_err(|e| e.to_string())? {
            not_two_sided += 1;
        }
    }
    let min_ratio: Value = min_ratio.map_or("none".into(), |r| r.to_f64().into());
    let metrics = values([tau.into(), params.k.into(), big_l.into(), hs.len().into(), projected.into(), fiber_only.into(), min_ratio, violations.into(), not_two_sided.into()]);
    Ok(outcome(violations == 0, metrics))
}

fn cubulate(config: &ExperimentConfig) -> Result<Outcome, String> {
    let product = FreeProduct::new(config.factors.clone());
    let table = coset_enumerate(&Presentation::of_quotient(&product, &config.relators), config.coset_bound).map_err(|e| e.to_string())?;
    let x = build_xr_finite(&product, &config.relators, &table).map_err(|e| e.to_string())?;
    let family = walls_of(&x).map_err(|e| e.to_string())?;
    let hypergraphs = family.walls.len() + family.not_embedded.len() + family.not_two_sided.len();
    let ws = family.wallspace(x.vertex_count());
    let dual = dual_cube_complex(&ws, DualBudget { max_walls: config.wall_budget, ..DualBudget::default() }).map_err(|e| e.to_string())?;
    let f: Vec<String> = dual.f_vector().iter().map(usize::to_string).collect();
    let flag = dual.to_cube_complex().link_flag_check();
    let m = values([
        table.coset_count().into(),
        x.vertex_count().into(),
        x.edge_count().into(),
        x.polygon_count().into(),
        Value::Int(x.euler_characteristic()),
        hypergraphs.into(),
        family.walls.len().into(),
        family.not_embedded.len().into(),
        family.not_two_sided.len().into(),
        f.join(" ").into(),
        dual.dimension().into(),
        flag.into(),
    ]);
    Ok(outcome(flag, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn catalog_is_complete() {
        assert_eq!(list_experiments().len(), 8);
        let names: BTreeSet<&str> = CATALOG.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), 8);
        assert!(CATALOG.iter().all(|e| !e.anchor.is_empty() && !e.columns.is_empty()));
        assert_eq!(lookup("cubulate-demo").unwrap().experiment, Experiment::CubulateDemo);
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn line_fixture_words_alternate() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let product = FreeProduct::new(vec![FactorGroup::free(1), FactorGroup::cyclic(3, "b")]);
        for _ in 0..20 {
            let w = line_fixture_relator(4, &mut rng);
            assert_eq!(w.len(), 4);
            assert!(product.is_normal(&w));
        }
    }
}
