//! Distances between hypergraph points, antipodality, empirical
//! quasi-isometry constants and projection to the base complex.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::{CellComplex, MixedComplex};
use crate::scalar::Scalar;

use super::{HyperCell, Hypergraph, WallsError};

/// A vertex or an edge midpoint of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Vertex(usize),
    Midpoint(usize),
}

/// Hypergraph points in some complex with the pairs joined by diameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SiteGraph {
    pub sites: Vec<Site>,
    pub pairs: Vec<(usize, usize)>,
}

impl Hypergraph {
    /// Edge midpoints joined along diameters.
    pub fn site_graph(&self) -> SiteGraph {
        SiteGraph { sites: self.class.iter().map(|&e| Site::Midpoint(e)).collect(), pairs: self.diameters().map(|(_, _, ends)| ends).filter(|(a, b)| a != b).collect() }
    }
}

fn node<X: CellComplex + ?Sized>(x: &X, s: Site) -> usize {
    match s {
        Site::Vertex(v) => v,
        Site::Midpoint(e) => x.vertex_count() + e,
    }
}

/// Distances in half-edges from `from` to every vertex (indices below the
/// vertex count) and every edge midpoint (vertex count plus edge id).
pub fn half_distances<X: CellComplex + ?Sized>(x: &X, from: Site) -> Vec<Option<usize>> {
    let nv = x.vertex_count();
    let mut adj = vec![Vec::new(); nv + x.edge_count()];
    for (e, &(a, b)) in x.edge_ends().iter().enumerate() {
        for v in [a, b] {
            adj[v].push(nv + e);
            adj[nv + e].push(v);
        }
    }
    let start = node(x, from);
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or(0) + 1;
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Least `d(x, x′)/L` over joined pairs, `None` without reachable pairs.
pub fn antipodality<S: Scalar, X: CellComplex + ?Sized>(x: &X, g: &SiteGraph, big_l: usize) -> Option<S> {
    let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in &g.pairs {
        by_source.entry(a).or_default().push(b);
    }
    let mut sources: Vec<_> = by_source.into_iter().collect();
    sources.sort_unstable();
    let best = sources
        .iter()
        .flat_map(|(a, targets)| {
            let dist = half_distances(x, g.sites[*a]);
            targets.iter().filter_map(|&b| dist[node(x, g.sites[b])]).collect::<Vec<_>>()
        })
        .min()?;
    Some(S::from_usize(best) / S::from_usize(2 * big_l))
}

/// Whether the ratio is at least `1/2 − ε`.
pub fn check_epsilon<S: Scalar>(ratio: S, epsilon: S) -> bool {
    ratio >= S::one() / S::from_usize(2) - epsilon
}

/// Empirical constants `(Λ̂, ĉ)` with `d_W/Λ̂ − ĉ ≤ d_X/L ≤ Λ̂·d_W + ĉ` over
/// all pairs of hypergraph points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QiStats {
    /// Least multiplicative constant, at least one, fitting every pair up
    /// to an additive slack of `1/2`.
    pub lambda: f64,
    /// Additive constant needed with `lambda`.
    pub c: f64,
    /// Largest `(d_X/L)/d_W` over distinct pairs.
    pub max_upper_ratio: f64,
    pub pairs: usize,
}

const QI_SLACK: f64 = 0.5;

pub fn qi_stats<X: CellComplex + ?Sized>(x: &X, h: &Hypergraph, big_l: usize) -> QiStats {
    let mut samples = Vec::new();
    for i in 0..h.vertex_count() {
        let dw = h.distances_from(i);
        let dx = half_distances(x, Site::Midpoint(h.class[i]));
        for j in i + 1..h.vertex_count() {
            if let (Some(w), Some(d)) = (dw[j], dx[x.vertex_count() + h.class[j]]) {
                samples.push((w as f64, d as f64 / (2.0 * big_l as f64)));
            }
        }
    }
    let mut lambda: f64 = 1.0;
    let mut max_upper_ratio: f64 = 0.0;
    for &(w, d) in &samples {
        lambda = lambda.max(w / (d + QI_SLACK)).max((d - QI_SLACK) / w);
        max_upper_ratio = max_upper_ratio.max(d / w);
    }
    let c = samples.iter().fold(0.0f64, |c, &(w, d)| c.max(w / lambda - d).max(d - lambda * w));
    QiStats { lambda, c, max_upper_ratio, pairs: samples.len() }
}

fn project_site(m: &MixedComplex, e: usize) -> Site {
    match m.edge_projection()[e] {
        Some(b) => Site::Midpoint(b),
        None => Site::Vertex(m.vertex_projection()[m.edge_ends()[e].0]),
    }
}

/// Image in the base: polygonal edges go to base edge midpoints, cubical
/// edges to the base vertex under their fiber. Midcubes and diameters
/// whose ends coincide collapse and are dropped.
pub fn project_hypergraph(m: &MixedComplex, h: &Hypergraph) -> SiteGraph {
    let mut index: HashMap<Site, usize> = HashMap::new();
    let mut out = SiteGraph::default();
    let ids: Vec<usize> = h
        .class
        .iter()
        .map(|&e| {
            let s = project_site(m, e);
            *index.entry(s).or_insert_with(|| {
                out.sites.push(s);
                out.sites.len() - 1
            })
        })
        .collect();
    let mut seen = HashSet::new();
    for (_, _, (a, b)) in h.diameters() {
        let (a, b) = (ids[a], ids[b]);
        if a != b && seen.insert((a.min(b), a.max(b))) {
            out.pairs.push((a, b));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum BaseCell {
    Vertex(usize),
    Edge(usize),
    Polygon(usize),
}

/// Whether the projections of the two halfspaces meet exactly in the
/// projection of the hypergraph, compared on open cells of the base.
pub fn two_sided_projection_check(m: &MixedComplex, h: &Hypergraph) -> Result<bool, WallsError> {
    let positive = h.halfspace(m)?;
    let vp = m.vertex_projection();
    let cell_of = |e: usize| match m.edge_projection()[e] {
        Some(b) => BaseCell::Edge(b),
        None => BaseCell::Vertex(vp[m.edge_ends()[e].0]),
    };
    let mut sides: [HashSet<BaseCell>; 2] = [HashSet::new(), HashSet::new()];
    for v in 0..m.vertex_count() {
        sides[positive[v] as usize].insert(BaseCell::Vertex(vp[v]));
    }
    let mut image = HashSet::new();
    for (e, &(a, _)) in m.edge_ends().iter().enumerate() {
        let c = cell_of(e);
        if h.contains_edge(e) {
            sides[0].insert(c);
            sides[1].insert(c);
            image.insert(c);
        } else {
            sides[positive[a] as usize].insert(c);
        }
    }
    let mut crossed_polygons = HashSet::new();
    let mut crossed_cubes = HashSet::new();
    for c in &h.cells {
        match c {
            HyperCell::Diameter { polygon, .. } => {
                crossed_polygons.insert(*polygon);
                image.insert(BaseCell::Polygon(m.polygon_projection(*polygon)));
            }
            HyperCell::Midcube { cube, .. } => {
                crossed_cubes.insert(*cube);
                image.insert(BaseCell::Vertex(vp[m.cubes()[*cube].vertices[0]]));
            }
        }
    }
    for (i, p) in m.polygons().iter().enumerate() {
        let c = BaseCell::Polygon(m.polygon_projection(i));
        if crossed_polygons.contains(&i) {
            sides[0].insert(c);
            sides[1].insert(c);
        } else {
            sides[positive[p.vertices[0]] as usize].insert(c);
        }
    }
    for (i, q) in m.cubes().iter().enumerate() {
        let c = BaseCell::Vertex(vp[q.vertices[0]]);
        if crossed_cubes.contains(&i) {
            sides[0].insert(c);
            sides[1].insert(c);
        } else {
            sides[positive[q.vertices[0]] as usize].insert(c);
        }
    }
    let both: HashSet<BaseCell> = sides[0].intersection(&sides[1]).copied().collect();
    Ok(both == image)
}

#[cfg(test)]
mod tests {
    use super::super::{trace_all, trace_hypergraph};
    use super::*;
    use crate::complex::{build_mixed, subdivide, Fiber, GeodesicChoice, PolygonalComplex};
    use crate::diagram::{polygon, Decoration};
    use crate::factor::{FactorGroup, FreeProduct, FreeProductWord};
    use crate::Exact;

    #[test]
    fn diameters_are_antipodal() {
        let x = subdivide(&PolygonalComplex::polygon(3), 2).unwrap();
        for h in trace_all(&x).unwrap() {
            let r: Exact = antipodality(&x, &h.site_graph(), x.polygon_length()).unwrap();
            assert_eq!(r, Exact::new(1, 2));
            assert!(check_epsilon(r, Exact::from_integer(0)));
        }
    }

    #[test]
    fn single_polygon_qi() {
        let x = PolygonalComplex::polygon(4);
        let q = qi_stats(&x, &trace_hypergraph(&x, 0).unwrap(), 8);
        assert_eq!((q.lambda, q.pairs), (1.0, 1));
        assert!(q.c <= 0.5);
        assert_eq!(q.max_upper_ratio, 0.5);
    }

    fn line_mixed(radius: usize, k: usize) -> MixedComplex {
        let product = FreeProduct::new(vec![FactorGroup::free(1), FactorGroup::cyclic(3, "b")]);
        let r = FreeProductWord::parse("1:w1 2:t1 1:w1.1 2:t2").unwrap();
        let d = polygon(4);
        let dec = Decoration::from_assignment(&d, &product, &[r], &[0]).unwrap();
        let x = PolygonalComplex::from_diagram(&d, Some(&dec)).unwrap();
        build_mixed(&x, &product, &[Fiber::line(radius), Fiber::point(1)], GeodesicChoice::LexMin).unwrap().balanced(k).unwrap()
    }

    #[test]
    fn point_fibers_project_identically() {
        let product = FreeProduct::new(vec![FactorGroup::cyclic(2, "a"), FactorGroup::cyclic(3, "b")]);
        let r = FreeProductWord::parse("1:t1 2:t1 1:t1 2:t2").unwrap();
        let d = polygon(4);
        let dec = Decoration::from_assignment(&d, &product, &[r], &[0]).unwrap();
        let x = PolygonalComplex::from_diagram(&d, Some(&dec)).unwrap();
        let m = build_mixed(&x, &product, &[Fiber::point(1), Fiber::point(1)], GeodesicChoice::LexMin).unwrap().balanced(1).unwrap();
        for h in trace_all(&m).unwrap() {
            let g = project_hypergraph(&m, &h);
            assert_eq!(g.sites.len(), 2);
            let r: Exact = antipodality(m.base(), &g, m.base().polygon_length()).unwrap();
            assert_eq!(r, Exact::new(1, 2));
            assert!(two_sided_projection_check(&m, &h).unwrap());
        }
    }

    #[test]
    fn line_fiber_projection() {
        let m = line_mixed(3, 3);
        let big_l = m.base().polygon_length();
        let mut fiber_only = 0;
        for h in trace_all(&m).unwrap() {
            let g = project_hypergraph(&m, &h);
            if g.pairs.is_empty() {
                // a hypergraph inside one fiber projects to a vertex
                assert_eq!(g.sites.len(), 1);
                assert!(matches!(g.sites[0], Site::Vertex(_)));
                fiber_only += 1;
            } else {
                let r: Exact = antipodality(m.base(), &g, big_l).unwrap();
                assert!(check_epsilon(r, Exact::new(2, 4 * 3)));
            }
            assert!(two_sided_projection_check(&m, &h).unwrap());
        }
        assert!(fiber_only > 0);
    }
}
