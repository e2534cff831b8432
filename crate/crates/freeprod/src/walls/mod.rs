//! Hypergraphs of diametrically opposed edges, wallspaces and the dual
//! cube complex.
//!
//! Edges of an even polygon are opposite when they sit half its length
//! apart; edges of a cube are related when they are parallel. A hypergraph
//! is one class of the generated equivalence, with a diameter per polygon
//! and a midcube per cube direction that it crosses.

mod dual;
mod metric;
mod wallspace;

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use petgraph::algo::{connected_components, is_cyclic_undirected};
use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::complex::CellComplex;

pub use dual::{dual_cube_complex, DualBudget, DualCubeComplex};
pub use metric::{antipodality, check_epsilon, half_distances, project_hypergraph, qi_stats, two_sided_projection_check, QiStats, Site, SiteGraph};
pub use wallspace::{separation_report, single_crossing_search, walls_of, SeparationReport, SingleCrossing, Wall, WallFamily, Wallspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WallsError {
    #[error("polygon {0} has odd length")]
    OddPolygon(usize),
    #[error("edge {0} out of range")]
    NoSuchEdge(usize),
    #[error("hypergraph immersion is not injective")]
    NotEmbedded,
    #[error("complement has {components} components, not 2")]
    WallNotTwoSided { components: usize },
    #[error("wallspace: {0}")]
    BadWallspace(String),
    #[error("dual cube complex budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// A cell of the abstract hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HyperCell {
    /// Segment across `polygon` from the edge at position `at` to the one
    /// half the boundary further on; `ends` are hypergraph vertex indices.
    Diameter { polygon: usize, at: usize, ends: (usize, usize) },
    /// Midcube of `cube` dual to direction `direction`; `members[r]` is the
    /// hypergraph vertex of the `r`-th edge in that direction.
    Midcube { cube: usize, direction: usize, members: Vec<usize> },
}

/// One class of related edges with its diameters and midcubes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    /// Ambient edges in increasing order; hypergraph vertex `i` is the
    /// midpoint of `class[i]`.
    pub class: Vec<usize>,
    pub cells: Vec<HyperCell>,
}

fn opp_union_find<X: CellComplex + ?Sized>(x: &X) -> Result<UnionFind<usize>, WallsError> {
    let mut uf = UnionFind::new(x.edge_count());
    for (p, poly) in x.polygons().iter().enumerate() {
        let n = poly.len();
        if n % 2 == 1 {
            return Err(WallsError::OddPolygon(p));
        }
        for i in 0..n / 2 {
            uf.union(poly.edges[i], poly.edges[i + n / 2]);
        }
    }
    let lookup = x.edge_lookup();
    for cube in x.cubes() {
        for t in 0..cube.dim() {
            let ids: Vec<usize> = cube.edges_in_direction(t).iter().map(|&(a, b)| lookup[&(a.min(b), a.max(b))]).collect();
            for w in ids.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    Ok(uf)
}

fn assemble<X: CellComplex + ?Sized>(x: &X, class: Vec<usize>, lookup: &HashMap<(usize, usize), usize>) -> Hypergraph {
    let index: HashMap<usize, usize> = class.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut cells = Vec::new();
    for (p, poly) in x.polygons().iter().enumerate() {
        let n = poly.len();
        for at in 0..n / 2 {
            if let (Some(&a), Some(&b)) = (index.get(&poly.edges[at]), index.get(&poly.edges[at + n / 2])) {
                cells.push(HyperCell::Diameter { polygon: p, at, ends: (a, b) });
            }
        }
    }
    for (c, cube) in x.cubes().iter().enumerate() {
        for t in 0..cube.dim() {
            let members: Vec<usize> = cube.edges_in_direction(t).iter().filter_map(|&(a, b)| index.get(&lookup[&(a.min(b), a.max(b))]).copied()).collect();
            if !members.is_empty() {
                cells.push(HyperCell::Midcube { cube: c, direction: t, members });
            }
        }
    }
    Hypergraph { class, cells }
}

/// The hypergraph through `edge`.
pub fn trace_hypergraph<X: CellComplex + ?Sized>(x: &X, edge: usize) -> Result<Hypergraph, WallsError> {
    if edge >= x.edge_count() {
        return Err(WallsError::NoSuchEdge(edge));
    }
    let uf = opp_union_find(x)?;
    let root = uf.find(edge);
    let class = (0..x.edge_count()).filter(|&e| uf.find(e) == root).collect();
    Ok(assemble(x, class, &x.edge_lookup()))
}

/// Every hypergraph, ordered by smallest edge.
pub fn trace_all<X: CellComplex + ?Sized>(x: &X) -> Result<Vec<Hypergraph>, WallsError> {
    let uf = opp_union_find(x)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for e in 0..x.edge_count() {
        let r = uf.find(e);
        let i = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[i].push(e);
    }
    let lookup = x.edge_lookup();
    Ok(classes.into_iter().map(|c| assemble(x, c, &lookup)).collect())
}

/// Components of the complement with a component label per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub label: Vec<usize>,
}

impl Hypergraph {
    pub fn vertex_count(&self) -> usize {
        self.class.len()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.class.binary_search(&e).is_ok()
    }

    pub fn diameters(&self) -> impl Iterator<Item = (usize, usize, (usize, usize))> + '_ {
        self.cells.iter().filter_map(|c| match c {
            HyperCell::Diameter { polygon, at, ends } => Some((*polygon, *at, *ends)),
            HyperCell::Midcube { .. } => None,
        })
    }

    /// Pairs at hypergraph distance one: diameter ends and midcube edges.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.cells {
            match c {
                HyperCell::Diameter { ends, .. } => out.push(*ends),
                HyperCell::Midcube { members, .. } => {
                    for r in 0..members.len() {
                        for s in r + 1..members.len() {
                            if (r ^ s).is_power_of_two() {
                                out.push((members[r], members[s]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Hypergraph metric from vertex `i`.
    pub fn distances_from(&self, i: usize) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (a, b) in self.adjacent_pairs() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut dist = vec![None; adj.len()];
        dist[i] = Some(0);
        let mut queue = VecDeque::from([i]);
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

    /// No polygon carries two diameters and no cube two midcubes.
    pub fn is_injective(&self) -> bool {
        let mut polys = std::collections::HashSet::new();
        let mut cubes = std::collections::HashSet::new();
        self.cells.iter().all(|c| match c {
            HyperCell::Diameter { polygon, ends, .. } => ends.0 != ends.1 && polys.insert(*polygon),
            HyperCell::Midcube { cube, .. } => cubes.insert(*cube),
        })
    }

    /// Connected and acyclic, with every cell treated as contractible and
    /// attached along its vertices, and injectively immersed.
    pub fn is_embedded_tree(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        let n = self.vertex_count();
        let mut g = UnGraph::<(), ()>::with_capacity(n + self.cells.len(), 0);
        for _ in 0..n + self.cells.len() {
            g.add_node(());
        }
        for (k, c) in self.cells.iter().enumerate() {
            let cell = petgraph::graph::NodeIndex::new(n + k);
            let members = match c {
                HyperCell::Diameter { ends, .. } => vec![ends.0, ends.1],
                HyperCell::Midcube { members, .. } => members.clone(),
            };
            for m in members {
                g.add_edge(petgraph::graph::NodeIndex::new(m), cell, ());
            }
        }
        connected_components(&g) == 1 && !is_cyclic_undirected(&g)
    }

    /// Components of the complement in the cut model: polygons and cubes
    /// crossed once fall into two sides joined through their uncut
    /// boundary, so vertices are connected exactly through edges outside
    /// the class.
    pub fn complement_components<X: CellComplex + ?Sized>(&self, x: &X) -> Result<Components, WallsError> {
        if !self.is_injective() {
            return Err(WallsError::NotEmbedded);
        }
        let n = x.vertex_count();
        let mut uf = UnionFind::new(n);
        for (e, &(a, b)) in x.edge_ends().iter().enumerate() {
            if !self.contains_edge(e) {
                uf.union(a, b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut names: HashMap<usize, usize> = HashMap::new();
        for (v, l) in label.iter_mut().enumerate() {
            let k = names.len();
            *l = *names.entry(uf.find(v)).or_insert(k);
        }
        Ok(Components { count: names.len(), label })
    }

    /// Vertices on the side of the second endpoint of the first edge, when
    /// the complement has exactly two components.
    pub fn halfspace<X: CellComplex + ?Sized>(&self, x: &X) -> Result<FixedBitSet, WallsError> {
        let c = self.complement_components(x)?;
        if c.count != 2 {
            return Err(WallsError::WallNotTwoSided { components: c.count });
        }
        let side = c.label[x.edge_ends()[self.class[0]].1];
        let mut out = FixedBitSet::with_capacity(x.vertex_count());
        for (v, &l) in c.label.iter().enumerate() {
            out.set(v, l == side);
        }
        Ok(out)
    }
}
