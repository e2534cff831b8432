//! Finite polygonal complexes, cube complexes and mixed complexes.
//!
//! Polygons are closed vertex/edge cycles: `edges[i]` joins `vertices[i]`
//! and `vertices[i + 1]`. Cubes list their `2^k` vertices in coordinate
//! order, so vertices `j` and `j ^ (1 << t)` span an edge in direction `t`.

mod audit;
mod coset;
mod cube;
mod mixed;
mod model;
mod subdivide;
mod text;

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::diagram::{AbstractDiagram, Decoration, VertexKind};
use crate::factor::Syllable;

pub use audit::{short_cycle_audit, CycleAudit};
pub use coset::{coset_enumerate, CosetTable, Presentation};
pub use cube::{Cube, CubeComplex};
pub use mixed::{build_mixed, EdgeKind, Fiber, GeodesicChoice, MixedComplex, SegmentAudit};
pub use model::build_xr_finite;
pub use subdivide::{subdivide, subdivision_params, SubdivisionParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("coset enumeration exceeded {0} cosets")]
    Overflow(usize),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table does not satisfy relator {0}")]
    RelatorNotTrivial(usize),
    #[error("presentation: {0}")]
    BadPresentation(String),
    #[error("empty relator set gives no finite quotient")]
    EmptyRelators,
    #[error("density must be below 1/5")]
    DensityTooHigh,
    #[error("subdivision factor must be at least 1")]
    ZeroSubdivision,
    #[error("edge {0} joins two vertices of the same type or is a loop")]
    BadEdge(usize),
    #[error("polygon {polygon}: {reason}")]
    BadPolygon { polygon: usize, reason: String },
    #[error("polygons have different lengths")]
    UnequalPolygons,
    #[error("cube {0}: vertices do not span a cube")]
    BadCube(usize),
    #[error("fiber {fiber}: element {element} inverts an edge")]
    Inversion { fiber: usize, element: String },
    #[error("fiber {fiber}: {reason}")]
    BadFiber { fiber: usize, reason: String },
    #[error("factor vertex {vertex}: rotation elements are inconsistent")]
    InconsistentRotations { vertex: usize },
    #[error("polygon {0} carries no rotation elements")]
    Undecorated(usize),
    #[error("id out of range: {0}")]
    OutOfRange(String),
    #[error("cycle search budget exceeded after {0} cycles")]
    BudgetExceeded(usize),
    #[error("complex format: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    Central,
    Factor(usize),
    /// Interior vertex of a subdivided edge.
    Subdivision,
}

impl VertexType {
    pub fn is_factor(self) -> bool {
        matches!(self, VertexType::Factor(_))
    }
}

/// A closed boundary cycle, with rotation elements at the factor corners
/// in stored order when decorated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Element from the incoming to the outgoing edge at each factor
    /// corner, in order of position.
    pub rotation: Option<Vec<Syllable>>,
}

impl Polygon {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        Polygon { vertices, edges, rotation: None }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Read access shared by polygonal, cube and mixed complexes.
pub trait CellComplex {
    fn vertex_count(&self) -> usize;
    fn edge_ends(&self) -> &[(usize, usize)];
    fn polygons(&self) -> &[Polygon];
    /// Maximal cubes of dimension at least two.
    fn cubes(&self) -> &[Cube];

    fn edge_count(&self) -> usize {
        self.edge_ends().len()
    }

    /// Neighbours with the connecting edge, per vertex.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (e, &(a, b)) in self.edge_ends().iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    /// Edge id per unordered vertex pair; the smallest id wins for
    /// parallel edges.
    fn edge_lookup(&self) -> HashMap<(usize, usize), usize> {
        let mut out = HashMap::new();
        for (e, &(a, b)) in self.edge_ends().iter().enumerate() {
            out.entry((a.min(b), a.max(b))).or_insert(e);
        }
        out
    }

    /// Breadth-first distances in the 1-skeleton.
    fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.adjacency(), source)
    }
}

pub(crate) fn bfs(adj: &[Vec<(usize, usize)>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued");
        for &(w, _) in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub(crate) fn check_cycle(ends: &[(usize, usize)], nverts: usize, p: usize, poly: &Polygon) -> Result<(), ComplexError> {
    let bad = |reason: String| ComplexError::BadPolygon { polygon: p, reason };
    let n = poly.edges.len();
    if n < 2 || poly.vertices.len() != n {
        return Err(bad(format!("{} vertices and {} edges", poly.vertices.len(), n)));
    }
    for i in 0..n {
        let (a, b) = (poly.vertices[i], poly.vertices[(i + 1) % n]);
        if a >= nverts {
            return Err(bad(format!("vertex {a} out of range")));
        }
        let &(x, y) = ends.get(poly.edges[i]).ok_or_else(|| bad(format!("edge {} out of range", poly.edges[i])))?;
        if !((x == a && y == b) || (x == b && y == a)) {
            return Err(bad(format!("edge at position {i} does not join its boundary vertices")));
        }
    }
    Ok(())
}

/// A 2-complex of equal-length polygons over a typed 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonalComplex {
    types: Vec<VertexType>,
    edges: Vec<(usize, usize)>,
    polygons: Vec<Polygon>,
    basepoint: usize,
}

impl PolygonalComplex {
    pub fn new(types: Vec<VertexType>, edges: Vec<(usize, usize)>, polygons: Vec<Polygon>, basepoint: usize) -> Result<Self, ComplexError> {
        let n = types.len();
        if n > 0 && basepoint >= n {
            return Err(ComplexError::OutOfRange(format!("basepoint {basepoint}")));
        }
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ComplexError::OutOfRange(format!("edge {e}")));
            }
            let ok = a != b
                && matches!(
                    (types[a], types[b]),
                    (VertexType::Central, VertexType::Factor(_)) | (VertexType::Factor(_), VertexType::Central) | (VertexType::Subdivision, _) | (_, VertexType::Subdivision)
                );
            if !ok {
                return Err(ComplexError::BadEdge(e));
            }
        }
        for (p, poly) in polygons.iter().enumerate() {
            check_cycle(&edges, n, p, poly)?;
            if poly.len() % 2 == 1 {
                return Err(ComplexError::BadPolygon { polygon: p, reason: "odd length".into() });
            }
            if let Some(rot) = &poly.rotation {
                let corners: Vec<usize> = poly.vertices.iter().filter_map(|&v| if let VertexType::Factor(i) = types[v] { Some(i) } else { None }).collect();
                if corners.len() != rot.len() || corners.iter().zip(rot).any(|(&i, s)| s.factor != i) {
                    return Err(ComplexError::BadPolygon { polygon: p, reason: "rotation elements do not match the factor corners".into() });
                }
            }
        }
        if polygons.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(ComplexError::UnequalPolygons);
        }
        Ok(PolygonalComplex { types, edges, polygons, basepoint })
    }

    /// A single 2ℓ-gon starting at a central vertex.
    pub fn polygon(ell: usize) -> Self {
        let n = 2 * ell;
        let types = (0..n).map(|i| if i % 2 == 0 { VertexType::Central } else { VertexType::Factor(0) }).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let poly = Polygon::new((0..n).collect(), (0..n).collect());
        PolygonalComplex::new(types, edges, vec![poly], 0).expect("polygon is valid")
    }

    /// The complex of an abstract diagram. A decoration fixes the factor of
    /// each factor vertex and the rotation elements; without one every
    /// factor vertex is typed as factor 0.
    pub fn from_diagram(d: &AbstractDiagram, decoration: Option<&Decoration>) -> Result<Self, ComplexError> {
        let mut types: Vec<VertexType> = d.kinds().iter().map(|k| if *k == VertexKind::Central { VertexType::Central } else { VertexType::Factor(0) }).collect();
        let mut polygons = Vec::with_capacity(d.area());
        for (f, face) in d.faces().iter().enumerate() {
            let mut poly = Polygon::new(face.vertices.clone(), face.edges.clone());
            if let Some(dec) = decoration {
                let rot = dec.rotations.get(f).ok_or_else(|| ComplexError::OutOfRange(format!("decoration face {f}")))?;
                for (k, s) in rot.iter().enumerate() {
                    types[face.vertices[2 * k]] = VertexType::Factor(s.factor);
                }
                poly.rotation = Some(rot.clone());
            }
            polygons.push(poly);
        }
        let basepoint = d.kinds().iter().position(|k| *k == VertexKind::Central).unwrap_or(0);
        PolygonalComplex::new(types, d.edges().to_vec(), polygons, basepoint)
    }

    pub fn types(&self) -> &[VertexType] {
        &self.types
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn polygon_count(&self) -> usize {
        self.polygons.len()
    }

    /// Common boundary length, zero without polygons.
    pub fn polygon_length(&self) -> usize {
        self.polygons.first().map_or(0, Polygon::len)
    }

    pub fn central_count(&self) -> usize {
        self.types.iter().filter(|t| **t == VertexType::Central).count()
    }

    pub fn factor_count(&self) -> usize {
        self.types.iter().filter(|t| t.is_factor()).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.types.len() as i64 - self.edges.len() as i64 + self.polygons.len() as i64
    }

    /// Whether every polygon carries rotation elements.
    pub fn is_decorated(&self) -> bool {
        self.polygons.iter().all(|p| p.rotation.is_some())
    }

    /// Rank of `H_1(X; Z/2)`. Two-sided embedded hypergraphs separate
    /// when it is zero.
    pub fn first_betti_mod2(&self) -> usize {
        let mut forest = UnionFind::<usize>::new(self.types.len());
        let tree_edges = self.edges.iter().filter(|&&(a, b)| forest.union(a, b)).count();
        let rows = self.polygons.iter().map(|p| {
            let mut row = FixedBitSet::with_capacity(self.edges.len());
            for &e in &p.edges {
                row.toggle(e);
            }
            row
        });
        self.edges.len() - tree_edges - rank_mod2(rows)
    }
}

/// Row rank over `Z/2` by elimination on leading bits.
fn rank_mod2(rows: impl Iterator<Item = FixedBitSet>) -> usize {
    let mut basis: Vec<FixedBitSet> = Vec::new();
    for mut row in rows {
        for b in &basis {
            let lead = b.minimum().expect("basis rows are nonzero");
            if row.contains(lead) {
                row.symmetric_difference_with(b);
            }
        }
        if let Some(lead) = row.minimum() {
            for b in basis.iter_mut() {
                if b.contains(lead) {
                    b.symmetric_difference_with(&row);
                }
            }
            basis.push(row);
        }
    }
    basis.len()
}

impl CellComplex for PolygonalComplex {
    fn vertex_count(&self) -> usize {
        self.types.len()
    }

    fn edge_ends(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    fn cubes(&self) -> &[Cube] {
        &[]
    }
}
