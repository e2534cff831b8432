//! Abstract diagrams: 2-complexes of 2ℓ-gons over a bipartite skeleton.
//!
//! Every face boundary is stored as a closed vertex/edge cycle starting at a
//! factor vertex, so corner `k` of a face sits at position `2k`.

mod cancel;
mod canon;
mod decorate;
mod dual;
mod enumerate;
mod greendlinger;
mod pieces;
mod random;
mod text;

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

pub use cancel::{cancellation, connectors, edge_triples, reduction_pairs, relative_cancellation, relative_degree, Connector, EdgeTriple, ReductionPair};
pub use canon::{full_code, geometric_code, CanonicalCode};
pub use decorate::{fulfill, Decoration, Fulfillment, SearchBudget};
pub use dual::{decode_dual, encode_dual, ConnectorEnd, DualFace, DualGraph, Sign};
pub use enumerate::{disc_diagrams, enumerate_bounded, enumerate_geometric, expand_labels, EnumerationBudget, EnumerationReport};
pub use greendlinger::{greendlinger_check, GreendlingerReport};
pub use pieces::{c_prime_sixth, lambda, max_piece, pair_gluings, piece_runs, PairGluing, Piece};
pub use random::{random_diagram, RandomDiagramParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("face {face}: boundary has {len} edges, expected {expected}")]
    WrongLength { face: usize, len: usize, expected: usize },
    #[error("face {face}: vertex types do not alternate from a factor vertex at position 0")]
    NotAlternating { face: usize },
    #[error("face {face}: edge at position {pos} does not join its boundary vertices")]
    EdgeMismatch { face: usize, pos: usize },
    #[error("face {face}: consecutive boundary edges coincide at position {pos}")]
    NotImmersed { face: usize, pos: usize },
    #[error("edge {0} lies on no face")]
    UnusedEdge(usize),
    #[error("vertex {0} lies on no face")]
    UnusedVertex(usize),
    #[error("edge {0} does not join a central and a factor vertex")]
    NotBipartite(usize),
    #[error("face {face}: distinguished corner {corner} out of range")]
    BadDistinguished { face: usize, corner: usize },
    #[error("face partition has {got} labels for {faces} faces")]
    BadPartition { got: usize, faces: usize },
    #[error("id out of range: {0}")]
    OutOfRange(String),
    #[error("ℓ must be at least 1")]
    ZeroLength,
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("dual graph: {0}")]
    BadDual(String),
    #[error("diagram format: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Central,
    Factor,
}

impl VertexKind {
    pub fn other(self) -> Self {
        match self {
            VertexKind::Central => VertexKind::Factor,
            VertexKind::Factor => VertexKind::Central,
        }
    }

    pub fn tag(self) -> char {
        match self {
            VertexKind::Central => 'c',
            VertexKind::Factor => 'f',
        }
    }

    /// Kind at boundary position `pos` of a face.
    pub fn at_position(pos: usize) -> Self {
        if pos.is_multiple_of(2) {
            VertexKind::Factor
        } else {
            VertexKind::Central
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }
}

/// Closed boundary of one face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Corner index; corner `k` is the factor vertex at position `2k`.
    pub distinguished: usize,
    pub orientation: Orientation,
}

impl Face {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Incoming and outgoing edge at corner `k` in stored order.
    pub fn corner_edges(&self, k: usize) -> (usize, usize) {
        let n = self.edges.len();
        let p = 2 * k;
        (self.edges[(p + n - 1) % n], self.edges[p])
    }

    /// Signed offset of position `pos` from the distinguished vertex along
    /// the orientation.
    pub fn oriented_distance(&self, pos: usize) -> usize {
        let n = self.edges.len();
        let d = 2 * self.distinguished;
        match self.orientation {
            Orientation::Plus => (pos + n - d) % n,
            Orientation::Minus => (d + n - pos) % n,
        }
    }
}

/// Boundary cycle used to assemble a diagram before labels are attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Boundary slot `(face, position)` pairs glued together.
pub type SlotPair = ((usize, usize), (usize, usize));

/// A validated abstract diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDiagram {
    ell: usize,
    kinds: Vec<VertexKind>,
    /// `(central, factor)` endpoints of each edge.
    edges: Vec<(usize, usize)>,
    faces: Vec<Face>,
    /// Class label per face, numbered by first appearance.
    classes: Vec<usize>,
}

impl AbstractDiagram {
    pub fn new(ell: usize, kinds: Vec<VertexKind>, edges: Vec<(usize, usize)>, faces: Vec<Face>, classes: Vec<usize>) -> Result<Self, DiagramError> {
        if ell == 0 {
            return Err(DiagramError::ZeroLength);
        }
        if classes.len() != faces.len() {
            return Err(DiagramError::BadPartition { got: classes.len(), faces: faces.len() });
        }
        let d = AbstractDiagram { ell, kinds, edges, faces, classes: normalize_classes(&classes) };
        d.validate()?;
        Ok(d)
    }

    /// Build from boundary cycles with arbitrary vertex and edge ids.
    ///
    /// Ids are compacted by first appearance; every face gets corner 0,
    /// orientation `+` and its own class.
    pub fn from_cycles(ell: usize, cycles: &[FaceCycle]) -> Result<Self, DiagramError> {
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        let mut emap: HashMap<usize, usize> = HashMap::new();
        let mut kinds = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut faces = Vec::with_capacity(cycles.len());
        for (fi, c) in cycles.iter().enumerate() {
            let n = c.edges.len();
            if n != 2 * ell || c.vertices.len() != n {
                return Err(DiagramError::WrongLength { face: fi, len: n, expected: 2 * ell });
            }
            let mut vs = Vec::with_capacity(n);
            for (pos, &v) in c.vertices.iter().enumerate() {
                let kind = VertexKind::at_position(pos);
                let next = vmap.len();
                let id = *vmap.entry(v).or_insert(next);
                if id == kinds.len() {
                    kinds.push(kind);
                } else if kinds[id] != kind {
                    return Err(DiagramError::NotAlternating { face: fi });
                }
                vs.push(id);
            }
            let mut es = Vec::with_capacity(n);
            for pos in 0..n {
                let (a, b) = (vs[pos], vs[(pos + 1) % n]);
                let ends = if pos.is_multiple_of(2) { (b, a) } else { (a, b) };
                let next = emap.len();
                let id = *emap.entry(c.edges[pos]).or_insert(next);
                if id == edges.len() {
                    edges.push(ends);
                } else if edges[id] != ends {
                    return Err(DiagramError::EdgeMismatch { face: fi, pos });
                }
                es.push(id);
            }
            faces.push(Face { vertices: vs, edges: es, distinguished: 0, orientation: Orientation::Plus });
        }
        let classes = (0..faces.len()).collect();
        AbstractDiagram::new(ell, kinds, edges, faces, classes)
    }

    /// Quotient of `faces` disjoint 2ℓ-gons by a vertex-slot and an
    /// edge-slot identification.
    ///
    /// Slot `(f, p)` is boundary position `p` of face `f`; identified edge
    /// slots force their endpoints together.
    pub fn from_slot_unions(ell: usize, faces: usize, edge_pairs: &[SlotPair], vertex_pairs: &[SlotPair]) -> Result<Self, DiagramError> {
        let n = 2 * ell;
        let slot = |(f, p): (usize, usize)| f * n + p % n;
        let mut ve = UnionFind::<usize>::new(faces * n);
        let mut ee = UnionFind::<usize>::new(faces * n);
        for &(a, b) in vertex_pairs {
            if (a.1 + b.1) % 2 != 0 {
                return Err(DiagramError::NotAlternating { face: a.0 });
            }
            ve.union(slot(a), slot(b));
        }
        for &(a, b) in edge_pairs {
            if (a.1 + b.1) % 2 == 0 {
                // same parity: factor end is the start vertex of both slots
                ve.union(slot(a), slot(b));
                ve.union(slot((a.0, a.1 + 1)), slot((b.0, b.1 + 1)));
            } else {
                ve.union(slot(a), slot((b.0, b.1 + 1)));
                ve.union(slot((a.0, a.1 + 1)), slot(b));
            }
            ee.union(slot(a), slot(b));
        }
        let cycles: Vec<FaceCycle> = (0..faces)
            .map(|f| FaceCycle {
                vertices: (0..n).map(|p| ve.find(slot((f, p)))).collect(),
                edges: (0..n).map(|p| ee.find(slot((f, p)))).collect(),
            })
            .collect();
        AbstractDiagram::from_cycles(ell, &cycles)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let n = 2 * self.ell;
        for (e, &(c, f)) in self.edges.iter().enumerate() {
            let (kc, kf) = (self.kinds.get(c), self.kinds.get(f));
            if kc.is_none() || kf.is_none() {
                return Err(DiagramError::OutOfRange(format!("edge {e}")));
            }
            if kc != Some(&VertexKind::Central) || kf != Some(&VertexKind::Factor) {
                return Err(DiagramError::NotBipartite(e));
            }
        }
        let mut edge_used = vec![false; self.edges.len()];
        let mut vertex_used = vec![false; self.kinds.len()];
        for (fi, face) in self.faces.iter().enumerate() {
            if face.edges.len() != n || face.vertices.len() != n {
                return Err(DiagramError::WrongLength { face: fi, len: face.edges.len(), expected: n });
            }
            if face.distinguished >= self.ell {
                return Err(DiagramError::BadDistinguished { face: fi, corner: face.distinguished });
            }
            for pos in 0..n {
                let v = face.vertices[pos];
                let e = face.edges[pos];
                if v >= self.kinds.len() || e >= self.edges.len() {
                    return Err(DiagramError::OutOfRange(format!("face {fi} position {pos}")));
                }
                if self.kinds[v] != VertexKind::at_position(pos) {
                    return Err(DiagramError::NotAlternating { face: fi });
                }
                let w = face.vertices[(pos + 1) % n];
                let (c, f) = self.edges[e];
                let ok = if pos.is_multiple_of(2) { (c, f) == (w, v) } else { (c, f) == (v, w) };
                if !ok {
                    return Err(DiagramError::EdgeMismatch { face: fi, pos });
                }
                if face.edges[(pos + 1) % n] == e {
                    return Err(DiagramError::NotImmersed { face: fi, pos });
                }
                edge_used[e] = true;
                vertex_used[v] = true;
            }
        }
        if let Some(e) = edge_used.iter().position(|u| !u) {
            return Err(DiagramError::UnusedEdge(e));
        }
        if let Some(v) = vertex_used.iter().position(|u| !u) {
            return Err(DiagramError::UnusedVertex(v));
        }
        Ok(())
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Boundary length `L = 2ℓ` of every face.
    pub fn face_length(&self) -> usize {
        2 * self.ell
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    pub fn area(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.kinds.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Replace distinguished corners, orientations and the face partition.
    pub fn with_labels(&self, distinguished: &[usize], orientations: &[Orientation], classes: &[usize]) -> Result<Self, DiagramError> {
        if distinguished.len() != self.faces.len() || orientations.len() != self.faces.len() {
            return Err(DiagramError::BadPartition { got: distinguished.len().min(orientations.len()), faces: self.faces.len() });
        }
        let mut faces = self.faces.clone();
        for (f, face) in faces.iter_mut().enumerate() {
            face.distinguished = distinguished[f];
            face.orientation = orientations[f];
        }
        AbstractDiagram::new(self.ell, self.kinds.clone(), self.edges.clone(), faces, classes.to_vec())
    }

    /// Face-incidence count of each edge, with multiplicity.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for face in &self.faces {
            for &e in &face.edges {
                deg[e] += 1;
            }
        }
        deg
    }

    /// Graph degree of each vertex in the 1-skeleton.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.kinds.len()];
        for &(c, f) in &self.edges {
            deg[c] += 1;
            deg[f] += 1;
        }
        deg
    }

    /// Incident edges of each vertex, in edge-id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.kinds.len()];
        for (e, &(c, f)) in self.edges.iter().enumerate() {
            adj[c].push(e);
            adj[f].push(e);
        }
        adj
    }

    /// The endpoint of `e` other than `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (c, f) = self.edges[e];
        if c == v {
            f
        } else {
            c
        }
    }

    /// Number of edges of degree one; `|∂D|` for a disc diagram.
    pub fn boundary_length(&self) -> usize {
        self.edge_degrees().iter().filter(|&&d| d == 1).count()
    }

    /// Connectivity of the 1-skeleton.
    pub fn is_connected(&self) -> bool {
        if self.kinds.is_empty() {
            return true;
        }
        let mut uf = UnionFind::<usize>::new(self.kinds.len());
        for &(c, f) in &self.edges {
            uf.union(c, f);
        }
        let r = uf.find(0);
        (1..self.kinds.len()).all(|v| uf.find(v) == r)
    }

    /// Whether no face meets an edge more than once.
    pub fn faces_meet_edges_once(&self) -> bool {
        self.faces.iter().all(|f| {
            let mut seen = vec![false; self.edges.len()];
            f.edges.iter().all(|&e| !std::mem::replace(&mut seen[e], true))
        })
    }

    /// Faces touching each edge.
    pub fn faces_on_edge(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &e in &face.edges {
                if out[e].last() != Some(&f) {
                    out[e].push(f);
                }
            }
        }
        out
    }

    /// Faces adjacent along at least one edge, as an adjacency list.
    pub fn face_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for on in self.faces_on_edge() {
            for (i, &f) in on.iter().enumerate() {
                for &g in &on[i + 1..] {
                    if f != g && !adj[f].contains(&g) {
                        adj[f].push(g);
                        adj[g].push(f);
                    }
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Diagram on a subset of faces, with unused cells dropped.
    pub fn sub_diagram(&self, faces: &[usize]) -> Result<Self, DiagramError> {
        let cycles: Vec<FaceCycle> = faces.iter().map(|&f| FaceCycle { vertices: self.faces[f].vertices.clone(), edges: self.faces[f].edges.clone() }).collect();
        let base = AbstractDiagram::from_cycles(self.ell, &cycles)?;
        let dist: Vec<usize> = faces.iter().map(|&f| self.faces[f].distinguished).collect();
        let ori: Vec<Orientation> = faces.iter().map(|&f| self.faces[f].orientation).collect();
        let cls: Vec<usize> = faces.iter().map(|&f| self.classes[f]).collect();
        base.with_labels(&dist, &ori, &cls)
    }

    /// Same diagram with all vertex, edge and face ids permuted.
    ///
    /// `vperm[v]`, `eperm[e]` and `fperm[f]` are the new ids.
    pub fn relabel(&self, vperm: &[usize], eperm: &[usize], fperm: &[usize]) -> Result<Self, DiagramError> {
        let mut kinds = vec![VertexKind::Central; self.kinds.len()];
        for (v, &k) in self.kinds.iter().enumerate() {
            kinds[vperm[v]] = k;
        }
        let mut edges = vec![(0, 0); self.edges.len()];
        for (e, &(c, f)) in self.edges.iter().enumerate() {
            edges[eperm[e]] = (vperm[c], vperm[f]);
        }
        let mut faces = self.faces.clone();
        let mut classes = vec![0; self.faces.len()];
        for (f, face) in self.faces.iter().enumerate() {
            faces[fperm[f]] = Face {
                vertices: face.vertices.iter().map(|&v| vperm[v]).collect(),
                edges: face.edges.iter().map(|&e| eperm[e]).collect(),
                distinguished: face.distinguished,
                orientation: face.orientation,
            };
            classes[fperm[f]] = self.classes[f];
        }
        AbstractDiagram::new(self.ell, kinds, edges, faces, classes)
    }

    /// Rotate the stored cycle of face `f` by `k` corners and optionally
    /// reverse it, keeping the distinguished vertex and reading direction.
    pub fn restart_face(&self, f: usize, k: usize, reverse: bool) -> Result<Self, DiagramError> {
        let n = 2 * self.ell;
        let face = &self.faces[f];
        let s = (2 * k) % n;
        let (vertices, edges, distinguished, orientation) = if reverse {
            let vs: Vec<usize> = (0..n).map(|t| face.vertices[(s + n - t) % n]).collect();
            let es: Vec<usize> = (0..n).map(|t| face.edges[(s + 2 * n - t - 1) % n]).collect();
            let dpos = (s + n - 2 * face.distinguished) % n;
            (vs, es, dpos / 2, face.orientation.flip())
        } else {
            let vs: Vec<usize> = (0..n).map(|t| face.vertices[(s + t) % n]).collect();
            let es: Vec<usize> = (0..n).map(|t| face.edges[(s + t) % n]).collect();
            let dpos = (2 * face.distinguished + n - s) % n;
            (vs, es, dpos / 2, face.orientation)
        };
        let mut faces = self.faces.clone();
        faces[f] = Face { vertices, edges, distinguished, orientation };
        AbstractDiagram::new(self.ell, self.kinds.clone(), self.edges.clone(), faces, self.classes.clone())
    }
}

/// Relabel classes by first appearance.
pub(crate) fn normalize_classes(classes: &[usize]) -> Vec<usize> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    classes
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// A single 2ℓ-gon with no identifications.
pub fn polygon(ell: usize) -> AbstractDiagram {
    let n = 2 * ell;
    AbstractDiagram::from_cycles(ell, &[FaceCycle { vertices: (0..n).collect(), edges: (0..n).collect() }]).expect("polygon is valid")
}

/// Two 2ℓ-gons glued along a path of `shared` edges, the second face
/// traversing the path in the opposite direction.
///
/// `start1` and `start2` are the first shared positions on each face.
pub fn glue_two(ell: usize, start1: usize, start2: usize, shared: usize) -> Result<AbstractDiagram, DiagramError> {
    let n = 2 * ell;
    if shared > 0 && (start1 + start2 + shared - 1).is_multiple_of(2) {
        return Err(DiagramError::NotAlternating { face: 1 });
    }
    let pairs: Vec<_> = (0..shared).map(|t| ((0, (start1 + t) % n), (1, (start2 + shared - 1 - t) % n))).collect();
    AbstractDiagram::from_slot_unions(ell, 2, &pairs, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_counts() {
        let p = polygon(3);
        assert_eq!((p.vertex_count(), p.edge_count(), p.area()), (6, 6, 1));
        assert_eq!(p.euler_characteristic(), 1);
        assert_eq!(p.boundary_length(), 6);
    }

    #[test]
    fn rejects_backtracking_face() {
        let c = FaceCycle { vertices: vec![0, 1, 0, 1], edges: vec![0, 0, 1, 1] };
        assert!(matches!(AbstractDiagram::from_cycles(2, &[c]), Err(DiagramError::NotImmersed { .. })));
    }

    #[test]
    fn rejects_type_clash() {
        let c = FaceCycle { vertices: vec![0, 1, 1, 2], edges: vec![0, 1, 2, 3] };
        assert!(AbstractDiagram::from_cycles(2, &[c]).is_err());
    }

    #[test]
    fn glue_two_shares_path() {
        let d = glue_two(3, 0, 0, 2).unwrap();
        assert_eq!(d.edge_count(), 10);
        assert_eq!(d.vertex_count(), 9);
        assert_eq!(d.boundary_length(), 8);
        let d1 = glue_two(3, 1, 4, 1).unwrap();
        assert_eq!(d1.edge_count(), 11);
    }

    #[test]
    fn restart_preserves_reading() {
        let d = glue_two(3, 0, 0, 2).unwrap();
        let r = d.restart_face(1, 1, true).unwrap();
        assert_eq!(full_code(&d), full_code(&r));
        assert_eq!(geometric_code(&d), geometric_code(&r));
    }
}
