//! Connectors, cancellation, relative cancellation and reduction pairs.

use std::collections::BTreeMap;

use num_rational::Ratio;

use super::{AbstractDiagram, VertexKind};

/// Maximal segment of the 1-skeleton whose interior vertices have degree 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connector {
    /// `vertices[i]` and `vertices[i + 1]` bound `edges[i]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Set for a cycle of degree-2 vertices; then `vertices[0] == vertices[μ]`.
    pub closed: bool,
}

impl Connector {
    /// Edge length `μ`.
    pub fn weight(&self) -> usize {
        self.edges.len()
    }
}

/// Partition of the 1-skeleton into connectors.
///
/// Open connectors run between vertices of degree other than 2, found from
/// the lowest junction id and edge id first; leftover cycles start at
/// their lowest factor vertex.
pub fn connectors(d: &AbstractDiagram) -> Vec<Connector> {
    let deg = d.vertex_degrees();
    let inc = d.incidence();
    let mut used = vec![false; d.edge_count()];
    let mut out = Vec::new();
    let walk = |start: usize, first: usize, used: &mut Vec<bool>, stop_at_start: bool| {
        let mut vertices = vec![start];
        let mut edges = vec![first];
        used[first] = true;
        let mut cur = d.other_end(first, start);
        let mut last = first;
        loop {
            vertices.push(cur);
            if deg[cur] != 2 || (stop_at_start && cur == start) {
                break;
            }
            let next = if inc[cur][0] == last { inc[cur][1] } else { inc[cur][0] };
            if used[next] {
                break;
            }
            used[next] = true;
            edges.push(next);
            last = next;
            cur = d.other_end(next, cur);
        }
        (vertices, edges)
    };
    for v in 0..d.vertex_count() {
        if deg[v] == 2 {
            continue;
        }
        for &e in &inc[v] {
            if !used[e] {
                let (vertices, edges) = walk(v, e, &mut used, false);
                out.push(Connector { vertices, edges, closed: false });
            }
        }
    }
    let mut starts: Vec<usize> = (0..d.vertex_count()).filter(|&v| d.kinds()[v] == VertexKind::Factor).collect();
    starts.extend((0..d.vertex_count()).filter(|&v| d.kinds()[v] == VertexKind::Central));
    for v in starts {
        if let Some(&e) = inc[v].iter().find(|&&e| !used[e]) {
            let (vertices, edges) = walk(v, e, &mut used, true);
            out.push(Connector { vertices, edges, closed: true });
        }
    }
    out
}

/// `Σ_e (deg(e) − 1)` with face incidences counted with multiplicity.
pub fn cancellation(d: &AbstractDiagram) -> usize {
    d.edge_degrees().iter().map(|&k| k.saturating_sub(1)).sum()
}

/// Ordered pair of distinct edges at a factor vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeTriple {
    pub e1: usize,
    pub v: usize,
    pub e2: usize,
}

/// Ordered edge triples fully contained in at least one face.
pub fn edge_triples(d: &AbstractDiagram) -> Vec<EdgeTriple> {
    let inc = d.incidence();
    let mut on_face = vec![vec![false; d.edge_count()]; d.area()];
    for (f, face) in d.faces().iter().enumerate() {
        for &e in &face.edges {
            on_face[f][e] = true;
        }
    }
    let mut out = Vec::new();
    for v in 0..d.vertex_count() {
        if d.kinds()[v] != VertexKind::Factor {
            continue;
        }
        for &a in &inc[v] {
            for &b in &inc[v] {
                if a != b && on_face.iter().any(|s| s[a] && s[b]) {
                    out.push(EdgeTriple { e1: a, v, e2: b });
                }
            }
        }
    }
    out
}

/// Faces containing both edges, plus one if some face contains exactly one.
pub fn relative_degree(d: &AbstractDiagram, t: EdgeTriple) -> usize {
    let mut full = 0;
    let mut partial = false;
    for face in d.faces() {
        let has1 = face.edges.contains(&t.e1);
        let has2 = face.edges.contains(&t.e2);
        if has1 && has2 {
            full += 1;
        } else if has1 || has2 {
            partial = true;
        }
    }
    full + usize::from(partial)
}

/// `½ Σ (deg_* − 1)` over ordered edge triples fully contained in a face.
pub fn relative_cancellation(d: &AbstractDiagram) -> Ratio<i64> {
    let s: i64 = edge_triples(d).into_iter().map(|t| relative_degree(d, t) as i64 - 1).sum();
    Ratio::new(s, 2)
}

/// Two same-class faces with opposite orientations folded onto each other
/// along `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReductionPair {
    pub faces: (usize, usize),
    pub edge: usize,
}

/// All reduction pairs, one per face pair and shared edge.
///
/// A shared edge witnesses a pair when both of its endpoints sit at the
/// same oriented distance from the distinguished vertex in each face. The
/// two readings then run along the edge in the same direction, so the faces
/// carry opposite orientations as cells of the complex.
pub fn reduction_pairs(d: &AbstractDiagram) -> Vec<ReductionPair> {
    let n = d.face_length();
    let mut found = BTreeMap::new();
    for (f, ff) in d.faces().iter().enumerate() {
        for (g, gf) in d.faces().iter().enumerate().skip(f + 1) {
            if d.classes()[f] != d.classes()[g] {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let e = ff.edges[i];
                    if gf.edges[j] != e {
                        continue;
                    }
                    // the faces meet this edge in opposite stored directions
                    let (fa, fb) = (i, (i + 1) % n);
                    let (ga, gb) = if (i + j) % 2 == 0 { (j, (j + 1) % n) } else { ((j + 1) % n, j) };
                    if ff.oriented_distance(fa) == gf.oriented_distance(ga) && ff.oriented_distance(fb) == gf.oriented_distance(gb) {
                        found.entry((f, g)).or_insert(e);
                    }
                }
            }
        }
    }
    found.into_iter().map(|((f, g), edge)| ReductionPair { faces: (f, g), edge }).collect()
}

pub fn is_reduced(d: &AbstractDiagram) -> bool {
    reduction_pairs(d).is_empty()
}

impl AbstractDiagram {
    pub fn is_reduced(&self) -> bool {
        is_reduced(self)
    }

    pub fn connector_count(&self) -> usize {
        connectors(self).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{glue_two, polygon, AbstractDiagram, FaceCycle, Orientation};

    #[test]
    fn connector_counts() {
        assert_eq!(connectors(&polygon(3)).len(), 1);
        assert!(connectors(&polygon(3))[0].closed);
        assert_eq!(connectors(&glue_two(3, 0, 0, 2).unwrap()).len(), 3);
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(cancellation(&polygon(3)), 0);
        let d = glue_two(3, 0, 0, 2).unwrap();
        assert_eq!(cancellation(&d), 2);
        assert_eq!(2 * cancellation(&d), 2 * 3 * 2 - d.boundary_length());
    }

    #[test]
    fn self_glued_edge_counts_with_multiplicity() {
        // hexagon whose edges at positions 0 and 3 are one edge
        let c = FaceCycle { vertices: vec![0, 1, 2, 1, 0, 5], edges: vec![0, 1, 2, 0, 4, 5] };
        let d = AbstractDiagram::from_cycles(3, &[c]).unwrap();
        assert_eq!(d.edge_degrees()[0], 2);
        assert_eq!(cancellation(&d), 1);
    }

    #[test]
    fn relative_cancellation_examples() {
        assert_eq!(relative_cancellation(&polygon(4)), Ratio::from_integer(0));
        // shared path with a factor vertex in its interior
        let d = glue_two(3, 1, 1, 2).unwrap();
        assert_eq!(cancellation(&d), 2);
        let cs = relative_cancellation(&d);
        assert_eq!(cs, Ratio::from_integer(1));
        // shared path with a central vertex in its interior
        let d = glue_two(3, 0, 0, 2).unwrap();
        assert!(Ratio::from_integer(cancellation(&d) as i64) <= cs * 2);
    }

    #[test]
    fn displayed_triple_degree_two() {
        // both faces fully contain the triple at the degree-2 factor vertex
        let d = glue_two(3, 1, 1, 2).unwrap();
        let f = &d.faces()[0];
        let t = EdgeTriple { e1: f.edges[1], v: f.vertices[2], e2: f.edges[2] };
        assert_eq!(relative_degree(&d, t), 2);
        // one face fully contains, the other contains only one edge
        let d = glue_two(3, 0, 1, 1).unwrap();
        let f = &d.faces()[0];
        let t = EdgeTriple { e1: f.edges[5], v: f.vertices[0], e2: f.edges[0] };
        assert_eq!(relative_degree(&d, t), 2);
    }

    #[test]
    fn mirror_pair_is_not_reduced() {
        let d = glue_two(3, 1, 1, 2).unwrap();
        // face 1 traverses the path backwards; mirror the readings
        let mirrored = d.with_labels(&[1, 1], &[Orientation::Plus, Orientation::Minus], &[0, 0]).unwrap();
        assert!(!mirrored.is_reduced());
        let same = d.with_labels(&[1, 1], &[Orientation::Plus, Orientation::Plus], &[0, 0]).unwrap();
        assert!(same.is_reduced());
        let split = d.with_labels(&[1, 1], &[Orientation::Plus, Orientation::Minus], &[0, 1]).unwrap();
        assert!(split.is_reduced());
        assert!(polygon(3).is_reduced());
    }
}
