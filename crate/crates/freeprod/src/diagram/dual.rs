//! Weighted decorated dual graphs.
//!
//! Faces and connectors form a bipartite graph. Each face lists the
//! connectors along its boundary in cyclic order with a sign recording the
//! direction of traversal, and each connector carries its edge length.

use std::collections::HashMap;

use super::cancel::connectors;
use super::{AbstractDiagram, DiagramError, FaceCycle, Orientation, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConnectorEnd {
    Start,
    Finish,
}

impl ConnectorEnd {
    fn flip(self) -> Self {
        match self {
            ConnectorEnd::Start => ConnectorEnd::Finish,
            ConnectorEnd::Finish => ConnectorEnd::Start,
        }
    }
}

/// Face vertex of the dual graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFace {
    /// Connectors along the boundary in stored direction.
    pub traversals: Vec<(usize, Sign)>,
    /// Boundary position where the first traversal begins.
    pub offset: usize,
    pub distinguished: usize,
    pub orientation: Orientation,
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub ell: usize,
    /// Edge length `μ` of each connector.
    pub weights: Vec<usize>,
    pub closed: Vec<bool>,
    /// Kind of the first vertex of each connector.
    pub start_kinds: Vec<VertexKind>,
    pub faces: Vec<DualFace>,
    /// Connector ends meeting at each vertex of degree other than 2.
    pub junctions: Vec<Vec<(usize, ConnectorEnd)>>,
}

/// Dual graph of a diagram; connectors are numbered as in [`connectors`].
pub fn encode_dual(d: &AbstractDiagram) -> DualGraph {
    let cons = connectors(d);
    let n = d.face_length();
    let mut edge_at: HashMap<usize, (usize, usize)> = HashMap::new();
    for (c, con) in cons.iter().enumerate() {
        for (i, &e) in con.edges.iter().enumerate() {
            edge_at.insert(e, (c, i));
        }
    }
    let deg = d.vertex_degrees();
    let mut junction_id: HashMap<usize, usize> = HashMap::new();
    let mut junctions: Vec<Vec<(usize, ConnectorEnd)>> = Vec::new();
    for (c, con) in cons.iter().enumerate() {
        if con.closed {
            continue;
        }
        for (v, end) in [(con.vertices[0], ConnectorEnd::Start), (*con.vertices.last().expect("nonempty"), ConnectorEnd::Finish)] {
            let next = junctions.len();
            let j = *junction_id.entry(v).or_insert(next);
            if j == junctions.len() {
                junctions.push(Vec::new());
            }
            junctions[j].push((c, end));
        }
    }
    let faces = d
        .faces()
        .iter()
        .enumerate()
        .map(|(fi, face)| {
            let (c0, _) = edge_at[&face.edges[0]];
            let offset = if cons[c0].closed {
                // first position at the connector start, leaving along either direction
                let con = &cons[c0];
                (0..n).find(|&p| face.vertices[p] == con.vertices[0] && (face.edges[p] == con.edges[0] || face.edges[p] == *con.edges.last().expect("nonempty"))).expect("closed connector start lies on the face")
            } else {
                (0..n).find(|&p| deg[face.vertices[p]] != 2).expect("open face meets a junction")
            };
            let mut traversals = Vec::new();
            let mut t = 0;
            while t < n {
                let p = (offset + t) % n;
                let (c, i) = edge_at[&face.edges[p]];
                let con = &cons[c];
                let mu = con.weight();
                let forward = face.vertices[p] == con.vertices[i] && face.vertices[(p + 1) % n] == con.vertices[i + 1];
                let sign = if forward { Sign::Plus } else { Sign::Minus };
                debug_assert!(if forward { i == 0 } else { i == mu - 1 }, "face {fi} enters connector {c} mid-way");
                traversals.push((c, sign));
                t += mu;
            }
            DualFace { traversals, offset, distinguished: face.distinguished, orientation: face.orientation, class: d.classes()[fi] }
        })
        .collect();
    DualGraph {
        ell: d.ell(),
        weights: cons.iter().map(|c| c.weight()).collect(),
        closed: cons.iter().map(|c| c.closed).collect(),
        start_kinds: cons.iter().map(|c| d.kinds()[c.vertices[0]]).collect(),
        faces,
        junctions,
    }
}

fn bad(msg: impl Into<String>) -> DiagramError {
    DiagramError::BadDual(msg.into())
}

/// Rebuild the diagram from its dual graph.
pub fn decode_dual(g: &DualGraph) -> Result<AbstractDiagram, DiagramError> {
    let nc = g.weights.len();
    if g.closed.len() != nc || g.start_kinds.len() != nc {
        return Err(bad("per-connector data has inconsistent lengths"));
    }
    let n = 2 * g.ell;
    let kind_at = |c: usize, i: usize| if i.is_multiple_of(2) { g.start_kinds[c] } else { g.start_kinds[c].other() };
    // vertex ids: junctions first, then connector interiors
    let mut end_vertex: HashMap<(usize, ConnectorEnd), usize> = HashMap::new();
    for (j, ends) in g.junctions.iter().enumerate() {
        if ends.len() == 2 || ends.is_empty() {
            return Err(bad(format!("junction {j} has degree {}", ends.len())));
        }
        let mut kind = None;
        for &(c, end) in ends {
            if c >= nc || g.closed[c] {
                return Err(bad(format!("junction {j} lists connector {c}")));
            }
            let k = match end {
                ConnectorEnd::Start => kind_at(c, 0),
                ConnectorEnd::Finish => kind_at(c, g.weights[c]),
            };
            if kind.is_some_and(|k0| k0 != k) {
                return Err(bad(format!("junction {j} mixes vertex kinds")));
            }
            kind = Some(k);
            if end_vertex.insert((c, end), j).is_some() {
                return Err(bad(format!("connector {c} end listed twice")));
            }
        }
    }
    let mut next = g.junctions.len();
    let mut cverts: Vec<Vec<usize>> = Vec::with_capacity(nc);
    let mut cedges: Vec<Vec<usize>> = Vec::with_capacity(nc);
    let mut ne = 0;
    for c in 0..nc {
        let mu = g.weights[c];
        if mu == 0 {
            return Err(bad(format!("connector {c} has weight 0")));
        }
        let mut vs = Vec::with_capacity(mu + 1);
        if g.closed[c] {
            if !mu.is_multiple_of(2) || g.start_kinds[c] != VertexKind::Factor {
                return Err(bad(format!("closed connector {c} has odd length or starts at a central vertex")));
            }
            for _ in 0..mu {
                vs.push(next);
                next += 1;
            }
            vs.push(vs[0]);
        } else {
            let (Some(&s), Some(&f)) = (end_vertex.get(&(c, ConnectorEnd::Start)), end_vertex.get(&(c, ConnectorEnd::Finish))) else {
                return Err(bad(format!("open connector {c} lacks a junction")));
            };
            vs.push(s);
            for _ in 1..mu {
                vs.push(next);
                next += 1;
            }
            vs.push(f);
        }
        cverts.push(vs);
        cedges.push((ne..ne + mu).collect());
        ne += mu;
    }
    let mut cycles = Vec::with_capacity(g.faces.len());
    let mut dist = Vec::with_capacity(g.faces.len());
    let mut ori = Vec::with_capacity(g.faces.len());
    let mut classes = Vec::with_capacity(g.faces.len());
    for (fi, face) in g.faces.iter().enumerate() {
        let mut vs = Vec::with_capacity(n);
        let mut es = Vec::with_capacity(n);
        let mut last_end: Option<usize> = None;
        for &(c, sign) in &face.traversals {
            if c >= nc {
                return Err(bad(format!("face {fi} lists connector {c}")));
            }
            let (v, e) = (&cverts[c], &cedges[c]);
            let mu = e.len();
            let (first, last) = match sign {
                Sign::Plus => (v[0], v[mu]),
                Sign::Minus => (v[mu], v[0]),
            };
            if last_end.is_some_and(|l| l != first) {
                return Err(bad(format!("face {fi} jumps between junctions")));
            }
            for t in 0..mu {
                match sign {
                    Sign::Plus => {
                        vs.push(v[t]);
                        es.push(e[t]);
                    }
                    Sign::Minus => {
                        vs.push(v[mu - t]);
                        es.push(e[mu - 1 - t]);
                    }
                }
            }
            last_end = Some(last);
        }
        if es.len() != n || vs.first().is_some_and(|&f| Some(f) != last_end) {
            return Err(bad(format!("face {fi} does not close up after {} edges", es.len())));
        }
        let s = (n - face.offset % n) % n;
        cycles.push(FaceCycle { vertices: (0..n).map(|q| vs[(q + s) % n]).collect(), edges: (0..n).map(|q| es[(q + s) % n]).collect() });
        dist.push(face.distinguished);
        ori.push(face.orientation);
        classes.push(face.class);
    }
    let base = AbstractDiagram::from_cycles(g.ell, &cycles)?;
    if base.vertex_count() != next || base.edge_count() != ne {
        return Err(bad("some connector lies on no face"));
    }
    base.with_labels(&dist, &ori, &classes)
}

/// Serialized reading of the graph under one choice of face order and face
/// readings, with connectors numbered by first appearance.
#[derive(Clone)]
struct KeyState {
    label: Vec<Option<(u32, bool)>>,
    next: u32,
}

impl KeyState {
    fn emit(&mut self, c: usize, sign: Sign, signed: bool, out: &mut Vec<u32>) {
        let (l, flip) = *self.label[c].get_or_insert_with(|| {
            let l = (self.next, sign == Sign::Minus);
            self.next += 1;
            l
        });
        out.push(l);
        if signed {
            out.push(u32::from((sign == Sign::Minus) != flip));
        }
    }
}

impl DualGraph {
    fn face_readings(&self, f: usize) -> Vec<Vec<(usize, Sign)>> {
        let tr = &self.faces[f].traversals;
        let k = tr.len();
        let mut out = Vec::with_capacity(2 * k);
        for s in 0..k {
            out.push((0..k).map(|t| tr[(s + t) % k]).collect());
            out.push((0..k).map(|t| (tr[(s + k - t) % k].0, tr[(s + k - t) % k].1.flip())).collect());
        }
        out
    }

    fn search(&self, signed: bool, remaining: &mut [bool], st: KeyState, prefix: &mut Vec<u32>, best: &mut Option<Vec<u32>>) {
        if remaining.iter().all(|r| !r) {
            let mut full = prefix.clone();
            self.tail(signed, &st, &mut full);
            if best.as_ref().is_none_or(|b| full < *b) {
                *best = Some(full);
            }
            return;
        }
        let mut cands: Vec<(Vec<u32>, usize, KeyState)> = Vec::new();
        let mut min: Option<Vec<u32>> = None;
        for f in 0..remaining.len() {
            if !remaining[f] {
                continue;
            }
            for r in self.face_readings(f) {
                let mut s = st.clone();
                let mut seq = vec![r.len() as u32];
                for (c, sign) in r {
                    s.emit(c, sign, signed, &mut seq);
                }
                match &min {
                    Some(m) if seq > *m => continue,
                    Some(m) if seq < *m => {
                        cands.clear();
                        min = Some(seq.clone());
                    }
                    None => min = Some(seq.clone()),
                    _ => {}
                }
                cands.push((seq, f, s));
            }
        }
        for (seq, f, s) in cands {
            remaining[f] = false;
            let keep = prefix.len();
            prefix.extend_from_slice(&seq);
            self.search(signed, remaining, s, prefix, best);
            prefix.truncate(keep);
            remaining[f] = true;
        }
    }

    fn tail(&self, signed: bool, st: &KeyState, out: &mut Vec<u32>) {
        let mut order: Vec<(u32, usize, bool)> = st.label.iter().enumerate().filter_map(|(c, l)| l.map(|(lab, flip)| (lab, c, flip))).collect();
        order.sort_unstable();
        for &(_, c, flip) in &order {
            out.push(self.weights[c] as u32);
            out.push(u32::from(self.closed[c]));
            if signed {
                let k = if flip { if self.weights[c].is_multiple_of(2) { self.start_kinds[c] } else { self.start_kinds[c].other() } } else { self.start_kinds[c] };
                out.push(u32::from(k == VertexKind::Factor));
            }
        }
        if signed {
            let mut js: Vec<Vec<u32>> = self
                .junctions
                .iter()
                .map(|ends| {
                    let mut v: Vec<u32> = ends
                        .iter()
                        .map(|&(c, end)| {
                            let (lab, flip) = st.label[c].expect("every connector lies on a face");
                            let end = if flip { end.flip() } else { end };
                            2 * lab + u32::from(end == ConnectorEnd::Finish)
                        })
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            js.sort();
            for j in js {
                out.push(j.len() as u32);
                out.extend(j);
            }
        }
    }

    fn key(&self, signed: bool) -> Vec<u32> {
        let mut best = None;
        let mut remaining = vec![true; self.faces.len()];
        let mut prefix = vec![self.ell as u32, self.faces.len() as u32, self.weights.len() as u32];
        let st = KeyState { label: vec![None; self.weights.len()], next: 0 };
        self.search(signed, &mut remaining, st, &mut prefix, &mut best);
        best.unwrap_or(prefix)
    }

    /// Canonical form of the decorated graph: cyclic face sequences with
    /// signs, weights, start kinds and junctions.
    pub fn signed_key(&self) -> Vec<u32> {
        self.key(true)
    }

    /// Canonical form forgetting signs and junctions.
    pub fn unsigned_key(&self) -> Vec<u32> {
        self.key(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{geometric_code, glue_two, polygon};

    #[test]
    fn polygon_dual() {
        let g = encode_dual(&polygon(3));
        assert_eq!((g.faces.len(), g.weights.len()), (1, 1));
        assert_eq!(g.weights, vec![6]);
        assert_eq!(g.faces[0].traversals.len(), 1);
        assert_eq!(decode_dual(&g).unwrap(), polygon(3));
    }

    #[test]
    fn round_trip_two_faces() {
        for (s1, s2, k) in [(0, 0, 2), (1, 1, 2), (0, 1, 1), (1, 4, 1), (3, 3, 2)] {
            let d = glue_two(3, s1, s2, k).unwrap().with_labels(&[1, 2], &[Orientation::Minus, Orientation::Plus], &[0, 1]).unwrap();
            let g = encode_dual(&d);
            let back = decode_dual(&g).unwrap();
            assert_eq!(geometric_code(&back), geometric_code(&d));
            assert_eq!(crate::diagram::full_code(&back), crate::diagram::full_code(&d));
        }
    }

    #[test]
    fn rejects_broken_graphs() {
        let mut g = encode_dual(&glue_two(3, 0, 0, 2).unwrap());
        g.weights[0] += 1;
        assert!(decode_dual(&g).is_err());
        let mut g = encode_dual(&polygon(2));
        g.closed[0] = false;
        assert!(decode_dual(&g).is_err());
    }

    #[test]
    fn ribbon_and_twisted_pairs() {
        // two octagons glued along two arcs of length 2, the second arc
        // either parallel to the first or twisted
        let ribbon = AbstractDiagram::from_slot_unions(4, 2, &[((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 4), (1, 4)), ((0, 5), (1, 5))], &[]).unwrap();
        let twisted = AbstractDiagram::from_slot_unions(4, 2, &[((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 4), (1, 5)), ((0, 5), (1, 4))], &[]).unwrap();
        let (a, b) = (encode_dual(&ribbon), encode_dual(&twisted));
        assert_ne!(geometric_code(&ribbon), geometric_code(&twisted));
        assert_eq!(a.unsigned_key(), b.unsigned_key());
        assert_ne!(a.signed_key(), b.signed_key());
    }
}
