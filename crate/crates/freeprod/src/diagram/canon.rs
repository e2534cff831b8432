//! Canonical codes for isomorphism classes of diagrams.
//!
//! A code reads every face once, labelling vertices and edges by first
//! appearance, and takes the lexicographic minimum over face orders and
//! admissible readings.

use super::{AbstractDiagram, Orientation};

pub type CanonicalCode = Vec<u32>;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone)]
struct Labels {
    vertex: Vec<u32>,
    edge: Vec<u32>,
    class: Vec<u32>,
    nv: u32,
    ne: u32,
    nc: u32,
}

impl Labels {
    fn new(d: &AbstractDiagram) -> Self {
        Labels { vertex: vec![UNSEEN; d.vertex_count()], edge: vec![UNSEEN; d.edge_count()], class: vec![UNSEEN; d.class_count()], nv: 0, ne: 0, nc: 0 }
    }

    fn v(&mut self, v: usize) -> u32 {
        if self.vertex[v] == UNSEEN {
            self.vertex[v] = self.nv;
            self.nv += 1;
        }
        self.vertex[v]
    }

    fn e(&mut self, e: usize) -> u32 {
        if self.edge[e] == UNSEEN {
            self.edge[e] = self.ne;
            self.ne += 1;
        }
        self.edge[e]
    }

    fn c(&mut self, c: usize) -> u32 {
        if self.class[c] == UNSEEN {
            self.class[c] = self.nc;
            self.nc += 1;
        }
        self.class[c]
    }
}

#[derive(Clone, Copy)]
struct Reading {
    start: usize,
    forward: bool,
}

fn read(d: &AbstractDiagram, f: usize, r: Reading, with_class: bool, lab: &mut Labels, out: &mut Vec<u32>) {
    let face = &d.faces()[f];
    let n = face.len();
    if with_class {
        out.push(lab.c(d.classes()[f]));
    }
    for t in 0..n {
        let (v, e) = if r.forward { (face.vertices[(r.start + t) % n], face.edges[(r.start + t) % n]) } else { (face.vertices[(r.start + n - t) % n], face.edges[(r.start + 2 * n - t - 1) % n]) };
        out.push(lab.v(v));
        out.push(lab.e(e));
    }
}

fn readings(d: &AbstractDiagram, f: usize, labelled: bool) -> Vec<Reading> {
    let face = &d.faces()[f];
    if labelled {
        return vec![Reading { start: 2 * face.distinguished, forward: face.orientation == Orientation::Plus }];
    }
    (0..d.ell()).flat_map(|k| [Reading { start: 2 * k, forward: true }, Reading { start: 2 * k, forward: false }]).collect()
}

type Best = Option<(Vec<u32>, Vec<usize>)>;

fn search(d: &AbstractDiagram, labelled: bool, remaining: &mut [bool], lab: Labels, prefix: &mut Vec<u32>, order: &mut Vec<usize>, best: &mut Best) {
    if remaining.iter().all(|r| !r) {
        if best.as_ref().is_none_or(|(b, _)| prefix.as_slice() < b.as_slice()) {
            *best = Some((prefix.clone(), order.clone()));
        }
        return;
    }
    let mut cands: Vec<(Vec<u32>, usize, Labels)> = Vec::new();
    let mut min: Option<Vec<u32>> = None;
    for f in 0..remaining.len() {
        if !remaining[f] {
            continue;
        }
        for r in readings(d, f, labelled) {
            let mut l = lab.clone();
            let mut seq = Vec::new();
            read(d, f, r, labelled, &mut l, &mut seq);
            match &min {
                Some(m) if seq > *m => continue,
                Some(m) if seq < *m => {
                    cands.clear();
                    min = Some(seq.clone());
                }
                None => min = Some(seq.clone()),
                _ => {}
            }
            cands.push((seq, f, l));
        }
    }
    let min = min.expect("a face remains");
    if let Some((b, _)) = best.as_ref() {
        let mut probe = prefix.clone();
        probe.extend_from_slice(&min);
        if probe.as_slice() > &b[..probe.len()] {
            return;
        }
    }
    for (seq, f, l) in cands {
        remaining[f] = false;
        let keep = prefix.len();
        prefix.extend_from_slice(&seq);
        order.push(f);
        search(d, labelled, remaining, l, prefix, order, best);
        order.pop();
        prefix.truncate(keep);
        remaining[f] = true;
    }
}

fn code(d: &AbstractDiagram, labelled: bool) -> (CanonicalCode, Vec<usize>) {
    let mut best = None;
    let mut remaining = vec![true; d.area()];
    let mut prefix = vec![d.ell() as u32, d.area() as u32];
    search(d, labelled, &mut remaining, Labels::new(d), &mut prefix, &mut Vec::new(), &mut best);
    best.unwrap_or((prefix, Vec::new()))
}

/// Code of the underlying cell complex, ignoring corner labels and classes.
pub fn geometric_code(d: &AbstractDiagram) -> CanonicalCode {
    code(d, false).0
}

/// Code of the diagram with distinguished vertices, orientations and the
/// face partition.
pub fn full_code(d: &AbstractDiagram) -> CanonicalCode {
    code(d, true).0
}

impl AbstractDiagram {
    /// Representative with ids renumbered in canonical reading order.
    pub fn canonical_form(&self) -> AbstractDiagram {
        self.canonical_form_with_order().0
    }

    /// Canonical form together with the original index of each of its faces.
    pub fn canonical_form_with_order(&self) -> (AbstractDiagram, Vec<usize>) {
        let (code, order) = code(self, true);
        let n = self.face_length();
        let stride = 2 * n + 1;
        let faces = self.area();
        let mut cycles = Vec::with_capacity(faces);
        let mut classes = Vec::with_capacity(faces);
        for f in 0..faces {
            let block = &code[2 + f * stride..2 + (f + 1) * stride];
            classes.push(block[0] as usize);
            let vs: Vec<usize> = (0..n).map(|t| block[1 + 2 * t] as usize).collect();
            let es: Vec<usize> = (0..n).map(|t| block[2 + 2 * t] as usize).collect();
            cycles.push(super::FaceCycle { vertices: vs, edges: es });
        }
        // every canonical reading starts at the distinguished vertex and runs
        // along the orientation, so corner 0 and `+` restore the labels
        let base = AbstractDiagram::from_cycles(self.ell(), &cycles).expect("canonical code encodes a valid diagram");
        (base.with_labels(&vec![0; faces], &vec![Orientation::Plus; faces], &classes).expect("labels valid"), order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{glue_two, polygon};

    #[test]
    fn polygon_code_ignores_start() {
        let p = polygon(4);
        for k in 0..4 {
            for rev in [false, true] {
                let q = p.restart_face(0, k, rev).unwrap();
                assert_eq!(geometric_code(&p), geometric_code(&q));
                assert_eq!(full_code(&p), full_code(&q));
            }
        }
    }

    #[test]
    fn distinguishes_gluings() {
        let a = glue_two(3, 0, 0, 2).unwrap();
        let b = glue_two(3, 1, 1, 2).unwrap();
        let c = glue_two(3, 0, 1, 1).unwrap();
        let a2 = glue_two(3, 2, 2, 2).unwrap();
        // interior vertex of the shared path is central in `a`, factor in `b`
        assert_ne!(geometric_code(&a), geometric_code(&b));
        assert_eq!(geometric_code(&a), geometric_code(&a2));
        assert_ne!(geometric_code(&a), geometric_code(&c));
    }

    #[test]
    fn canonical_form_round_trips() {
        let d = glue_two(3, 1, 1, 2).unwrap().with_labels(&[2, 1], &[Orientation::Minus, Orientation::Plus], &[4, 4]).unwrap();
        let c = d.canonical_form();
        assert_eq!(full_code(&c), full_code(&d));
        assert_eq!(c.canonical_form(), c);
    }
}
