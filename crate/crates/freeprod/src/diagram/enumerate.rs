//! Enumeration of (K,M)-bounded diagrams through weighted dual graphs, and
//! of disc diagrams by successive face attachment.
//!
//! Enumerated diagrams are connected and every face runs along each
//! connector at most once, so the dual graph has no multiple edges. A
//! skeleton fixes the junctions and the open connectors between them; faces
//! are closed walks in the skeleton and connector weights are chosen so that
//! every face has length 2ℓ.

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;

use super::canon::{full_code, geometric_code};
use super::dual::{decode_dual, ConnectorEnd, DualFace, DualGraph, Sign};
use super::{AbstractDiagram, DiagramError, FaceCycle, Orientation, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Candidate dual graphs decoded, summed over the run.
    pub max_steps: u64,
    /// Diagrams kept at any stage.
    pub max_results: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_steps: 20_000_000, max_results: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub max_faces: usize,
    pub max_connectors: usize,
    pub ell: usize,
    /// One representative per geometric class.
    pub geometric: Vec<AbstractDiagram>,
    /// One representative per isomorphism class of reduced corner-labelled
    /// diagrams.
    pub labelled: Vec<AbstractDiagram>,
    /// Reduced choices of distinguished corners, orientations and partition
    /// on the geometric representatives, before identifying isomorphic ones.
    pub reduced_labelings: usize,
}

impl EnumerationReport {
    pub fn count(&self) -> usize {
        self.labelled.len()
    }
}

struct Steps {
    used: u64,
    budget: EnumerationBudget,
}

impl Steps {
    fn tick(&mut self, what: &str) -> Result<(), DiagramError> {
        self.used += 1;
        if self.used > self.budget.max_steps {
            return Err(DiagramError::BudgetExceeded(format!("{what}: more than {} steps", self.budget.max_steps)));
        }
        Ok(())
    }

    fn check_len(&self, n: usize, what: &str) -> Result<(), DiagramError> {
        if n > self.budget.max_results {
            return Err(DiagramError::BudgetExceeded(format!("{what}: more than {} results", self.budget.max_results)));
        }
        Ok(())
    }
}

/// Junction kinds and open connectors `(a, b)` with `a ≤ b`.
struct Skeleton {
    kinds: Vec<VertexKind>,
    cons: Vec<(usize, usize)>,
}

fn skeletons(c: usize) -> Vec<Skeleton> {
    let mut out = Vec::new();
    for j in 1..=(2 * c / 3) {
        let pairs: Vec<(usize, usize)> = (0..j).flat_map(|a| (a..j).map(move |b| (a, b))).collect();
        for nf in 0..=j {
            let kinds: Vec<VertexKind> = (0..j).map(|i| if i < nf { VertexKind::Factor } else { VertexKind::Central }).collect();
            let mut pick = Vec::with_capacity(c);
            multisets(pairs.len(), c, 0, &mut pick, &mut |idx| {
                let cons: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                let mut deg = vec![0; j];
                let mut uf = UnionFind::<usize>::new(j);
                for &(a, b) in &cons {
                    deg[a] += 1;
                    deg[b] += 1;
                    uf.union(a, b);
                }
                if deg.iter().all(|&d| d >= 3) && (1..j).all(|v| uf.equiv(0, v)) {
                    out.push(Skeleton { kinds: kinds.clone(), cons });
                }
            });
        }
    }
    out
}

/// Non-decreasing index sequences of length `k` below `n`.
fn multisets(n: usize, k: usize, from: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        visit(pick);
        return;
    }
    for i in from..n {
        pick.push(i);
        multisets(n, k, i, pick, visit);
        pick.pop();
    }
}

type Walk = Vec<(usize, Sign)>;

fn canonical_walk(w: &Walk) -> Walk {
    let k = w.len();
    let mut best: Option<Walk> = None;
    for s in 0..k {
        let fwd: Walk = (0..k).map(|t| w[(s + t) % k]).collect();
        let rev: Walk = (0..k).map(|t| (w[(s + k - t) % k].0, w[(s + k - t) % k].1.flip())).collect();
        for cand in [fwd, rev] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Closed walks using each connector at most once, up to rotation and
/// reversal.
fn simple_walks(sk: &Skeleton) -> Vec<Walk> {
    let ends = |c: usize, s: Sign| {
        let (a, b) = sk.cons[c];
        match s {
            Sign::Plus => (a, b),
            Sign::Minus => (b, a),
        }
    };
    let mut found = BTreeSet::new();
    let nc = sk.cons.len();
    fn extend(sk_n: usize, ends: &dyn Fn(usize, Sign) -> (usize, usize), start: usize, at: usize, used: &mut Vec<bool>, walk: &mut Walk, found: &mut BTreeSet<Walk>) {
        for c in 0..sk_n {
            if used[c] {
                continue;
            }
            for s in [Sign::Plus, Sign::Minus] {
                let (a, b) = ends(c, s);
                if a != at {
                    continue;
                }
                used[c] = true;
                walk.push((c, s));
                if b == start {
                    found.insert(canonical_walk(walk));
                }
                extend(sk_n, ends, start, b, used, walk, found);
                walk.pop();
                used[c] = false;
            }
        }
    }
    for j in 0..sk.kinds.len() {
        extend(nc, &ends, j, j, &mut vec![false; nc], &mut Vec::new(), &mut found);
    }
    found.into_iter().collect()
}

/// Connector weights making every face of length `n`; parity follows the
/// kinds of the endpoints.
fn weightings(sk: &Skeleton, faces: &[&Walk], n: usize, steps: &mut Steps, visit: &mut dyn FnMut(&[usize]) -> Result<(), DiagramError>) -> Result<(), DiagramError> {
    let nc = sk.cons.len();
    let mut mult = vec![vec![0usize; nc]; faces.len()];
    for (f, w) in faces.iter().enumerate() {
        for &(c, _) in w.iter() {
            mult[f][c] += 1;
        }
    }
    let min_w: Vec<usize> = sk
        .cons
        .iter()
        .map(|&(a, b)| if a == b || sk.kinds[a] == sk.kinds[b] { 2 } else { 1 })
        .collect();
    // remaining minimum length of each face over unassigned connectors
    let mut rest_min: Vec<Vec<usize>> = vec![vec![0; nc + 1]; faces.len()];
    for f in 0..faces.len() {
        for c in (0..nc).rev() {
            rest_min[f][c] = rest_min[f][c + 1] + mult[f][c] * min_w[c];
        }
    }
    let mut weights = vec![0; nc];
    let mut sums = vec![0; faces.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(c: usize, nc: usize, n: usize, min_w: &[usize], mult: &[Vec<usize>], rest_min: &[Vec<usize>], weights: &mut Vec<usize>, sums: &mut Vec<usize>, steps: &mut Steps, visit: &mut dyn FnMut(&[usize]) -> Result<(), DiagramError>) -> Result<(), DiagramError> {
        if c == nc {
            if sums.iter().all(|&s| s == n) {
                steps.tick("weights")?;
                visit(weights)?;
            }
            return Ok(());
        }
        let mut mu = min_w[c];
        while mu <= n {
            let ok = (0..sums.len()).all(|f| sums[f] + mult[f][c] * mu + rest_min[f][c + 1] <= n);
            if !ok {
                break;
            }
            weights[c] = mu;
            for f in 0..sums.len() {
                sums[f] += mult[f][c] * mu;
            }
            go(c + 1, nc, n, min_w, mult, rest_min, weights, sums, steps, visit)?;
            for f in 0..sums.len() {
                sums[f] -= mult[f][c] * mu;
            }
            mu += 2;
        }
        Ok(())
    }
    go(0, nc, n, &min_w, &mult, &rest_min, &mut weights, &mut sums, steps, visit)
}

fn skeleton_dual(sk: &Skeleton, faces: &[&Walk], weights: &[usize], ell: usize) -> DualGraph {
    let mut junctions = vec![Vec::new(); sk.kinds.len()];
    for (c, &(a, b)) in sk.cons.iter().enumerate() {
        junctions[a].push((c, ConnectorEnd::Start));
        junctions[b].push((c, ConnectorEnd::Finish));
    }
    let faces = faces
        .iter()
        .enumerate()
        .map(|(f, w)| {
            let (c, s) = w[0];
            let start = if s == Sign::Plus { sk.cons[c].0 } else { sk.cons[c].1 };
            let offset = usize::from(sk.kinds[start] == VertexKind::Central);
            DualFace { traversals: (*w).clone(), offset, distinguished: 0, orientation: Orientation::Plus, class: f }
        })
        .collect();
    DualGraph {
        ell,
        weights: weights.to_vec(),
        closed: vec![false; sk.cons.len()],
        start_kinds: sk.cons.iter().map(|&(a, _)| sk.kinds[a]).collect(),
        faces,
        junctions,
    }
}

/// Connected (K,M)-bounded diagrams whose faces traverse each connector at
/// most once, one per geometric class.
pub fn enumerate_geometric(max_faces: usize, max_connectors: usize, ell: usize, budget: EnumerationBudget) -> Result<Vec<AbstractDiagram>, DiagramError> {
    if ell == 0 {
        return Err(DiagramError::ZeroLength);
    }
    let n = 2 * ell;
    let mut steps = Steps { used: 0, budget };
    let mut seen: HashMap<Vec<u32>, AbstractDiagram> = HashMap::new();
    let mut order: Vec<Vec<u32>> = Vec::new();
    let keep = |d: AbstractDiagram, seen: &mut HashMap<Vec<u32>, AbstractDiagram>, order: &mut Vec<Vec<u32>>| {
        let code = geometric_code(&d);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(code) {
            order.push(e.key().clone());
            e.insert(d);
        }
    };
    // faces glued along their whole boundary to one closed connector
    if max_connectors >= 1 {
        for k in 1..=max_faces {
            let g = DualGraph {
                ell,
                weights: vec![n],
                closed: vec![true],
                start_kinds: vec![VertexKind::Factor],
                faces: (0..k).map(|f| DualFace { traversals: vec![(0, Sign::Plus)], offset: 0, distinguished: 0, orientation: Orientation::Plus, class: f }).collect(),
                junctions: Vec::new(),
            };
            keep(decode_dual(&g)?, &mut seen, &mut order);
        }
    }
    for c in 1..=max_connectors {
        for sk in skeletons(c) {
            let walks = simple_walks(&sk);
            for k in 1..=max_faces {
                let mut pick = Vec::with_capacity(k);
                let mut result = Ok(());
                multisets(walks.len(), k, 0, &mut pick, &mut |idx| {
                    if result.is_err() {
                        return;
                    }
                    let faces: Vec<&Walk> = idx.iter().map(|&i| &walks[i]).collect();
                    let mut covered = vec![false; c];
                    for w in &faces {
                        for &(cc, _) in w.iter() {
                            covered[cc] = true;
                        }
                    }
                    if !covered.iter().all(|&x| x) {
                        return;
                    }
                    result = weightings(&sk, &faces, n, &mut steps, &mut |weights| {
                        let g = skeleton_dual(&sk, &faces, weights, ell);
                        let d = decode_dual(&g)?;
                        keep(d, &mut seen, &mut order);
                        if seen.len() > budget.max_results {
                            return Err(DiagramError::BudgetExceeded(format!("more than {} geometric classes", budget.max_results)));
                        }
                        Ok(())
                    });
                });
                result?;
            }
        }
    }
    Ok(order.into_iter().map(|c| seen.remove(&c).expect("kept")).collect())
}

/// Restricted growth strings: set partitions of `k` faces.
pub(crate) fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max {
            cur.push(c);
            go(k, cur, if c == max { max + 1 } else { max }, out);
            cur.pop();
        }
    }
    go(k, &mut cur, 0, &mut out);
    out
}

/// All reduced choices of distinguished corners, orientations and face
/// partition, one per isomorphism class, with the number of reduced choices
/// before identification.
pub fn expand_labels(geometric: &[AbstractDiagram], budget: EnumerationBudget) -> Result<(Vec<AbstractDiagram>, usize), DiagramError> {
    let mut steps = Steps { used: 0, budget };
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let mut reduced = 0;
    for g in geometric {
        let k = g.area();
        let ell = g.ell();
        let parts = set_partitions(k);
        let total_dist = ell.pow(k as u32);
        for code in 0..total_dist {
            let dist: Vec<usize> = (0..k).map(|f| (code / ell.pow(f as u32)) % ell).collect();
            for bits in 0..(1usize << k) {
                let ori: Vec<Orientation> = (0..k).map(|f| if bits >> f & 1 == 1 { Orientation::Minus } else { Orientation::Plus }).collect();
                for p in &parts {
                    steps.tick("labels")?;
                    let d = g.with_labels(&dist, &ori, p)?;
                    if !d.is_reduced() {
                        continue;
                    }
                    reduced += 1;
                    let c = full_code(&d);
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(c) {
                        e.insert(out.len());
                        out.push(d);
                        steps.check_len(out.len(), "labelled diagrams")?;
                    }
                }
            }
        }
    }
    Ok((out, reduced))
}

/// Reduced corner-labelled (K,M)-bounded diagrams up to isomorphism.
pub fn enumerate_bounded(max_faces: usize, max_connectors: usize, ell: usize, budget: EnumerationBudget) -> Result<EnumerationReport, DiagramError> {
    let geometric = enumerate_geometric(max_faces, max_connectors, ell, budget)?;
    let (labelled, reduced_labelings) = expand_labels(&geometric, budget)?;
    Ok(EnumerationReport { max_faces, max_connectors, ell, geometric, labelled, reduced_labelings })
}

/// Boundary cycle of a disc as `(vertex, edge)` steps.
fn boundary_cycle(d: &AbstractDiagram) -> Option<Vec<(usize, usize)>> {
    let deg = d.edge_degrees();
    let bedges: Vec<usize> = (0..d.edge_count()).filter(|&e| deg[e] == 1).collect();
    let first = *bedges.first()?;
    let mut at_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in &bedges {
        let (a, b) = d.edges()[e];
        at_vertex.entry(a).or_default().push(e);
        at_vertex.entry(b).or_default().push(e);
    }
    if at_vertex.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut out = Vec::with_capacity(bedges.len());
    let mut v = d.edges()[first].1;
    let mut e = first;
    loop {
        out.push((v, e));
        let w = d.other_end(e, v);
        let nexts = &at_vertex[&w];
        let ne = if nexts[0] == e { nexts[1] } else { nexts[0] };
        v = w;
        e = ne;
        if e == first {
            break;
        }
        if out.len() > bedges.len() {
            return None;
        }
    }
    (out.len() == bedges.len()).then_some(out)
}

/// Disc diagrams with at most `max_faces` faces, built by gluing each new
/// face along a proper arc of the boundary, one per geometric class.
pub fn disc_diagrams(max_faces: usize, ell: usize, budget: EnumerationBudget) -> Result<Vec<AbstractDiagram>, DiagramError> {
    if ell == 0 {
        return Err(DiagramError::ZeroLength);
    }
    let n = 2 * ell;
    let mut steps = Steps { used: 0, budget };
    let mut level = vec![super::polygon(ell)];
    let mut all = level.clone();
    for _ in 1..max_faces {
        let mut seen = HashMap::new();
        let mut next = Vec::new();
        for d in &level {
            let Some(bd) = boundary_cycle(d) else { continue };
            let blen = bd.len();
            let base: Vec<FaceCycle> = d.faces().iter().map(|f| FaceCycle { vertices: f.vertices.clone(), edges: f.edges.clone() }).collect();
            for i in 0..blen {
                for a in 1..n.min(blen) {
                    steps.tick("discs")?;
                    let mut vs: Vec<usize> = (0..=a).map(|t| bd[(i + t) % blen].0).collect();
                    let mut es: Vec<usize> = (0..a).map(|t| bd[(i + t) % blen].1).collect();
                    let (mut nv, mut ne) = (d.vertex_count(), d.edge_count());
                    while vs.len() < n {
                        vs.push(nv);
                        nv += 1;
                    }
                    while es.len() < n {
                        es.push(ne);
                        ne += 1;
                    }
                    if d.kinds()[vs[0]] == VertexKind::Central {
                        vs.rotate_left(1);
                        es.rotate_left(1);
                    }
                    let mut cycles = base.clone();
                    cycles.push(FaceCycle { vertices: vs, edges: es });
                    let Ok(nd) = AbstractDiagram::from_cycles(ell, &cycles) else { continue };
                    let code = geometric_code(&nd);
                    if seen.insert(code, ()).is_none() {
                        next.push(nd);
                        steps.check_len(next.len(), "discs")?;
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}
