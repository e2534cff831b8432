//! Diagrams by direct gluing of polygons, and isomorphism by search.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use freeprod::diagram::{full_code, geometric_code, AbstractDiagram, CanonicalCode, Orientation, VertexKind};
use petgraph::unionfind::UnionFind;

type Slot = (usize, usize);

/// Partitions of the edge slots of `k` faces into blocks holding at most
/// one slot per face.
fn edge_partitions(k: usize, n: usize, visit: &mut dyn FnMut(&[Vec<Slot>])) {
    fn go(s: usize, k: usize, n: usize, blocks: &mut Vec<Vec<Slot>>, visit: &mut dyn FnMut(&[Vec<Slot>])) {
        if s == k * n {
            visit(blocks);
            return;
        }
        let slot = (s / n, s % n);
        blocks.push(vec![slot]);
        go(s + 1, k, n, blocks, visit);
        blocks.pop();
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&(f, _)| f != slot.0) {
                blocks[b].push(slot);
                go(s + 1, k, n, blocks, visit);
                blocks[b].pop();
            }
        }
    }
    go(0, k, n, &mut Vec::new(), visit);
}

/// Number of connectors of a connected graph from its vertex degrees.
fn connector_count_from_degrees(deg: &[usize]) -> usize {
    let junction: usize = deg.iter().filter(|&&d| d != 2).sum();
    if junction == 0 {
        1
    } else {
        junction / 2
    }
}

/// Connected diagrams with at most `max_faces` faces and `max_connectors`
/// connectors in which no face meets an edge twice, keyed by geometric code.
///
/// Faces are glued along every partition of their edge slots into blocks
/// with at most one slot per face, followed by every kind-preserving merge
/// of the resulting vertices.
pub fn brute_force_geometric(max_faces: usize, max_connectors: usize, ell: usize) -> BTreeMap<CanonicalCode, AbstractDiagram> {
    let n = 2 * ell;
    let mut out = BTreeMap::new();
    for k in 1..=max_faces {
        edge_partitions(k, n, &mut |blocks| {
            let vid = |(f, p): Slot| f * n + p % n;
            let mut uf = UnionFind::<usize>::new(k * n);
            let mut edge_pairs = Vec::new();
            for b in blocks {
                for &s in &b[1..] {
                    let a = b[0];
                    edge_pairs.push((a, s));
                    if (a.1 + s.1) % 2 == 0 {
                        uf.union(vid(a), vid(s));
                        uf.union(vid((a.0, a.1 + 1)), vid((s.0, s.1 + 1)));
                    } else {
                        uf.union(vid(a), vid((s.0, s.1 + 1)));
                        uf.union(vid((a.0, a.1 + 1)), vid(s));
                    }
                }
            }
            // vertex classes with their degree in the glued skeleton
            let mut class_of = vec![0; k * n];
            let mut reps: Vec<Slot> = Vec::new();
            let mut root_class = HashMap::new();
            for s in 0..k * n {
                let r = uf.find(s);
                let next = reps.len();
                let c = *root_class.entry(r).or_insert(next);
                if c == reps.len() {
                    reps.push((s / n, s % n));
                }
                class_of[s] = c;
            }
            let nclass = reps.len();
            let mut deg = vec![0; nclass];
            for b in blocks {
                let (f, p) = b[0];
                deg[class_of[vid((f, p))]] += 1;
                deg[class_of[vid((f, p + 1))]] += 1;
            }
            let kind = |c: usize| if reps[c].1.is_multiple_of(2) { VertexKind::Factor } else { VertexKind::Central };
            let excess = |d: usize| if d >= 3 { d } else { 0 };
            if deg.iter().map(|&d| excess(d)).sum::<usize>() > 2 * max_connectors {
                return;
            }
            // merge classes into groups; junction degree only grows
            let mut group = vec![usize::MAX; nclass];
            let mut gdeg: Vec<usize> = Vec::new();
            let mut gkind: Vec<VertexKind> = Vec::new();
            #[allow(clippy::too_many_arguments)]
            fn merge(c: usize, nclass: usize, deg: &[usize], kind: &dyn Fn(usize) -> VertexKind, group: &mut Vec<usize>, gdeg: &mut Vec<usize>, gkind: &mut Vec<VertexKind>, bound: usize, visit: &mut dyn FnMut(&[usize], &[usize])) {
                let excess = |d: usize| if d >= 3 { d } else { 0 };
                let lower: usize = gdeg.iter().map(|&d| excess(d)).sum::<usize>() + deg[c..].iter().map(|&d| excess(d)).sum::<usize>();
                if lower > bound {
                    return;
                }
                if c == nclass {
                    visit(group, gdeg);
                    return;
                }
                for g in 0..gdeg.len() {
                    if gkind[g] == kind(c) {
                        group[c] = g;
                        gdeg[g] += deg[c];
                        merge(c + 1, nclass, deg, kind, group, gdeg, gkind, bound, visit);
                        gdeg[g] -= deg[c];
                    }
                }
                group[c] = gdeg.len();
                gdeg.push(deg[c]);
                gkind.push(kind(c));
                merge(c + 1, nclass, deg, kind, group, gdeg, gkind, bound, visit);
                gdeg.pop();
                gkind.pop();
                group[c] = usize::MAX;
            }
            merge(0, nclass, &deg, &kind, &mut group, &mut gdeg, &mut gkind, 2 * max_connectors, &mut |group, gdeg| {
                if connector_count_from_degrees(gdeg) > max_connectors {
                    return;
                }
                let mut first: HashMap<usize, usize> = HashMap::new();
                let mut vertex_pairs = Vec::new();
                for c in 0..nclass {
                    match first.get(&group[c]) {
                        Some(&c0) => vertex_pairs.push((reps[c0], reps[c])),
                        None => {
                            first.insert(group[c], c);
                        }
                    }
                }
                let Ok(d) = AbstractDiagram::from_slot_unions(ell, k, &edge_pairs, &vertex_pairs) else { return };
                if d.is_connected() {
                    out.entry(geometric_code(&d)).or_insert(d);
                }
            });
        });
    }
    out
}

/// Full codes of all reduced labellings of the given diagrams.
pub fn brute_force_labelled(diagrams: &[AbstractDiagram]) -> BTreeSet<CanonicalCode> {
    let mut out = BTreeSet::new();
    for d in diagrams {
        let k = d.area();
        let ell = d.ell();
        // every map from faces to class labels, normalised by the library
        let labelings = k.pow(k as u32);
        for dcode in 0..ell.pow(k as u32) {
            let dist: Vec<usize> = (0..k).map(|f| dcode / ell.pow(f as u32) % ell).collect();
            for bits in 0..1usize << k {
                let ori: Vec<Orientation> = (0..k).map(|f| if bits >> f & 1 == 1 { Orientation::Minus } else { Orientation::Plus }).collect();
                for lc in 0..labelings {
                    let cls: Vec<usize> = (0..k).map(|f| lc / k.pow(f as u32) % k).collect();
                    let l = d.with_labels(&dist, &ori, &cls).expect("labels in range");
                    if l.is_reduced() {
                        out.insert(full_code(&l));
                    }
                }
            }
        }
    }
    out
}

/// Whether two diagrams are equal as cell complexes, by matching faces with
/// readings one at a time and extending vertex and edge bijections.
pub fn geometrically_isomorphic(a: &AbstractDiagram, b: &AbstractDiagram) -> bool {
    if a.ell() != b.ell() || a.area() != b.area() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    struct Maps {
        v: Vec<Option<usize>>,
        vinv: Vec<Option<usize>>,
        e: Vec<Option<usize>>,
        einv: Vec<Option<usize>>,
    }
    fn go(a: &AbstractDiagram, b: &AbstractDiagram, f: usize, used: &mut Vec<bool>, m: &mut Maps) -> bool {
        if f == a.area() {
            return true;
        }
        let n = a.face_length();
        let fa = &a.faces()[f];
        for g in 0..b.area() {
            if used[g] {
                continue;
            }
            let fb = &b.faces()[g];
            for start in (0..n).step_by(2) {
                for forward in [true, false] {
                    let mut added_v = Vec::new();
                    let mut added_e = Vec::new();
                    let mut ok = true;
                    for t in 0..n {
                        let (vb, eb) = if forward { (fb.vertices[(start + t) % n], fb.edges[(start + t) % n]) } else { (fb.vertices[(start + n - t) % n], fb.edges[(start + 2 * n - t - 1) % n]) };
                        let (va, ea) = (fa.vertices[t], fa.edges[t]);
                        for (x, y, map, inv, added) in [(va, vb, &mut m.v, &mut m.vinv, &mut added_v), (ea, eb, &mut m.e, &mut m.einv, &mut added_e)] {
                            match (map[x], inv[y]) {
                                (Some(z), _) if z != y => ok = false,
                                (None, Some(_)) => ok = false,
                                (None, None) => {
                                    map[x] = Some(y);
                                    inv[y] = Some(x);
                                    added.push(x);
                                }
                                _ => {}
                            }
                        }
                        if !ok {
                            break;
                        }
                    }
                    if ok {
                        used[g] = true;
                        if go(a, b, f + 1, used, m) {
                            return true;
                        }
                        used[g] = false;
                    }
                    for x in added_v {
                        let y = m.v[x].take().expect("added");
                        m.vinv[y] = None;
                    }
                    for x in added_e {
                        let y = m.e[x].take().expect("added");
                        m.einv[y] = None;
                    }
                }
            }
        }
        false
    }
    let mut m = Maps { v: vec![None; a.vertex_count()], vinv: vec![None; b.vertex_count()], e: vec![None; a.edge_count()], einv: vec![None; b.edge_count()] };
    go(a, b, 0, &mut vec![false; b.area()], &mut m)
}
