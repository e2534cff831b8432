//! Decorations and the fulfillability search.

use std::collections::HashMap;

use crate::factor::{Element, FreeProduct, FreeProductWord, Syllable};

use super::{AbstractDiagram, DiagramError, Orientation, VertexKind};

/// Relator per class and rotation element per face corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    /// Index into the relator list, per class.
    pub relators: Vec<usize>,
    /// `rotations[f][k]`: element from the incoming to the outgoing edge at
    /// corner `k` of face `f`, in stored order.
    pub rotations: Vec<Vec<Syllable>>,
}

fn invert(product: &FreeProduct, s: &Syllable) -> Syllable {
    Syllable::new(s.factor, product.factor(s.factor).inverse(&s.element))
}

/// Corner rotations that make face `f` bear `word`.
fn face_rotations(d: &AbstractDiagram, product: &FreeProduct, f: usize, word: &FreeProductWord) -> Vec<Syllable> {
    let ell = d.ell();
    let face = &d.faces()[f];
    let mut rot = vec![Syllable::new(0, Element::Table(0)); ell];
    for (t, s) in word.syllables.iter().enumerate() {
        match face.orientation {
            Orientation::Plus => rot[(face.distinguished + t) % ell] = invert(product, s),
            Orientation::Minus => rot[(face.distinguished + ell - t % ell) % ell] = s.clone(),
        }
    }
    rot
}

impl Decoration {
    /// Decoration induced by assigning `relators[assign[c]]` to class `c`.
    pub fn from_assignment(d: &AbstractDiagram, product: &FreeProduct, relators: &[FreeProductWord], assign: &[usize]) -> Result<Self, DiagramError> {
        if assign.len() != d.class_count() {
            return Err(DiagramError::BadPartition { got: assign.len(), faces: d.class_count() });
        }
        let mut rotations = Vec::with_capacity(d.area());
        for f in 0..d.area() {
            let r = relators.get(assign[d.classes()[f]]).ok_or_else(|| DiagramError::OutOfRange(format!("relator {}", assign[d.classes()[f]])))?;
            if r.len() != d.ell() {
                return Err(DiagramError::WrongLength { face: f, len: 2 * r.len(), expected: d.face_length() });
            }
            rotations.push(face_rotations(d, product, f, r));
        }
        Ok(Decoration { relators: assign.to_vec(), rotations })
    }

    /// Inverses of the rotation elements read from the distinguished vertex
    /// along the orientation.
    pub fn read_face(&self, d: &AbstractDiagram, product: &FreeProduct, f: usize) -> FreeProductWord {
        let ell = d.ell();
        let face = &d.faces()[f];
        let syl = (0..ell)
            .map(|t| match face.orientation {
                Orientation::Plus => invert(product, &self.rotations[f][(face.distinguished + t) % ell]),
                // reading backwards reverses each triple, inverting its element
                Orientation::Minus => self.rotations[f][(face.distinguished + ell - t) % ell].clone(),
            })
            .collect();
        FreeProductWord::new(syl)
    }

    /// Every face spells the relator assigned to its class.
    pub fn is_sound(&self, d: &AbstractDiagram, product: &FreeProduct, relators: &[FreeProductWord]) -> bool {
        (0..d.area()).all(|f| self.relators.get(d.classes()[f]).and_then(|&i| relators.get(i)).is_some_and(|r| self.read_face(d, product, f) == *r))
    }

    /// Same-factor, pair-consistency and link-cycle conditions.
    pub fn satisfies_constraints(&self, d: &AbstractDiagram, product: &FreeProduct) -> bool {
        let local = LocalStructure::new(d);
        let assigned: Vec<Option<&[Syllable]>> = self.rotations.iter().map(|r| Some(r.as_slice())).collect();
        local.consistent(product, &assigned)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fulfillment {
    Fulfilled(Decoration),
    Unfulfillable,
}

impl Fulfillment {
    pub fn is_fulfilled(&self) -> bool {
        matches!(self, Fulfillment::Fulfilled(_))
    }
}

/// Limits on the fulfillability search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_faces: usize,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_faces: 12, max_nodes: 1 << 20 }
    }
}

struct Corner {
    face: usize,
    k: usize,
    e_in: usize,
    e_out: usize,
}

/// Corners at each factor vertex plus the link cycle where the link is a
/// single cycle.
struct LocalStructure {
    corners: Vec<Vec<Corner>>,
    /// Corners in cyclic order with the traversal direction through each.
    cycles: Vec<Option<Vec<(usize, bool)>>>,
}

impl LocalStructure {
    fn new(d: &AbstractDiagram) -> Self {
        let mut corners: Vec<Vec<Corner>> = (0..d.vertex_count()).map(|_| Vec::new()).collect();
        for (f, face) in d.faces().iter().enumerate() {
            for k in 0..d.ell() {
                let (e_in, e_out) = face.corner_edges(k);
                corners[face.vertices[2 * k]].push(Corner { face: f, k, e_in, e_out });
            }
        }
        let deg = d.vertex_degrees();
        let cycles = (0..d.vertex_count())
            .map(|v| if d.kinds()[v] == VertexKind::Factor { link_cycle(&corners[v], deg[v]) } else { None })
            .collect();
        LocalStructure { corners, cycles }
    }

    fn consistent(&self, product: &FreeProduct, assigned: &[Option<&[Syllable]>]) -> bool {
        for (v, cs) in self.corners.iter().enumerate() {
            let mut factor = None;
            let mut pairs: HashMap<(usize, usize), Element> = HashMap::new();
            let mut all = true;
            for c in cs {
                let Some(rot) = assigned[c.face] else {
                    all = false;
                    continue;
                };
                let s = &rot[c.k];
                if *factor.get_or_insert(s.factor) != s.factor {
                    return false;
                }
                let g = product.factor(s.factor);
                let (key, elem) = if c.e_in < c.e_out { ((c.e_in, c.e_out), s.element.clone()) } else { ((c.e_out, c.e_in), g.inverse(&s.element)) };
                match pairs.get(&key) {
                    Some(prev) if *prev != elem => return false,
                    Some(_) => {}
                    None => {
                        pairs.insert(key, elem);
                    }
                }
            }
            if all && cs.len() > 1 {
                if let (Some(cycle), Some(i)) = (&self.cycles[v], factor) {
                    let g = product.factor(i);
                    let mut acc = g.identity();
                    for &(ci, forward) in cycle {
                        let c = &cs[ci];
                        let s = &assigned[c.face].expect("all corners assigned")[c.k].element;
                        acc = g.multiply(&acc, &if forward { s.clone() } else { g.inverse(s) });
                    }
                    if !g.is_identity(&acc) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Cyclic corner order when the link at a vertex is one cycle through all
/// incident edges.
fn link_cycle(cs: &[Corner], degree: usize) -> Option<Vec<(usize, bool)>> {
    if cs.len() != degree || cs.is_empty() {
        return None;
    }
    let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in cs.iter().enumerate() {
        at.entry(c.e_in).or_default().push(i);
        at.entry(c.e_out).or_default().push(i);
    }
    if at.len() != degree || at.values().any(|l| l.len() != 2) {
        return None;
    }
    let mut order = Vec::with_capacity(cs.len());
    let mut used = vec![false; cs.len()];
    let mut edge = cs[0].e_in;
    let mut ci = 0;
    loop {
        used[ci] = true;
        let forward = cs[ci].e_in == edge;
        order.push((ci, forward));
        edge = if forward { cs[ci].e_out } else { cs[ci].e_in };
        let l = &at[&edge];
        let next = if l[0] == ci { l[1] } else { l[0] };
        if used[next] {
            break;
        }
        ci = next;
    }
    (order.len() == cs.len()).then_some(order)
}

/// Search injective assignments of relators to classes for a decoration
/// meeting the fulfillability conditions.
pub fn fulfill(d: &AbstractDiagram, product: &FreeProduct, relators: &[FreeProductWord], budget: SearchBudget) -> Result<Fulfillment, DiagramError> {
    if d.area() > budget.max_faces {
        return Err(DiagramError::SearchBudgetExceeded(format!("{} faces exceed the bound {}", d.area(), budget.max_faces)));
    }
    let classes = d.class_count();
    if classes > relators.len() || relators.iter().any(|r| r.len() != d.ell()) {
        return Ok(Fulfillment::Unfulfillable);
    }
    let local = LocalStructure::new(d);
    let faces_of: Vec<Vec<usize>> = (0..classes).map(|c| (0..d.area()).filter(|&f| d.classes()[f] == c).collect()).collect();
    let rot_table: Vec<Vec<Vec<Syllable>>> = (0..d.area()).map(|f| relators.iter().map(|r| face_rotations(d, product, f, r)).collect()).collect();
    let mut assign = vec![usize::MAX; classes];
    let mut used = vec![false; relators.len()];
    let mut nodes = 0u64;
    let found = search(0, &local, product, &faces_of, &rot_table, &mut assign, &mut used, &mut nodes, budget.max_nodes)?;
    if !found {
        return Ok(Fulfillment::Unfulfillable);
    }
    let dec = Decoration::from_assignment(d, product, relators, &assign)?;
    Ok(Fulfillment::Fulfilled(dec))
}

#[allow(clippy::too_many_arguments)]
fn search(
    c: usize,
    local: &LocalStructure,
    product: &FreeProduct,
    faces_of: &[Vec<usize>],
    rot_table: &[Vec<Vec<Syllable>>],
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<bool, DiagramError> {
    if c == faces_of.len() {
        return Ok(true);
    }
    for r in 0..used.len() {
        if used[r] {
            continue;
        }
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(DiagramError::SearchBudgetExceeded(format!("more than {max_nodes} search nodes")));
        }
        assign[c] = r;
        let assigned: Vec<Option<&[Syllable]>> = (0..rot_table.len())
            .map(|f| {
                let cls = faces_of.iter().position(|fs| fs.contains(&f)).expect("face has a class");
                (cls <= c).then(|| rot_table[f][assign[cls]].as_slice())
            })
            .collect();
        if local.consistent(product, &assigned) {
            used[r] = true;
            if search(c + 1, local, product, faces_of, rot_table, assign, used, nodes, max_nodes)? {
                return Ok(true);
            }
            used[r] = false;
        }
    }
    assign[c] = usize::MAX;
    Ok(false)
}
