//! Mixed polygonal-cubical complexes: factor vertices blown up to fibers.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::factor::{Element, FactorGroup, FreeProduct};

use super::cube::subdivide_cube;
use super::subdivide::subdivide;
use super::{CellComplex, ComplexError, Cube, CubeComplex, Polygon, PolygonalComplex, VertexType};

/// Rule picking the path `α_g` among combinatorial geodesics from the
/// basepoint to `g·basepoint`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeodesicChoice {
    /// Smallest next vertex id at every step.
    #[default]
    LexMin,
    /// Largest next vertex id at every step.
    LexMax,
}

impl GeodesicChoice {
    pub fn tag(self) -> &'static str {
        match self {
            GeodesicChoice::LexMin => "lexmin",
            GeodesicChoice::LexMax => "lexmax",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "lexmin" => Some(GeodesicChoice::LexMin),
            "lexmax" => Some(GeodesicChoice::LexMax),
            _ => None,
        }
    }
}

/// A finite cube complex with a partial action of one factor group given
/// by the vertex maps of its named generators. Maps are partial where the
/// fiber is a truncation of an infinite complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub complex: CubeComplex,
    pub basepoint: usize,
    maps: Vec<Vec<Option<usize>>>,
    inverse_maps: Vec<Vec<Option<usize>>>,
    /// Radius of the truncation, when the fiber is cut from an infinite one.
    pub truncation: Option<usize>,
}

impl Fiber {
    pub fn new(complex: CubeComplex, basepoint: usize, maps: Vec<Vec<Option<usize>>>) -> Result<Self, ComplexError> {
        let n = complex.vertex_count();
        let bad = |reason: &str| ComplexError::BadFiber { fiber: 0, reason: reason.to_string() };
        if basepoint >= n {
            return Err(bad("basepoint out of range"));
        }
        let mut inverse_maps = Vec::with_capacity(maps.len());
        let lookup = complex.edge_lookup();
        for m in &maps {
            if m.len() != n {
                return Err(bad("generator map has the wrong length"));
            }
            let mut inv = vec![None; n];
            for (x, y) in m.iter().enumerate() {
                if let Some(y) = *y {
                    if y >= n || inv[y].is_some() {
                        return Err(bad("generator map is not injective"));
                    }
                    inv[y] = Some(x);
                }
            }
            for &(a, b) in complex.edge_ends() {
                if let (Some(x), Some(y)) = (m[a], m[b]) {
                    if !lookup.contains_key(&(x.min(y), x.max(y))) {
                        return Err(bad("generator map does not preserve edges"));
                    }
                }
            }
            inverse_maps.push(inv);
        }
        Ok(Fiber { complex, basepoint, maps, inverse_maps, truncation: None })
    }

    /// A single point with trivial action.
    pub fn point(generators: usize) -> Self {
        Fiber::new(CubeComplex::point(), 0, vec![vec![Some(0)]; generators]).expect("point fiber")
    }

    /// The line `[−r, r]` with one generator translating by one. Vertex `i`
    /// is the integer `i − r`; the basepoint is 0.
    pub fn line(radius: usize) -> Self {
        let n = 2 * radius + 1;
        let map = (0..n).map(|i| if i + 1 < n { Some(i + 1) } else { None }).collect();
        let mut f = Fiber::new(CubeComplex::line(2 * radius), radius, vec![map]).expect("line fiber");
        f.truncation = Some(radius);
        f
    }

    /// Image of vertex `x` under `g`, if it stays inside the fiber.
    pub fn act(&self, group: &FactorGroup, g: &Element, x: usize) -> Option<usize> {
        group.word_for(g).iter().try_fold(x, |y, &(gen, s)| if s > 0 { self.maps.get(gen)?[y] } else { self.inverse_maps.get(gen)?[y] })
    }

    /// Whether `g` swaps the endpoints of some edge.
    pub fn inverts_edge(&self, group: &FactorGroup, g: &Element) -> bool {
        self.complex.edge_ends().iter().any(|&(a, b)| self.act(group, g, a) == Some(b) && self.act(group, g, b) == Some(a))
    }

    /// A geodesic vertex path chosen by `choice`.
    pub fn geodesic(&self, from: usize, to: usize, choice: GeodesicChoice) -> Option<Vec<usize>> {
        let adj = self.complex.adjacency();
        let dist = super::bfs(&adj, to);
        let mut d = dist[from]?;
        let mut path = vec![from];
        let mut cur = from;
        while d > 0 {
            let next = adj[cur].iter().map(|&(w, _)| w).filter(|&w| dist[w] == Some(d - 1));
            cur = match choice {
                GeodesicChoice::LexMin => next.min(),
                GeodesicChoice::LexMax => next.max(),
            }
            .expect("distance decreases along some edge");
            path.push(cur);
            d -= 1;
        }
        Some(path)
    }

    /// Distance from the basepoint to its image under `g`.
    pub fn translation_length(&self, group: &FactorGroup, g: &Element) -> Option<usize> {
        let y = self.act(group, g, self.basepoint)?;
        self.complex.distances_from(self.basepoint)[y]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Polygonal,
    Cubical,
}

/// Polygonal and cubical cells with the projection to the base complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    pub(super) vertex_count: usize,
    pub(super) edges: Vec<(usize, usize)>,
    pub(super) kinds: Vec<EdgeKind>,
    pub(super) polygons: Vec<Polygon>,
    pub(super) cubes: Vec<Cube>,
    pub(super) vertex_projection: Vec<usize>,
    pub(super) edge_projection: Vec<Option<usize>>,
    pub(super) base: PolygonalComplex,
    pub(super) choice: GeodesicChoice,
    pub(super) subdivision: usize,
    pub(super) tau: usize,
}

/// Position of each edge at a factor vertex, propagated through the
/// corners; each link component starts at the identity on its smallest
/// edge.
fn corner_positions(x: &PolygonalComplex, product: &FreeProduct) -> Result<Vec<HashMap<usize, Element>>, ComplexError> {
    let n = x.vertex_count();
    // corners[v]: (incoming edge, outgoing edge, rotation)
    let mut corners: Vec<Vec<(usize, usize, Element)>> = vec![Vec::new(); n];
    for (p, poly) in x.polygons().iter().enumerate() {
        let rot = poly.rotation.as_ref().ok_or(ComplexError::Undecorated(p))?;
        let len = poly.len();
        let mut j = 0;
        for i in 0..len {
            if x.types()[poly.vertices[i]].is_factor() {
                corners[poly.vertices[i]].push((poly.edges[(i + len - 1) % len], poly.edges[i], rot[j].element.clone()));
                j += 1;
            }
        }
    }
    let adj = x.adjacency();
    let mut out = vec![HashMap::new(); n];
    for v in 0..n {
        let VertexType::Factor(f) = x.types()[v] else { continue };
        let group = product.factor(f);
        let mut at: Vec<usize> = adj[v].iter().map(|&(_, e)| e).collect();
        at.sort_unstable();
        let pos: &mut HashMap<usize, Element> = &mut out[v];
        for &start in &at {
            if pos.contains_key(&start) {
                continue;
            }
            pos.insert(start, group.identity());
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                let pe = pos[&e].clone();
                for (a, b, s) in &corners[v] {
                    let step = if *a == e {
                        Some((*b, group.multiply(&pe, s)))
                    } else if *b == e {
                        Some((*a, group.multiply(&pe, &group.inverse(s))))
                    } else {
                        None
                    };
                    if let Some((t, val)) = step {
                        match pos.get(&t) {
                            Some(old) if *old != val => return Err(ComplexError::InconsistentRotations { vertex: v }),
                            Some(_) => {}
                            None => {
                                pos.insert(t, val);
                                queue.push_back(t);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Replace each factor vertex of `x` by a copy of its factor's fiber,
/// attach each central vertex at its position in the fiber and route
/// every polygon through the paths `t·α_s`, where `t` is the position of
/// the incoming edge and `s` the rotation element of the corner.
///
/// Polygonal edges keep the ids of their base edges.
pub fn build_mixed(x: &PolygonalComplex, product: &FreeProduct, fibers: &[Fiber], choice: GeodesicChoice) -> Result<MixedComplex, ComplexError> {
    if fibers.len() != product.rank() {
        return Err(ComplexError::OutOfRange(format!("{} fibers for {} factors", fibers.len(), product.rank())));
    }
    let positions = corner_positions(x, product)?;
    for (f, fiber) in fibers.iter().enumerate() {
        let group = product.factor(f);
        let gens: Vec<Element> = group.base_generators().to_vec();
        let used = positions.iter().enumerate().filter(|(v, _)| x.types()[*v] == VertexType::Factor(f)).flat_map(|(_, p)| p.values().cloned());
        for g in gens.into_iter().chain(used) {
            if fiber.inverts_edge(group, &g) {
                return Err(ComplexError::Inversion { fiber: f, element: g.to_string() });
            }
        }
    }
    let n = x.vertex_count();
    let mut offset = vec![0; n];
    let mut vertex_projection = Vec::new();
    for v in 0..n {
        offset[v] = vertex_projection.len();
        let size = match x.types()[v] {
            VertexType::Factor(f) => fibers[f].complex.vertex_count(),
            _ => 1,
        };
        vertex_projection.extend(std::iter::repeat_n(v, size));
    }
    let point_of = |v: usize, e: usize| -> Result<usize, ComplexError> {
        match x.types()[v] {
            VertexType::Factor(f) => {
                let fiber = &fibers[f];
                let t = positions[v].get(&e).cloned().unwrap_or_else(|| product.factor(f).identity());
                let y = fiber.act(product.factor(f), &t, fiber.basepoint).ok_or_else(|| ComplexError::BadFiber { fiber: f, reason: format!("position {t} leaves the truncated fiber") })?;
                Ok(offset[v] + y)
            }
            _ => Ok(offset[v]),
        }
    };
    let mut edges = Vec::new();
    let mut kinds = Vec::new();
    let mut edge_projection = Vec::new();
    for (e, &(a, b)) in x.edge_ends().iter().enumerate() {
        edges.push((point_of(a, e)?, point_of(b, e)?));
        kinds.push(EdgeKind::Polygonal);
        edge_projection.push(Some(e));
    }
    let mut cubical: HashMap<(usize, usize), usize> = HashMap::new();
    let mut cubes = Vec::new();
    for v in 0..n {
        let VertexType::Factor(f) = x.types()[v] else { continue };
        let fc = &fibers[f].complex;
        for &(a, b) in fc.edge_ends() {
            let (a, b) = (offset[v] + a, offset[v] + b);
            cubical.insert((a.min(b), a.max(b)), edges.len());
            edges.push((a, b));
            kinds.push(EdgeKind::Cubical);
            edge_projection.push(None);
        }
        cubes.extend(fc.cubes().iter().map(|c| Cube::new(c.vertices.iter().map(|&y| offset[v] + y).collect())));
    }
    let mut tau = 0;
    let mut polygons = Vec::with_capacity(x.polygon_count());
    for poly in x.polygons() {
        let len = poly.len();
        let rot = poly.rotation.as_ref().expect("checked decorated");
        let mut vertices = Vec::new();
        let mut pedges = Vec::new();
        let mut j = 0;
        for i in 0..len {
            let v = poly.vertices[i];
            if let VertexType::Factor(f) = x.types()[v] {
                let (fiber, group) = (&fibers[f], product.factor(f));
                let e_in = poly.edges[(i + len - 1) % len];
                let t = positions[v].get(&e_in).cloned().unwrap_or_else(|| group.identity());
                let s = &rot[j].element;
                j += 1;
                let target = fiber.act(group, s, fiber.basepoint).ok_or_else(|| ComplexError::BadFiber { fiber: f, reason: format!("element {s} leaves the truncated fiber") })?;
                let alpha = fiber.geodesic(fiber.basepoint, target, choice).ok_or_else(|| ComplexError::BadFiber { fiber: f, reason: "fiber is disconnected".into() })?;
                tau = tau.max(alpha.len() - 1);
                let path: Option<Vec<usize>> = alpha.iter().map(|&y| fiber.act(group, &t, y).map(|z| offset[v] + z)).collect();
                let path = path.ok_or_else(|| ComplexError::BadFiber { fiber: f, reason: "translated path leaves the truncated fiber".into() })?;
                for w in path.windows(2) {
                    vertices.push(w[0]);
                    pedges.push(cubical[&(w[0].min(w[1]), w[0].max(w[1]))]);
                }
                vertices.push(*path.last().expect("nonempty path"));
            } else {
                vertices.push(offset[v]);
            }
            pedges.push(poly.edges[i]);
        }
        polygons.push(Polygon::new(vertices, pedges));
    }
    let m = MixedComplex { vertex_count: vertex_projection.len(), edges, kinds, polygons, cubes, vertex_projection, edge_projection, base: x.clone(), choice, subdivision: 1, tau };
    for (p, poly) in m.polygons.iter().enumerate() {
        super::check_cycle(&m.edges, m.vertex_count, p, poly)?;
    }
    Ok(m)
}

/// Lengths of the boundary segments of every polygon.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegmentAudit {
    /// Distinct lengths of the polygonal segments between fiber visits.
    pub polygonal: BTreeSet<usize>,
    /// Longest cubical segment.
    pub max_cubical: usize,
}

impl MixedComplex {
    pub fn base(&self) -> &PolygonalComplex {
        &self.base
    }

    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    pub fn vertex_projection(&self) -> &[usize] {
        &self.vertex_projection
    }

    pub fn edge_projection(&self) -> &[Option<usize>] {
        &self.edge_projection
    }

    pub fn geodesic_choice(&self) -> GeodesicChoice {
        self.choice
    }

    /// Subdivision factor `k`; 1 before balancing.
    pub fn subdivision(&self) -> usize {
        self.subdivision
    }

    /// Longest path `α_s` used before balancing.
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Polygon `i` projects onto base polygon `i`.
    pub fn polygon_projection(&self, i: usize) -> usize {
        i
    }

    /// Whether the vertex lies in a fiber, i.e. projects to a factor vertex.
    pub fn in_fiber(&self, v: usize) -> bool {
        self.base.types()[self.vertex_projection[v]].is_factor()
    }

    /// Subdivide polygonal edges into `2k` edges and cubes cubically, so
    /// cubical edges become paths of two. Projects onto `subdivide(base, k)`.
    pub fn balanced(&self, k: usize) -> Result<MixedComplex, ComplexError> {
        if k == 0 {
            return Err(ComplexError::ZeroSubdivision);
        }
        if self.subdivision != 1 {
            return Err(ComplexError::OutOfRange("complex is already balanced".into()));
        }
        let base = subdivide(&self.base, k)?;
        let parts = 2 * k;
        let nv = self.vertex_count;
        let nb = self.base.vertex_count();
        let npoly = self.base.edge_count();
        let mut vertex_projection = self.vertex_projection.clone();
        let mut edges = Vec::new();
        let mut kinds = Vec::new();
        let mut edge_projection = Vec::new();
        for e in 0..npoly {
            let (a, b) = self.edges[e];
            let (ba, _) = self.base.edge_ends()[e];
            let forward = self.vertex_projection[a] == ba;
            for j in 0..parts - 1 {
                vertex_projection.push(nb + e * (parts - 1) + if forward { j } else { parts - 2 - j });
            }
            let inner = |j: usize| nv + e * (parts - 1) + j;
            for j in 0..parts {
                let from = if j == 0 { a } else { inner(j - 1) };
                let to = if j == parts - 1 { b } else { inner(j) };
                edges.push((from, to));
                kinds.push(EdgeKind::Polygonal);
                edge_projection.push(Some(parts * e + if forward { j } else { parts - 1 - j }));
            }
        }
        let mut next = nv + npoly * (parts - 1);
        let mut centres: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut cells: Vec<Cube> = Vec::new();
        for e in npoly..self.edges.len() {
            let (a, b) = self.edges[e];
            cells.extend(subdivide_cube(&Cube::new(vec![a, b]), &mut centres, &mut next));
        }
        let mut cubes = Vec::new();
        for c in &self.cubes {
            let parts = subdivide_cube(c, &mut centres, &mut next);
            cubes.extend(parts.iter().cloned());
            cells.extend(parts);
        }
        vertex_projection.resize(next, 0);
        for (face, &id) in &centres {
            vertex_projection[id] = self.vertex_projection[face[0]];
        }
        let mut cubical: HashMap<(usize, usize), usize> = HashMap::new();
        for c in &cells {
            for (a, b) in c.edge_pairs() {
                let key = (a.min(b), a.max(b));
                if let std::collections::hash_map::Entry::Vacant(slot) = cubical.entry(key) {
                    slot.insert(edges.len());
                    edges.push(key);
                    kinds.push(EdgeKind::Cubical);
                    edge_projection.push(None);
                }
            }
        }
        let polygons = self
            .polygons
            .iter()
            .map(|p| {
                let len = p.len();
                let mut vertices = Vec::new();
                let mut pedges = Vec::new();
                for i in 0..len {
                    let (u, w, e) = (p.vertices[i], p.vertices[(i + 1) % len], p.edges[i]);
                    vertices.push(u);
                    if e < npoly {
                        let forward = self.edges[e].0 == u;
                        for j in 0..parts {
                            let t = if forward { j } else { parts - 1 - j };
                            pedges.push(parts * e + t);
                            if j + 1 < parts {
                                vertices.push(nv + e * (parts - 1) + if forward { j } else { parts - 2 - j });
                            }
                        }
                    } else {
                        let mid = centres[&vec![u.min(w), u.max(w)]];
                        vertices.push(mid);
                        pedges.push(cubical[&(u.min(mid), u.max(mid))]);
                        pedges.push(cubical[&(w.min(mid), w.max(mid))]);
                    }
                }
                Polygon::new(vertices, pedges)
            })
            .collect();
        Ok(MixedComplex { vertex_count: next, edges, kinds, polygons, cubes, vertex_projection, edge_projection, base, choice: self.choice, subdivision: k, tau: self.tau })
    }

    /// Segment lengths along polygon boundaries, split at fiber visits.
    pub fn segment_audit(&self) -> SegmentAudit {
        let mut out = SegmentAudit::default();
        for p in &self.polygons {
            let n = p.len();
            let fib: Vec<bool> = p.vertices.iter().map(|&v| self.in_fiber(v)).collect();
            let Some(start) = (0..n).find(|&i| fib[i] && !fib[(i + n - 1) % n]) else { continue };
            // walk once around from the start of a fiber run
            let mut i = start;
            let mut steps = 0;
            while steps < n {
                let mut run = 0;
                while fib[(i + 1) % n] && self.vertex_projection[p.vertices[(i + 1) % n]] == self.vertex_projection[p.vertices[i]] && run < n {
                    i = (i + 1) % n;
                    run += 1;
                }
                out.max_cubical = out.max_cubical.max(run);
                let mut poly = 1;
                i = (i + 1) % n;
                while !fib[i] {
                    i = (i + 1) % n;
                    poly += 1;
                }
                out.polygonal.insert(poly);
                steps += run + poly;
            }
        }
        out
    }

    /// Every base edge has exactly one preimage, which is polygonal, and
    /// cubical edges lie over single vertices.
    pub fn projection_is_faithful(&self) -> bool {
        let mut count = vec![0usize; self.base.edge_count()];
        for (e, proj) in self.edge_projection.iter().enumerate() {
            let (a, b) = self.edges[e];
            let (pa, pb) = (self.vertex_projection[a], self.vertex_projection[b]);
            match (self.kinds[e], proj) {
                (EdgeKind::Polygonal, Some(be)) => {
                    let (x, y) = self.base.edge_ends()[*be];
                    if !((pa == x && pb == y) || (pa == y && pb == x)) {
                        return false;
                    }
                    count[*be] += 1;
                }
                (EdgeKind::Cubical, None) if pa == pb => {}
                _ => return false,
            }
        }
        count.iter().all(|&c| c == 1)
    }
}

impl CellComplex for MixedComplex {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn edge_ends(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    fn cubes(&self) -> &[Cube] {
        &self.cubes
    }
}
