//! Finite cube complexes and their vertex links.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{CellComplex, ComplexError, Polygon};

/// A cube given by its `2^k` vertices in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub vertices: Vec<usize>,
}

impl Cube {
    pub fn new(vertices: Vec<usize>) -> Self {
        Cube { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len().trailing_zeros() as usize
    }

    /// Vertex pairs of the edges in direction `t`.
    pub fn edges_in_direction(&self, t: usize) -> Vec<(usize, usize)> {
        (0..self.vertices.len()).filter(|j| j >> t & 1 == 0).map(|j| (self.vertices[j], self.vertices[j | 1 << t])).collect()
    }

    /// All edges as vertex pairs.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.dim()).flat_map(|t| self.edges_in_direction(t)).collect()
    }

    fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }
}

/// A finite cube complex stored by its edges and maximal cubes of
/// dimension at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeComplex {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    cubes: Vec<Cube>,
}

impl CubeComplex {
    /// Complex generated by the given cubes of any dimension; edges and
    /// faces are implied, and only maximal cubes of dimension two or more
    /// are kept.
    pub fn new(vertex_count: usize, cells: Vec<Cube>) -> Result<Self, ComplexError> {
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (c, cube) in cells.iter().enumerate() {
            let n = cube.vertices.len();
            let distinct: BTreeSet<usize> = cube.vertices.iter().copied().collect();
            if n < 2 || !n.is_power_of_two() || distinct.len() != n || cube.vertices.iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::BadCube(c));
            }
            for (a, b) in cube.edge_pairs() {
                if seen.insert((a.min(b), a.max(b))) {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        let sets: Vec<BTreeSet<usize>> = cells.iter().map(Cube::vertex_set).collect();
        let mut cubes: Vec<Cube> = Vec::new();
        for (c, cube) in cells.iter().enumerate() {
            if cube.dim() < 2 {
                continue;
            }
            let is_face = sets.iter().enumerate().any(|(o, s)| o != c && s.len() > sets[c].len() && sets[c].is_subset(s));
            let duplicate = cubes.iter().any(|k| k.vertex_set() == sets[c]);
            if !is_face && !duplicate {
                cubes.push(cube.clone());
            }
        }
        Ok(CubeComplex { vertex_count, edges, cubes })
    }

    pub fn point() -> Self {
        CubeComplex { vertex_count: 1, edges: Vec::new(), cubes: Vec::new() }
    }

    /// A path with `n` edges on vertices `0..=n`.
    pub fn line(n: usize) -> Self {
        CubeComplex { vertex_count: n + 1, edges: (0..n).map(|i| (i, i + 1)).collect(), cubes: Vec::new() }
    }

    /// The standard `k`-cube on vertices `0..2^k`.
    pub fn cube(k: usize) -> Self {
        if k == 0 {
            return Self::point();
        }
        Self::new(1 << k, vec![Cube::new((0..1 << k).collect())]).expect("standard cube")
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(Cube::dim).max().unwrap_or(if self.edges.is_empty() { 0 } else { 1 })
    }

    /// Number of cubes of each dimension, faces included.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut faces: Vec<HashSet<BTreeSet<usize>>> = vec![HashSet::new(); self.dimension() + 1];
        for v in 0..self.vertex_count {
            faces[0].insert(BTreeSet::from([v]));
        }
        for &(a, b) in &self.edges {
            faces[1].insert(BTreeSet::from([a, b]));
        }
        for c in &self.cubes {
            let k = c.dim();
            // a face fixes some coordinates and frees the rest
            for free in 0usize..1 << k {
                let fixed = !free & ((1 << k) - 1);
                let mut sub = fixed;
                loop {
                    let set: BTreeSet<usize> = (0..1usize << k).filter(|j| j & fixed == sub).map(|j| c.vertices[j]).collect();
                    faces[free.count_ones() as usize].insert(set);
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & fixed;
                }
            }
        }
        faces.iter().map(HashSet::len).collect()
    }

    /// Whether every vertex link is a flag simplicial complex.
    pub fn link_flag_check(&self) -> bool {
        let lookup = self.edge_lookup();
        let mut simplices: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); self.vertex_count];
        for c in &self.cubes {
            for (j, &v) in c.vertices.iter().enumerate() {
                let s: BTreeSet<usize> = (0..c.dim()).map(|t| {
                    let w = c.vertices[j ^ 1 << t];
                    lookup[&(v.min(w), v.max(w))]
                }).collect();
                simplices[v].push(s);
            }
        }
        let adj = self.adjacency();
        (0..self.vertex_count).all(|v| {
            let sims = &simplices[v];
            // distinct cubes at v must give distinct simplices
            let distinct: HashSet<&BTreeSet<usize>> = sims.iter().collect();
            if distinct.len() != sims.len() || sims.iter().any(|s| sims.iter().any(|t| s != t && s.is_subset(t))) {
                return false;
            }
            let verts: Vec<usize> = adj[v].iter().map(|&(_, e)| e).collect();
            let linked = |a: usize, b: usize| sims.iter().any(|s| s.contains(&a) && s.contains(&b));
            let mut cliques = Vec::new();
            maximal_cliques(&linked, &mut Vec::new(), verts.clone(), Vec::new(), &mut cliques);
            cliques.iter().all(|q| q.len() <= 1 || sims.iter().any(|s| q.iter().all(|x| s.contains(x))))
        })
    }
}

/// Bron–Kerbosch without pivoting.
fn maximal_cliques(linked: &dyn Fn(usize, usize) -> bool, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let mut p = p;
    let mut x = x;
    while let Some(v) = p.pop() {
        let np = p.iter().copied().filter(|&w| w != v && linked(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| w != v && linked(v, w)).collect();
        r.push(v);
        maximal_cliques(linked, r, np, nx, out);
        r.pop();
        x.push(v);
    }
}

impl CellComplex for CubeComplex {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn edge_ends(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn polygons(&self) -> &[Polygon] {
        &[]
    }

    fn cubes(&self) -> &[Cube] {
        &self.cubes
    }
}

/// Cubical subdivision: each `k`-cube becomes `2^k` cubes through the
/// centres of its faces. New vertices are numbered from `next` and keyed
/// by the vertex set of the face they centre.
pub(crate) fn subdivide_cube(cube: &Cube, centres: &mut HashMap<Vec<usize>, usize>, next: &mut usize) -> Vec<Cube> {
    let k = cube.dim();
    let pow3 = 3usize.pow(k as u32);
    // coordinate x in {0,1,2}^k: 0 and 2 fix the coordinate, 1 frees it
    let mut point = |x: usize| -> usize {
        let digits: Vec<usize> = (0..k).map(|t| x / 3usize.pow(t as u32) % 3).collect();
        let mut face: Vec<usize> = (0..1usize << k).filter(|j| (0..k).all(|t| digits[t] == 1 || (j >> t & 1) == digits[t] / 2)).map(|j| cube.vertices[j]).collect();
        if face.len() == 1 {
            return face[0];
        }
        face.sort_unstable();
        *centres.entry(face).or_insert_with(|| {
            *next += 1;
            *next - 1
        })
    };
    let ids: Vec<usize> = (0..pow3).map(&mut point).collect();
    let mut out = Vec::with_capacity(1 << k);
    for base in 0usize..1 << k {
        let verts = (0usize..1 << k)
            .map(|j| {
                let x: usize = (0..k).map(|t| ((base >> t & 1) + (j >> t & 1)) * 3usize.pow(t as u32)).sum();
                ids[x]
            })
            .collect();
        out.push(Cube::new(verts));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cube_f_vectors() {
        for k in 0..=4 {
            let c = CubeComplex::cube(k);
            let f: Vec<usize> = (0..=k).map(|j| binom(k, j) << (k - j)).collect();
            assert_eq!(c.f_vector(), f, "k = {k}");
            assert!(c.link_flag_check());
        }
    }

    #[test]
    fn faces_are_not_stored() {
        let c = CubeComplex::new(4, vec![Cube::new(vec![0, 1, 2, 3]), Cube::new(vec![0, 1])]).unwrap();
        assert_eq!(c.cubes().len(), 1);
        assert!(CubeComplex::new(3, vec![Cube::new(vec![0, 1, 2])]).is_err());
    }

    #[test]
    fn hollow_corner_is_not_flag() {
        // v = 0 with neighbours a, b, c and three squares, no 3-cube
        let (v, a, b, c, ab, bc, ac) = (0, 1, 2, 3, 4, 5, 6);
        let sq = |x, y, xy| Cube::new(vec![v, x, y, xy]);
        let hollow = CubeComplex::new(7, vec![sq(a, b, ab), sq(b, c, bc), sq(a, c, ac)]).unwrap();
        assert!(!hollow.link_flag_check());
        let tree = CubeComplex::new(4, vec![Cube::new(vec![0, 1]), Cube::new(vec![0, 2]), Cube::new(vec![0, 3])]).unwrap();
        assert!(tree.link_flag_check());
    }

    #[test]
    fn subdivided_square() {
        let sq = Cube::new(vec![0, 1, 2, 3]);
        let mut centres = HashMap::new();
        let mut next = 4;
        let parts = subdivide_cube(&sq, &mut centres, &mut next);
        assert_eq!((parts.len(), next), (4, 9));
        let c = CubeComplex::new(9, parts).unwrap();
        assert_eq!(c.f_vector(), vec![9, 12, 4]);
    }
}
