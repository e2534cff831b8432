//! Walls with halfspaces, finite wallspaces and separation counts.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::complex::CellComplex;
use crate::scalar::Scalar;

use super::{trace_all, HyperCell, Hypergraph, WallsError};

/// Cells whose interior meets a hypergraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Carrier {
    pub edges: Vec<usize>,
    pub polygons: Vec<usize>,
    pub cubes: Vec<usize>,
}

/// A two-sided hypergraph with its positive halfspace of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub hypergraph: Hypergraph,
    pub positive: FixedBitSet,
    pub carrier: Carrier,
}

impl Wall {
    pub fn new<X: CellComplex + ?Sized>(x: &X, hypergraph: Hypergraph) -> Result<Self, WallsError> {
        let positive = hypergraph.halfspace(x)?;
        let mut carrier = Carrier { edges: hypergraph.class.clone(), ..Carrier::default() };
        for c in &hypergraph.cells {
            match c {
                HyperCell::Diameter { polygon, .. } => carrier.polygons.push(*polygon),
                HyperCell::Midcube { cube, .. } => carrier.cubes.push(*cube),
            }
        }
        Ok(Wall { hypergraph, positive, carrier })
    }

    pub fn separates(&self, p: usize, q: usize) -> bool {
        self.positive[p] != self.positive[q]
    }
}

/// Walls of a complex together with the hypergraphs that failed to be
/// walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallFamily {
    pub walls: Vec<Wall>,
    /// Hypergraphs whose immersion is not injective.
    pub not_embedded: Vec<Hypergraph>,
    /// Hypergraphs whose complement does not have two components.
    pub not_two_sided: Vec<Hypergraph>,
}

impl WallFamily {
    pub fn wallspace(&self, points: usize) -> Wallspace {
        Wallspace::new(points, self.walls.iter().map(|w| w.positive.clone()).collect()).expect("walls share the vertex set")
    }
}

/// Trace every hypergraph and keep the two-sided ones as walls.
pub fn walls_of<X: CellComplex + ?Sized>(x: &X) -> Result<WallFamily, WallsError> {
    let mut out = WallFamily { walls: Vec::new(), not_embedded: Vec::new(), not_two_sided: Vec::new() };
    for h in trace_all(x)? {
        match Wall::new(x, h.clone()) {
            Ok(w) => out.walls.push(w),
            Err(WallsError::NotEmbedded) => out.not_embedded.push(h),
            Err(WallsError::WallNotTwoSided { .. }) => out.not_two_sided.push(h),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// A finite set of points with walls given by positive halfspaces; the
/// negative halfspace is the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wallspace {
    points: usize,
    positive: Vec<FixedBitSet>,
}

impl Wallspace {
    pub fn new(points: usize, positive: Vec<FixedBitSet>) -> Result<Self, WallsError> {
        if positive.iter().any(|h| h.len() != points) {
            return Err(WallsError::BadWallspace("halfspace length differs from the point count".into()));
        }
        Ok(Wallspace { points, positive })
    }

    /// Walls from explicit side labels, `true` for the positive side.
    pub fn from_sides(points: usize, sides: &[Vec<bool>]) -> Result<Self, WallsError> {
        let positive = sides
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(points);
                for (i, &x) in s.iter().enumerate().take(points) {
                    b.set(i, x);
                }
                if s.len() == points {
                    Ok(b)
                } else {
                    Err(WallsError::BadWallspace("side label count differs from the point count".into()))
                }
            })
            .collect::<Result<_, _>>()?;
        Wallspace::new(points, positive)
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn wall_count(&self) -> usize {
        self.positive.len()
    }

    /// Halfspace of wall `w` on side `side` (`true` is positive).
    pub fn halfspace(&self, w: usize, side: bool) -> FixedBitSet {
        let mut h = self.positive[w].clone();
        if !side {
            h.toggle_range(..);
        }
        h
    }

    /// All four halfspace intersections are nonempty.
    pub fn crosses(&self, a: usize, b: usize) -> bool {
        [false, true].iter().all(|&s| [false, true].iter().all(|&t| !self.halfspace(a, s).is_disjoint(&self.halfspace(b, t))))
    }

    pub fn separates(&self, w: usize, p: usize, q: usize) -> bool {
        self.positive[w][p] != self.positive[w][q]
    }

    pub fn separating_wall_count(&self, p: usize, q: usize) -> usize {
        (0..self.wall_count()).filter(|&w| self.separates(w, p, q)).count()
    }
}

/// A separation count against the lower bound `½(1/6 − d − ε)(d(p,q) − 6L)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationReport<S> {
    pub count: usize,
    pub distance: usize,
    pub bound: S,
    /// Whether `d(p,q) ≤ 6L`, so the bound says nothing.
    pub vacuous: bool,
    pub satisfied: bool,
}

pub fn separation_report<S: Scalar>(count: usize, distance: usize, d: S, epsilon: S, big_l: usize) -> SeparationReport<S> {
    let half = S::one() / S::from_usize(2);
    let sixth = S::one() / S::from_usize(6);
    let bound = half * (sixth - d - epsilon) * (S::from_usize(distance) - S::from_usize(6 * big_l));
    let vacuous = distance <= 6 * big_l;
    SeparationReport { count, distance, bound, vacuous, satisfied: vacuous || S::from_usize(count) >= bound }
}

/// A hypergraph crossing a path exactly once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingleCrossing {
    /// Index into the hypergraph list.
    pub wall: usize,
    /// Position along the path of the crossed edge.
    pub position: usize,
}

/// Search the edges of the path `gamma` from its middle outward, at most
/// `window` of them, for one whose hypergraph meets `gamma` only there.
pub fn single_crossing_search(hypergraphs: &[Hypergraph], gamma: &[usize], window: usize) -> Option<SingleCrossing> {
    if gamma.is_empty() {
        return None;
    }
    let owner: HashMap<usize, usize> = hypergraphs.iter().enumerate().flat_map(|(i, h)| h.class.iter().map(move |&e| (e, i))).collect();
    let mid = gamma.len() / 2;
    let order = (0..gamma.len()).map(|t| if t % 2 == 0 { mid + t / 2 } else { mid.wrapping_sub(t / 2 + 1) }).filter(|&i| i < gamma.len());
    for position in order.take(window) {
        let Some(&wall) = owner.get(&gamma[position]) else { continue };
        let crossings = gamma.iter().filter(|&&e| hypergraphs[wall].contains_edge(e)).count();
        if crossings == 1 {
            return Some(SingleCrossing { wall, position });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Polygon, PolygonalComplex, VertexType};
    use crate::Exact;

    #[test]
    fn polygon_walls_separate_antipodes() {
        let x = PolygonalComplex::polygon(4);
        let f = walls_of(&x).unwrap();
        assert_eq!(f.walls.len(), 4);
        let ws = f.wallspace(x.vertex_count());
        assert_eq!(ws.separating_wall_count(0, 4), 4);
        assert_eq!(ws.separating_wall_count(3, 3), 0);
        assert!(ws.crosses(0, 1));
    }

    #[test]
    fn middle_edge_crosses_once() {
        let x = PolygonalComplex::polygon(3);
        let hs = trace_all(&x).unwrap();
        let hit = single_crossing_search(&hs, &[0, 1, 2], 7).unwrap();
        assert_eq!(hit.position, 1);
        assert!(hs[hit.wall].contains_edge(1));
        assert_eq!(single_crossing_search(&hs, &[0], 1).unwrap().position, 0);
    }

    #[test]
    fn recrossing_wall_is_rejected() {
        // squares [a b q p], [q p s t], [s t c b]; the path a b c crosses one wall twice
        let (a, b, c, p, q, s, t) = (0, 1, 2, 3, 4, 5, 6);
        let types = vec![VertexType::Central, VertexType::Factor(0), VertexType::Central, VertexType::Factor(0), VertexType::Central, VertexType::Central, VertexType::Factor(0)];
        let edges = vec![(a, b), (b, q), (q, p), (p, a), (p, s), (s, t), (t, q), (t, c), (c, b), (b, s)];
        let sq1 = Polygon::new(vec![a, b, q, p], vec![0, 1, 2, 3]);
        let sq2 = Polygon::new(vec![q, p, s, t], vec![2, 4, 5, 6]);
        let sq3 = Polygon::new(vec![s, t, c, b], vec![5, 7, 8, 9]);
        let x = PolygonalComplex::new(types, edges, vec![sq1, sq2, sq3], a).unwrap();
        let hs = trace_all(&x).unwrap();
        let h = hs.iter().find(|h| h.contains_edge(0)).unwrap();
        assert_eq!(h.class, vec![0, 2, 5, 8]);
        assert_eq!(single_crossing_search(&hs, &[0, 8], 5), None);
        // the path a p s crosses two different hypergraphs once each
        assert_eq!(single_crossing_search(&hs, &[3, 4], 5).map(|c| c.position), Some(1));
    }

    #[test]
    fn report_bound() {
        let r = separation_report(3, 10, Exact::new(1, 16), Exact::new(1, 40), 1);
        assert!(!r.vacuous && r.satisfied);
        assert_eq!(r.bound, Exact::new(1, 2) * (Exact::new(1, 6) - Exact::new(1, 16) - Exact::new(1, 40)) * Exact::from_integer(4));
        assert!(separation_report(0, 6, 0.1f64, 0.01, 1).vacuous);
    }
}
