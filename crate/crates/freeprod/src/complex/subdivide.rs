//! Edge subdivision and the balancing parameters.

use crate::scalar::Scalar;

use super::{CellComplex, ComplexError, Polygon, PolygonalComplex, VertexType};

/// Balancing parameters for density `d`, relator length `ℓ` and maximal
/// fiber translation length `τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubdivisionParams<S> {
    pub d: S,
    pub ell: usize,
    pub tau: usize,
    /// `½·min{1/5 − d, 1/ℓ}`.
    pub epsilon: S,
    /// `⌈τ/(4ε)⌉ + 1`.
    pub k: usize,
    /// Polygon length `4kℓ` after subdivision.
    pub polygon_length: usize,
}

pub fn subdivision_params<S: Scalar>(d: S, ell: usize, tau: usize) -> Result<SubdivisionParams<S>, ComplexError> {
    let fifth = S::one() / S::from_usize(5);
    if d >= fifth {
        return Err(ComplexError::DensityTooHigh);
    }
    if ell == 0 {
        return Err(ComplexError::OutOfRange("ℓ = 0".into()));
    }
    let two = S::one() + S::one();
    let epsilon = (fifth - d).min_of(S::one() / S::from_usize(ell)) / two;
    let k = (S::from_usize(tau) / (S::from_usize(4) * epsilon)).ceil_i64().max(0) as usize + 1;
    Ok(SubdivisionParams { d, ell, tau, epsilon, k, polygon_length: 4 * k * ell })
}

/// Each edge becomes a path of `2k` edges. Original vertices keep their
/// ids; edge `e` contributes interior vertices `V + e(2k − 1) + j` and
/// edges `2k·e + j`, numbered from its first endpoint.
pub fn subdivide(x: &PolygonalComplex, k: usize) -> Result<PolygonalComplex, ComplexError> {
    if k == 0 {
        return Err(ComplexError::ZeroSubdivision);
    }
    let parts = 2 * k;
    let nv = x.vertex_count();
    let mut types = x.types().to_vec();
    let mut edges = Vec::with_capacity(x.edge_count() * parts);
    for (e, &(a, b)) in x.edge_ends().iter().enumerate() {
        let inner = |j: usize| nv + e * (parts - 1) + j;
        types.extend(std::iter::repeat_n(VertexType::Subdivision, parts - 1));
        for j in 0..parts {
            let from = if j == 0 { a } else { inner(j - 1) };
            let to = if j == parts - 1 { b } else { inner(j) };
            edges.push((from, to));
        }
    }
    let polygons = x
        .polygons()
        .iter()
        .map(|p| {
            let n = p.len();
            let mut vertices = Vec::with_capacity(n * parts);
            let mut pedges = Vec::with_capacity(n * parts);
            for i in 0..n {
                let e = p.edges[i];
                let forward = x.edge_ends()[e].0 == p.vertices[i] && x.edge_ends()[e].1 == p.vertices[(i + 1) % n];
                vertices.push(p.vertices[i]);
                for j in 0..parts {
                    let t = if forward { j } else { parts - 1 - j };
                    pedges.push(parts * e + t);
                    if j + 1 < parts {
                        let inner = if forward { j } else { parts - 2 - j };
                        vertices.push(nv + e * (parts - 1) + inner);
                    }
                }
            }
            Polygon::new(vertices, pedges)
        })
        .collect();
    PolygonalComplex::new(types, edges, polygons, x.basepoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;

    #[test]
    fn epsilon_and_k() {
        let p = subdivision_params(Exact::new(1, 10), 20, 0).unwrap();
        assert_eq!(p.epsilon, Exact::new(1, 40));
        assert_eq!((p.k, p.polygon_length), (1, 80));
        let p = subdivision_params(Exact::new(1, 10), 20, 3).unwrap();
        assert_eq!((p.k, p.polygon_length), (31, 124 * 20));
        assert_eq!(subdivision_params(Exact::new(1, 5), 20, 0), Err(ComplexError::DensityTooHigh));
        let f = subdivision_params(0.1f64, 20, 0).unwrap();
        assert!((f.epsilon - 0.025).abs() < 1e-12);
    }

    #[test]
    fn subdivided_polygon() {
        let x = PolygonalComplex::polygon(3);
        let y = subdivide(&x, 2).unwrap();
        assert_eq!((y.vertex_count(), y.edge_count(), y.polygon_length()), (6 * 4, 24, 24));
        assert_eq!(y.euler_characteristic(), x.euler_characteristic());
        assert_eq!(y.distances_from(0)[3], Some(12));
        assert_eq!(subdivide(&x, 0), Err(ComplexError::ZeroSubdivision));
    }
}
