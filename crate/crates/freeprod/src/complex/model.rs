//! The model complex of a finite quotient.

use std::collections::HashSet;

use crate::factor::{FreeProduct, FreeProductWord};

use super::coset::{generator_offsets, CosetTable, Letter, Presentation};
use super::{ComplexError, Polygon, PolygonalComplex, VertexType};

/// Edge sequence up to rotation by an even offset and reversal, so that
/// central positions stay even.
fn cycle_key(edges: &[usize]) -> Vec<usize> {
    let n = edges.len();
    let mut best: Option<Vec<usize>> = None;
    for s in (0..n).step_by(2) {
        let fwd: Vec<usize> = (0..n).map(|t| edges[(s + t) % n]).collect();
        // reversed reading from the central vertex at position s
        let back: Vec<usize> = (0..n).map(|t| edges[(s + 2 * n - 1 - t) % n]).collect();
        for c in [fwd, back] {
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

/// Vertices are the elements of `G` (central, numbered as in the table)
/// followed by the cosets `gG_i` (factor, grouped by factor). Edge
/// `g·n + i` joins `g` to `gG_i`. Each relator read from each element
/// bounds a polygon; polygons with the same boundary cycle are kept once.
pub fn build_xr_finite(product: &FreeProduct, relators: &[FreeProductWord], table: &CosetTable) -> Result<PolygonalComplex, ComplexError> {
    if relators.is_empty() {
        return Err(ComplexError::EmptyRelators);
    }
    let pres = Presentation::of_quotient(product, relators);
    if table.generator_count() != pres.generators.len() || !table.is_complete() {
        return Err(ComplexError::IncompleteTable);
    }
    if let Some(r) = table.failing_relator(&pres.relators) {
        return Err(ComplexError::RelatorNotTrivial(r));
    }
    let n_elems = table.coset_count();
    let n_factors = product.rank();
    let offsets = generator_offsets(product);
    let mut types = vec![VertexType::Central; n_elems];
    // factor_vertex[i][g] is the vertex of the coset gG_i
    let mut factor_vertex = vec![vec![usize::MAX; n_elems]; n_factors];
    for (i, fv) in factor_vertex.iter_mut().enumerate() {
        for g in 0..n_elems {
            if fv[g] != usize::MAX {
                continue;
            }
            let v = types.len();
            types.push(VertexType::Factor(i));
            let mut stack = vec![g];
            fv[g] = v;
            while let Some(h) = stack.pop() {
                for x in offsets[i]..offsets[i + 1] {
                    for s in [1, -1] {
                        let t = table.act(h, (x, s)).expect("complete table");
                        if fv[t] == usize::MAX {
                            fv[t] = v;
                            stack.push(t);
                        }
                    }
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(n_elems * n_factors);
    for g in 0..n_elems {
        for fv in &factor_vertex {
            edges.push((g, fv[g]));
        }
    }
    let edge = |g: usize, i: usize| g * n_factors + i;
    let mut polygons = Vec::new();
    let mut seen = HashSet::new();
    for r in relators {
        let letters: Vec<Vec<Letter>> = r.syllables.iter().map(|s| product.factor(s.factor).word_for(&s.element).into_iter().map(|(x, e)| (x + offsets[s.factor], e)).collect()).collect();
        for g in 0..n_elems {
            let mut vertices = Vec::with_capacity(2 * r.len());
            let mut pedges = Vec::with_capacity(2 * r.len());
            let mut cur = g;
            for (s, word) in r.syllables.iter().zip(&letters) {
                let next = table.apply(cur, word).expect("complete table");
                vertices.push(cur);
                vertices.push(factor_vertex[s.factor][cur]);
                pedges.push(edge(cur, s.factor));
                pedges.push(edge(next, s.factor));
                cur = next;
            }
            debug_assert_eq!(cur, g);
            if seen.insert(cycle_key(&pedges)) {
                polygons.push(Polygon { vertices, edges: pedges, rotation: Some(r.syllables.clone()) });
            }
        }
    }
    PolygonalComplex::new(types, edges, polygons, 0)
}

#[cfg(test)]
mod tests {
    use super::super::{coset_enumerate, CellComplex};
    use super::*;
    use crate::factor::FactorGroup;

    fn fixture() -> (FreeProduct, Vec<FreeProductWord>) {
        let product = FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")]);
        (product, vec![FreeProductWord::parse("1:t1 2:t1 1:t1 2:t1").unwrap()])
    }

    #[test]
    fn von_dyck_complex() {
        let (product, r) = fixture();
        let table = coset_enumerate(&Presentation::of_quotient(&product, &r), 1000).unwrap();
        let x = build_xr_finite(&product, &r, &table).unwrap();
        assert_eq!((x.central_count(), x.factor_count()), (12, 8));
        assert_eq!((x.vertex_count(), x.edge_count(), x.polygon_count()), (20, 24, 6));
        assert_eq!(x.polygon_length(), 8);
        assert_eq!(x.euler_characteristic(), 2);
        assert!(x.is_decorated());
    }

    #[test]
    fn guards() {
        let (product, r) = fixture();
        let table = coset_enumerate(&Presentation::of_quotient(&product, &r), 1000).unwrap();
        assert_eq!(build_xr_finite(&product, &[], &table), Err(ComplexError::EmptyRelators));
        let partial = CosetTable::from_action(2, vec![vec![Some(0), None]]);
        assert_eq!(build_xr_finite(&product, &r, &partial), Err(ComplexError::IncompleteTable));
        let other = vec![FreeProductWord::parse("1:t1 2:t2").unwrap()];
        assert_eq!(build_xr_finite(&product, &other, &table), Err(ComplexError::RelatorNotTrivial(2)));
    }
}
