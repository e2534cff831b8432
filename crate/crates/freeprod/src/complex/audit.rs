//! Short embedded cycles in the 1-skeleton.

use super::{CellComplex, ComplexError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAudit {
    pub bound: usize,
    /// Each cycle as its edge sequence, starting at its smallest vertex.
    pub cycles: Vec<Vec<usize>>,
}

impl CycleAudit {
    /// Cycle counts indexed by length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.bound];
        for c in &self.cycles {
            h[c.len()] += 1;
        }
        h
    }
}

/// Every embedded cycle of length below `bound`, each listed once. Stops
/// with [`ComplexError::BudgetExceeded`] after `max_cycles` cycles.
pub fn short_cycle_audit<X: CellComplex + ?Sized>(x: &X, bound: usize, max_cycles: usize) -> Result<CycleAudit, ComplexError> {
    let adj = x.adjacency();
    let n = x.vertex_count();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    struct Walk<'a> {
        adj: &'a [Vec<(usize, usize)>],
        start: usize,
        bound: usize,
        max: usize,
    }
    fn go(w: &Walk, v: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) -> Result<(), ComplexError> {
        for &(u, e) in &w.adj[v] {
            if path.last() == Some(&e) {
                continue;
            }
            if u == w.start && !path.is_empty() {
                // each cycle is met in both directions; keep one
                if path[0] < e {
                    let mut c = path.clone();
                    c.push(e);
                    out.push(c);
                    if out.len() > w.max {
                        return Err(ComplexError::BudgetExceeded(w.max));
                    }
                }
                continue;
            }
            if u < w.start || on_path[u] || path.len() + 2 >= w.bound {
                continue;
            }
            on_path[u] = true;
            path.push(e);
            go(w, u, path, on_path, out)?;
            path.pop();
            on_path[u] = false;
        }
        Ok(())
    }
    for s in 0..n {
        let w = Walk { adj: &adj, start: s, bound, max: max_cycles };
        on_path[s] = true;
        go(&w, s, &mut Vec::new(), &mut on_path, &mut cycles)?;
        on_path[s] = false;
    }
    Ok(CycleAudit { bound, cycles })
}

#[cfg(test)]
mod tests {
    use super::super::{PolygonalComplex, VertexType};
    use super::*;

    #[test]
    fn polygon_has_one_cycle() {
        let x = PolygonalComplex::polygon(4);
        assert!(short_cycle_audit(&x, 8, 100).unwrap().cycles.is_empty());
        let a = short_cycle_audit(&x, 9, 100).unwrap();
        assert_eq!(a.cycles.len(), 1);
        assert_eq!(a.cycles[0].len(), 8);
    }

    #[test]
    fn doubled_edge() {
        let types = vec![VertexType::Central, VertexType::Factor(0)];
        let x = PolygonalComplex::new(types, vec![(0, 1), (0, 1)], vec![], 0).unwrap();
        let a = short_cycle_audit(&x, 4, 10).unwrap();
        assert_eq!(a.cycles, vec![vec![0, 1]]);
    }

    #[test]
    fn budget() {
        let x = PolygonalComplex::polygon(2);
        assert_eq!(short_cycle_audit(&x, 5, 0), Err(ComplexError::BudgetExceeded(0)));
    }
}
