//! Opposite-edge classes, separation counts and dual cube complexes by
//! exhaustive search.

use std::collections::HashSet;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

/// Classes of the relation generated by opposite edges of each even
/// polygon (given by its edge cycle), by relabelling until stable.
pub fn opposite_classes(edge_count: usize, polygons: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..edge_count).collect();
    loop {
        let mut changed = false;
        for p in polygons {
            let n = p.len();
            for i in 0..n / 2 {
                let (a, b) = (p[i], p[i + n / 2]);
                let low = label[a].min(label[b]);
                for l in [label[a], label[b]] {
                    if l != low {
                        for x in label.iter_mut().filter(|x| **x == l) {
                            *x = low;
                        }
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for root in 0..edge_count {
        let c: Vec<usize> = (0..edge_count).filter(|&e| label[e] == root).collect();
        if !c.is_empty() {
            classes.push(c);
        }
    }
    classes
}

/// Component label of every vertex once the given edges are removed, by
/// repeated flooding.
pub fn labels_without(vertices: usize, edges: &[(usize, usize)], removed: &[usize]) -> Vec<usize> {
    let gone: HashSet<usize> = removed.iter().copied().collect();
    let mut label = vec![usize::MAX; vertices];
    let mut next = 0;
    for s in 0..vertices {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut grew = true;
        while grew {
            grew = false;
            for (e, &(a, b)) in edges.iter().enumerate() {
                if gone.contains(&e) {
                    continue;
                }
                if label[a] == next && label[b] != next {
                    label[b] = next;
                    grew = true;
                } else if label[b] == next && label[a] != next {
                    label[a] = next;
                    grew = true;
                }
            }
        }
        next += 1;
    }
    label
}

/// `count[p][q]`: classes with two-component complement separating `p`
/// from `q`.
pub fn separation_matrix(vertices: usize, edges: &[(usize, usize)], classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut count = vec![vec![0; vertices]; vertices];
    for c in classes {
        let label = labels_without(vertices, edges, c);
        if label.iter().max().map_or(0, |m| m + 1) != 2 {
            continue;
        }
        for p in 0..vertices {
            for q in 0..vertices {
                if label[p] != label[q] {
                    count[p][q] += 1;
                }
            }
        }
    }
    count
}

/// Cube counts by dimension of the dual of walls given by side labels:
/// every orientation is tested for pairwise meeting halfspaces, then every
/// (orientation, wall subset) pair for a full cube of orientations.
pub fn dual_f_vector(points: usize, sides: &[Vec<bool>]) -> Vec<usize> {
    let w = sides.len();
    let meets = |a: usize, sa: bool, b: usize, sb: bool| (0..points).any(|p| sides[a][p] == sa && sides[b][p] == sb);
    let consistent: HashSet<u64> = (0..1u64 << w).filter(|&o| (0..w).all(|a| (0..w).all(|b| meets(a, o >> a & 1 == 1, b, o >> b & 1 == 1)))).collect();
    let mut f = vec![0usize; w + 1];
    for &o in &consistent {
        for s in 0..1u64 << w {
            if o & s != 0 {
                continue;
            }
            let all = (0..1u64 << w).filter(|t| t & !s == 0).all(|t| consistent.contains(&(o | t)));
            if all {
                f[s.count_ones() as usize] += 1;
            }
        }
    }
    while f.len() > 1 && f[f.len() - 1] == 0 {
        f.pop();
    }
    f
}

/// Whether two edge lists on `n` vertices give isomorphic graphs.
pub fn graphs_isomorphic(n: usize, a: &[(usize, usize)], m: usize, b: &[(usize, usize)]) -> bool {
    let build = |k: usize, es: &[(usize, usize)]| {
        let mut g = UnGraph::<(), ()>::with_capacity(k, es.len());
        let nodes: Vec<_> = (0..k).map(|_| g.add_node(())).collect();
        for &(x, y) in es {
            g.add_edge(nodes[x], nodes[y], ());
        }
        g
    };
    is_isomorphic(&build(n, a), &build(m, b))
}

/// Rank of `H_1(X; Z/2)` from the cellular chain complex, with polygons
/// given by their edge cycles.
pub fn first_betti_mod2(vertices: usize, edges: &[(usize, usize)], polygons: &[Vec<usize>]) -> usize {
    let rank = |rows: Vec<Vec<bool>>| {
        let mut rows = rows;
        let mut r = 0;
        let cols = rows.first().map_or(0, Vec::len);
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i][c] {
                    let pivot = rows[r].clone();
                    rows[i].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            r += 1;
        }
        r
    };
    let d1 = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![false; vertices];
            row[a] ^= true;
            row[b] ^= true;
            row
        })
        .collect();
    let d2 = polygons
        .iter()
        .map(|p| {
            let mut row = vec![false; edges.len()];
            for &e in p {
                row[e] ^= true;
            }
            row
        })
        .collect();
    edges.len() - rank(d1) - rank(d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_numbers() {
        let square: Vec<(usize, usize)> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        assert_eq!(first_betti_mod2(4, &square, &[]), 1);
        assert_eq!(first_betti_mod2(4, &square, &[vec![0, 1, 2, 3]]), 0);
        // one square with opposite sides glued the same way round: an annulus
        assert_eq!(first_betti_mod2(2, &[(0, 1), (0, 1), (1, 0)], &[vec![0, 1, 2, 1]]), 1);
    }

    #[test]
    fn square_dual() {
        let sides = vec![vec![false, true, false, true], vec![false, false, true, true]];
        assert_eq!(dual_f_vector(4, &sides), vec![4, 4, 1]);
    }

    #[test]
    fn octagon_classes() {
        let c = opposite_classes(8, &[(0..8).collect()]);
        assert_eq!(c, vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]);
        let edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let m = separation_matrix(8, &edges, &c);
        assert_eq!(m[0][4], 4);
        assert_eq!(m[0][1], 1);
    }

    #[test]
    fn path_isomorphism() {
        assert!(graphs_isomorphic(3, &[(0, 1), (1, 2)], 3, &[(2, 0), (0, 1)]));
        assert!(!graphs_isomorphic(4, &[(0, 1), (1, 2), (2, 3)], 4, &[(0, 1), (0, 2), (0, 3)]));
    }
}
