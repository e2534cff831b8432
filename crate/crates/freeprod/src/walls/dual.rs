//! The cube complex dual to a finite wallspace.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use crate::complex::{Cube, CubeComplex};

use super::{Wallspace, WallsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualBudget {
    pub max_walls: usize,
    /// Cap on the total number of cubes of positive dimension.
    pub max_cubes: usize,
}

impl Default for DualBudget {
    fn default() -> Self {
        DualBudget { max_walls: 20, max_cubes: 1 << 22 }
    }
}

/// 0-cubes are orientations (bit `w` set for the positive side of wall
/// `w`) whose chosen halfspaces meet pairwise. A cube is a base orientation
/// with a set of free walls, stored as `(base, free)` masks with the free
/// bits cleared in `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCubeComplex {
    walls: usize,
    vertices: Vec<u64>,
    /// `cubes[k - 1]` holds the `k`-cubes.
    cubes: Vec<Vec<(u64, u64)>>,
}

pub fn dual_cube_complex(ws: &Wallspace, budget: DualBudget) -> Result<DualCubeComplex, WallsError> {
    let n = ws.wall_count();
    if n > budget.max_walls.min(64) {
        return Err(WallsError::BudgetExceeded(format!("{n} walls, budget {}", budget.max_walls)));
    }
    let halves: Vec<[fixedbitset::FixedBitSet; 2]> = (0..n).map(|w| [ws.halfspace(w, false), ws.halfspace(w, true)]).collect();
    // meets[w][s] has bit 2v+t set when halfspace (w, s) meets (v, t)
    let meets: Vec<[u128; 2]> = (0..n)
        .map(|w| {
            let row = |s: usize| (0..n).flat_map(|v| [0, 1].map(move |t| (v, t))).filter(|&(v, t)| !halves[w][s].is_disjoint(&halves[v][t])).fold(0u128, |acc, (v, t)| acc | 1 << (2 * v + t));
            [row(0), row(1)]
        })
        .collect();
    let mut vertices = Vec::new();
    // depth-first over walls, keeping only pairwise meeting choices
    let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
    while let Some((w, o)) = stack.pop() {
        if w == n {
            vertices.push(o);
            if vertices.len() > budget.max_cubes {
                return Err(WallsError::BudgetExceeded(format!("more than {} 0-cubes", budget.max_cubes)));
            }
            continue;
        }
        for s in [1usize, 0] {
            let ok = (0..=w).all(|v| {
                let t = if v == w { s } else { (o >> v & 1) as usize };
                meets[w][s] >> (2 * v + t) & 1 == 1
            });
            if ok {
                stack.push((w + 1, o | (s as u64) << w));
            }
        }
    }
    vertices.sort_unstable();
    let present: HashSet<u64> = vertices.iter().copied().collect();
    let mut cubes: Vec<Vec<(u64, u64)>> = Vec::new();
    let mut level: Vec<(u64, u64)> = Vec::new();
    for &o in &vertices {
        for w in 0..n {
            if o >> w & 1 == 0 && present.contains(&(o | 1 << w)) {
                level.push((o, 1 << w));
            }
        }
    }
    let mut total = level.len();
    while !level.is_empty() {
        let set: HashSet<(u64, u64)> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &(o, free) in &level {
            let top = 64 - free.leading_zeros() as usize;
            for w in top..n {
                if o >> w & 1 == 0 && set.contains(&(o | 1 << w, free)) {
                    next.push((o, free | 1 << w));
                }
            }
        }
        total += next.len();
        if total > budget.max_cubes {
            return Err(WallsError::BudgetExceeded(format!("more than {} cubes", budget.max_cubes)));
        }
        cubes.push(std::mem::replace(&mut level, next));
    }
    Ok(DualCubeComplex { walls: n, vertices, cubes })
}

impl DualCubeComplex {
    pub fn wall_count(&self) -> usize {
        self.walls
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Orientation masks of the 0-cubes in increasing order.
    pub fn orientations(&self) -> &[u64] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.cubes.len()
    }

    /// Number of cubes per dimension, starting with the 0-cubes.
    pub fn f_vector(&self) -> Vec<usize> {
        std::iter::once(self.vertices.len()).chain(self.cubes.iter().map(Vec::len)).collect()
    }

    /// Edges as pairs of 0-cube indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let index = self.index();
        self.cubes.first().map_or_else(Vec::new, |e| e.iter().map(|&(o, f)| (index[&o], index[&(o | f)])).collect())
    }

    fn index(&self) -> HashMap<u64, usize> {
        self.vertices.iter().enumerate().map(|(i, &o)| (o, i)).collect()
    }

    /// The same complex with 0-cubes numbered by position in
    /// [`Self::orientations`].
    pub fn to_cube_complex(&self) -> CubeComplex {
        let index = self.index();
        let cells = self
            .cubes
            .iter()
            .flatten()
            .map(|&(o, free)| {
                let bits: Vec<usize> = (0..64).filter(|b| free >> b & 1 == 1).collect();
                let vs = (0..1usize << bits.len()).map(|j| index[&bits.iter().enumerate().fold(o, |acc, (t, &b)| if j >> t & 1 == 1 { acc | 1 << b } else { acc })]).collect();
                Cube::new(vs)
            })
            .collect();
        CubeComplex::new(self.vertices.len(), cells).expect("dual cubes are valid")
    }

    /// Orientations as `+`/`-` strings followed by the cubes per dimension.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let orient = |o: u64| (0..self.walls).map(|w| if o >> w & 1 == 1 { '+' } else { '-' }).collect::<String>();
        writeln!(out, "DUAL {}", self.walls).unwrap();
        writeln!(out, "FVECTOR {}", self.f_vector().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).unwrap();
        writeln!(out, "VERTICES {}", self.vertices.len()).unwrap();
        for (i, &o) in self.vertices.iter().enumerate() {
            writeln!(out, "{i} {}", orient(o)).unwrap();
        }
        for (k, level) in self.cubes.iter().enumerate() {
            writeln!(out, "CUBES {} {}", k + 1, level.len()).unwrap();
            for &(o, free) in level {
                let free: Vec<String> = (0..self.walls).filter(|w| free >> w & 1 == 1).map(|w| w.to_string()).collect();
                writeln!(out, "{} {}", orient(o), free.join(" ")).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellComplex;

    fn crossing(k: usize) -> Wallspace {
        let sides: Vec<Vec<bool>> = (0..k).map(|w| (0..1usize << k).map(|p| p >> w & 1 == 1).collect()).collect();
        Wallspace::from_sides(1 << k, &sides).unwrap()
    }

    #[test]
    fn crossing_walls_give_cubes() {
        for k in 1..=4 {
            let d = dual_cube_complex(&crossing(k), DualBudget::default()).unwrap();
            assert_eq!(d.dimension(), k);
            let c = d.to_cube_complex();
            assert_eq!(c.f_vector(), CubeComplex::cube(k).f_vector());
            assert!(c.link_flag_check());
        }
    }

    #[test]
    fn nested_walls_give_a_path() {
        // points 0..4 on a line, wall w cuts between w and w + 1
        let sides: Vec<Vec<bool>> = (0..3).map(|w| (0..4).map(|p| p > w).collect()).collect();
        let d = dual_cube_complex(&Wallspace::from_sides(4, &sides).unwrap(), DualBudget::default()).unwrap();
        assert_eq!(d.f_vector(), vec![4, 3]);
        assert_eq!(d.to_cube_complex().edge_count(), 3);
    }

    #[test]
    fn single_wall() {
        let d = dual_cube_complex(&Wallspace::from_sides(2, &[vec![false, true]]).unwrap(), DualBudget::default()).unwrap();
        assert_eq!(d.f_vector(), vec![2, 1]);
        assert!(d.to_text().starts_with("DUAL 1\nFVECTOR 2 1\n"));
    }

    #[test]
    fn budget() {
        let b = DualBudget { max_walls: 3, ..DualBudget::default() };
        assert!(matches!(dual_cube_complex(&crossing(4), b), Err(WallsError::BudgetExceeded(_))));
    }
}
