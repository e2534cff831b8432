//! Greendlinger-type check: faces with many external edges.

use crate::scalar::Scalar;

use super::cancel::cancellation;
use super::AbstractDiagram;

/// Largest subcomplex area checked against the cancellation hypothesis.
pub const HYPOTHESIS_AREA_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct GreendlingerReport<S> {
    /// `L(1 − 5d/2)`.
    pub threshold: S,
    /// Boundary positions of each face lying on an edge of degree one.
    pub external: Vec<usize>,
    /// Faces reaching the threshold.
    pub witnesses: Vec<usize>,
    /// At least two faces reach the threshold (one for a single face).
    pub conclusion: bool,
    /// `can(Y′) < dL·Area(Y′)` for every connected face subset checked.
    pub hypothesis: bool,
    /// Every connected face subset was checked.
    pub hypothesis_exhaustive: bool,
}

/// External edge counts against `L(1 − 5d/2)` together with the
/// cancellation hypothesis over connected face subsets of area at most
/// [`HYPOTHESIS_AREA_CAP`].
pub fn greendlinger_check<S: Scalar>(y: &AbstractDiagram, d: S) -> GreendlingerReport<S> {
    let l = S::from_usize(y.face_length());
    let two = S::from_usize(2);
    let five = S::from_usize(5);
    let threshold = l * (S::one() - five * d / two);
    let deg = y.edge_degrees();
    let external: Vec<usize> = y.faces().iter().map(|f| f.edges.iter().filter(|&&e| deg[e] <= 1).count()).collect();
    let witnesses: Vec<usize> = (0..y.area()).filter(|&f| S::from_usize(external[f]) >= threshold).collect();
    let conclusion = witnesses.len() >= y.area().min(2);
    let (hypothesis, hypothesis_exhaustive) = hypothesis(y, d * l);
    GreendlingerReport { threshold, external, witnesses, conclusion, hypothesis, hypothesis_exhaustive }
}

fn hypothesis<S: Scalar>(y: &AbstractDiagram, dl: S) -> (bool, bool) {
    let adj = y.face_adjacency();
    let cap = HYPOTHESIS_AREA_CAP.min(y.area());
    let mut holds = true;
    // connected subsets grown from their smallest face, each visited once
    let mut seen = std::collections::HashSet::new();
    for root in 0..y.area() {
        let mut stack = vec![vec![root]];
        while let Some(set) = stack.pop() {
            let mut key = set.clone();
            key.sort_unstable();
            if !seen.insert(key.clone()) {
                continue;
            }
            let sub = y.sub_diagram(&key).expect("face subset of a valid diagram");
            if S::from_usize(cancellation(&sub)) >= dl * S::from_usize(key.len()) {
                holds = false;
            }
            if set.len() == cap {
                continue;
            }
            for &f in &set {
                for &g in &adj[f] {
                    if g > root && !set.contains(&g) {
                        let mut next = set.clone();
                        next.push(g);
                        stack.push(next);
                    }
                }
            }
        }
    }
    (holds, y.area() <= HYPOTHESIS_AREA_CAP)
}
