//! Random diagrams from chained arc gluings.

use rand::Rng;

use super::{AbstractDiagram, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomDiagramParams {
    pub max_faces: usize,
    pub min_ell: usize,
    pub max_ell: usize,
    /// Chance of a second arc glued to the new face, in percent.
    pub extra_arc_percent: u32,
}

impl Default for RandomDiagramParams {
    fn default() -> Self {
        RandomDiagramParams { max_faces: 3, min_ell: 2, max_ell: 4, extra_arc_percent: 30 }
    }
}

type SlotPair = ((usize, usize), (usize, usize));

fn arc_pairs<R: Rng>(rng: &mut R, n: usize, old: usize, new: usize, len: usize) -> Vec<SlotPair> {
    let p = rng.gen_range(0..n);
    let mut q = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        // same direction: matching slot parities
        if (p + q) % 2 == 1 {
            q = (q + 1) % n;
        }
        (0..len).map(|t| ((old, (p + t) % n), (new, (q + t) % n))).collect()
    } else {
        if (p + q + len - 1).is_multiple_of(2) {
            q = (q + 1) % n;
        }
        (0..len).map(|t| ((old, (p + t) % n), (new, (q + len - 1 - t) % n))).collect()
    }
}

/// Connected diagram with random labels: each new face is glued along an
/// arc to an earlier face, sometimes along a second arc as well. Candidates
/// that fail validation or have a face meeting an edge twice are redrawn.
pub fn random_diagram<R: Rng>(params: &RandomDiagramParams, rng: &mut R) -> AbstractDiagram {
    loop {
        let ell = rng.gen_range(params.min_ell..=params.max_ell);
        let n = 2 * ell;
        let k = rng.gen_range(1..=params.max_faces.max(1));
        let mut pairs = Vec::new();
        for f in 1..k {
            let len = rng.gen_range(1..n);
            let old = rng.gen_range(0..f);
            pairs.extend(arc_pairs(rng, n, old, f, len));
            if rng.gen_range(0..100) < params.extra_arc_percent {
                let len = rng.gen_range(1..=ell);
                let old = rng.gen_range(0..=f);
                pairs.extend(arc_pairs(rng, n, old, f, len));
            }
        }
        let Ok(d) = AbstractDiagram::from_slot_unions(ell, k, &pairs, &[]) else { continue };
        if !d.faces_meet_edges_once() {
            continue;
        }
        let dist: Vec<usize> = (0..k).map(|_| rng.gen_range(0..ell)).collect();
        let ori: Vec<Orientation> = (0..k).map(|_| if rng.gen_bool(0.5) { Orientation::Plus } else { Orientation::Minus }).collect();
        let classes: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
        if let Ok(d) = d.with_labels(&dist, &ori, &classes) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_valid_and_seeded() {
        let p = RandomDiagramParams::default();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let mut multi = 0;
        for _ in 0..100 {
            let d = random_diagram(&p, &mut a);
            assert_eq!(d, random_diagram(&p, &mut b));
            assert!(d.is_connected());
            assert!(d.faces_meet_edges_once());
            multi += usize::from(d.area() > 1);
        }
        assert!(multi > 30);
    }
}
