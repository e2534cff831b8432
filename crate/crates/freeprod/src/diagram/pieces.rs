//! Pieces between relators and the C′(1/6) condition.

use num_rational::Ratio;

use crate::factor::{FreeProduct, FreeProductWord};

use super::{glue_two, AbstractDiagram, Orientation};

/// Maximal cyclic run of equal syllables between `r1` and a shift of `r2`
/// or of `r2⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Piece {
    /// First matched syllable of `r1`.
    pub start: usize,
    /// `r1[t]` is compared with `w[(t + shift) mod ℓ]`.
    pub shift: usize,
    /// `w = r2⁻¹` when set, `w = r2` otherwise.
    pub inverted: bool,
    pub length: usize,
}

/// All maximal runs of length at least 1, skipping the identity overlap of a
/// relator with itself.
pub fn piece_runs(product: &FreeProduct, r1: &FreeProductWord, r2: &FreeProductWord) -> Vec<Piece> {
    let ell = r1.len();
    if ell == 0 || r2.len() != ell {
        return Vec::new();
    }
    let same = r1 == r2;
    let inv = product.inverse(r2);
    let mut out = Vec::new();
    for (inverted, w) in [(false, r2), (true, &inv)] {
        for shift in 0..ell {
            if same && !inverted && shift == 0 {
                continue;
            }
            let eq: Vec<bool> = (0..ell).map(|t| r1.syllables[t] == w.syllables[(t + shift) % ell]).collect();
            if eq.iter().all(|&b| b) {
                out.push(Piece { start: 0, shift, inverted, length: ell });
                continue;
            }
            // start scanning just after a mismatch so runs do not wrap twice
            let first_miss = eq.iter().position(|&b| !b).expect("some mismatch");
            let mut t = 0;
            while t < ell {
                let i = (first_miss + 1 + t) % ell;
                if !eq[i] {
                    t += 1;
                    continue;
                }
                let mut len = 0;
                while len < ell && eq[(i + len) % ell] {
                    len += 1;
                }
                out.push(Piece { start: i, shift, inverted, length: len });
                t += len;
            }
        }
    }
    out
}

/// Longest piece between two relators, in syllables.
pub fn max_piece(product: &FreeProduct, r1: &FreeProductWord, r2: &FreeProductWord) -> usize {
    piece_runs(product, r1, r2).iter().map(|p| p.length).max().unwrap_or(0)
}

/// Longest piece over all pairs, including each relator with itself, over ℓ.
pub fn lambda(product: &FreeProduct, relators: &[FreeProductWord]) -> Ratio<i64> {
    let Some(ell) = relators.first().map(FreeProductWord::len) else {
        return Ratio::from_integer(0);
    };
    let mut best = 0;
    for i in 0..relators.len() {
        for j in i..relators.len() {
            best = best.max(max_piece(product, &relators[i], &relators[j]));
        }
    }
    Ratio::new(best as i64, ell.max(1) as i64)
}

/// Every piece is shorter than ℓ/6 syllables.
pub fn c_prime_sixth(product: &FreeProduct, relators: &[FreeProductWord]) -> bool {
    lambda(product, relators) < Ratio::new(1, 6)
}

/// Two faces bearing `relators.0` and `relators.1` glued along a piece.
#[derive(Clone, Debug)]
pub struct PairGluing {
    pub diagram: AbstractDiagram,
    pub relators: (usize, usize),
    pub piece: Piece,
    /// Number of shared edges.
    pub shared: usize,
}

/// One gluing per maximal piece between relator pairs `i ≤ j`.
///
/// The shared path runs through the matched syllables and extends to the
/// flanking factor vertices when those syllables lie in a common factor and
/// the path stays shorter than the boundary.
pub fn pair_gluings(product: &FreeProduct, relators: &[FreeProductWord]) -> Vec<PairGluing> {
    let mut out = Vec::new();
    for i in 0..relators.len() {
        for j in i..relators.len() {
            let (r1, r2) = (&relators[i], &relators[j]);
            let ell = r1.len();
            let inv = product.inverse(r2);
            for piece in piece_runs(product, r1, r2) {
                let w = if piece.inverted { &inv } else { r2 };
                let (a, k) = (piece.start, piece.length);
                let before = (a + ell - 1) % ell;
                let extend = k + 2 <= ell && r1.syllables[before].factor == w.syllables[(before + piece.shift) % ell].factor && {
                    let after = (a + k) % ell;
                    r1.syllables[after].factor == w.syllables[(after + piece.shift) % ell].factor
                };
                let n = 2 * ell;
                // face 1 corner u0 = 0 carries the first matched syllable
                let (start1, start2, shared) = if k == ell {
                    (0, 0, n)
                } else if extend {
                    ((2 * a + n - 2) % n, (n - 2 * k) % n, 2 * k + 2)
                } else {
                    ((2 * a + n - 1) % n, (n - 2 * k + 1) % n, 2 * k)
                };
                let Ok(base) = glue_two(ell, start1, start2, shared) else { continue };
                let (dist, ori) = if piece.inverted { ((a + piece.shift + 1) % ell, Orientation::Plus) } else { ((a + piece.shift) % ell, Orientation::Minus) };
                let classes = if i == j { [0, 0] } else { [0, 1] };
                let Ok(diagram) = base.with_labels(&[0, dist], &[Orientation::Plus, ori], &classes) else { continue };
                out.push(PairGluing { diagram, relators: (i, j), piece, shared });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{fulfill, Decoration, SearchBudget};
    use crate::factor::{FactorGroup, Syllable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fixture_a() -> FreeProduct {
        FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")])
    }

    fn word(p: &FreeProduct, exps: &[(usize, u32)]) -> FreeProductWord {
        FreeProductWord::new(
            exps.iter()
                .map(|&(f, e)| {
                    let g = p.factor(f);
                    let gen = g.base_generators()[0].clone();
                    let mut x = g.identity();
                    for _ in 0..e {
                        x = g.multiply(&x, &gen);
                    }
                    Syllable::new(f, x)
                })
                .collect(),
        )
    }

    #[test]
    fn period_two_self_overlap() {
        let p = fixture_a();
        let r = word(&p, &[(0, 1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(max_piece(&p, &r, &r), 4);
        assert!(lambda(&p, std::slice::from_ref(&r)) >= Ratio::new(1, 2));
        assert!(!c_prime_sixth(&p, &[r]));
    }

    #[test]
    fn symmetric_and_shift_invariant() {
        let p = fixture_a();
        let r1 = word(&p, &[(0, 1), (1, 1), (0, 1), (1, 2)]);
        let r2 = word(&p, &[(0, 2), (1, 1), (0, 1), (1, 1)]);
        let m = max_piece(&p, &r1, &r2);
        assert_eq!(m, max_piece(&p, &r2, &r1));
        assert_eq!(m, max_piece(&p, &r1.rotate(2), &p.inverse(&r2)));
        assert_eq!(m, 2);
    }

    #[test]
    fn aperiodic_word_satisfies_condition() {
        // with seven elements per factor, a length-12 word whose length-2
        // windows are all distinct, also against its inverse, exists
        let p = FreeProduct::new(vec![FactorGroup::cyclic(7, "a"), FactorGroup::cyclic(7, "b")]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = (0..10_000)
            .map(|_| {
                let exps: Vec<(usize, u32)> = (0..12).map(|i| (i % 2, rng.gen_range(1..7))).collect();
                word(&p, &exps)
            })
            .find(|r| max_piece(&p, r, r) == 1)
            .expect("an aperiodic word");
        assert!((1..12).all(|k| r.rotate(k) != r));
        assert!(c_prime_sixth(&p, &[r]));
    }

    #[test]
    fn gluings_are_fulfillable() {
        let p = fixture_a();
        let r = vec![word(&p, &[(0, 1), (1, 1), (0, 1), (1, 2)]), word(&p, &[(0, 2), (1, 1), (0, 1), (1, 1)])];
        let gl = pair_gluings(&p, &r);
        assert!(!gl.is_empty());
        for g in &gl {
            let assign: Vec<usize> = if g.relators.0 == g.relators.1 { vec![g.relators.0] } else { vec![g.relators.0, g.relators.1] };
            let dec = Decoration::from_assignment(&g.diagram, &p, &r, &assign).unwrap();
            assert!(dec.satisfies_constraints(&g.diagram, &p), "piece {:?}", g.piece);
            assert!(g.diagram.is_reduced());
            if g.relators.0 != g.relators.1 {
                assert!(fulfill(&g.diagram, &p, &r, SearchBudget::default()).unwrap().is_fulfilled());
            }
        }
    }
}
