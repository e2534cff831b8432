//! Word counting and piece scans by exhaustive enumeration.

use freeprod::factor::{BallTable, FreeProduct, FreeProductWord, Syllable};

/// Every sequence of `ell` ball letters, kept when consecutive letters lie in
/// different factors cyclically.
pub fn cyclically_reduced_words(balls: &BallTable, ell: usize) -> Vec<FreeProductWord> {
    let letters: Vec<Syllable> = balls.balls.iter().enumerate().flat_map(|(f, b)| b.iter().map(move |e| Syllable::new(f, e.clone()))).collect();
    let mut out = Vec::new();
    if ell == 0 || letters.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; ell];
    loop {
        let w: Vec<&Syllable> = idx.iter().map(|&i| &letters[i]).collect();
        if (0..ell).all(|t| w[t].factor != w[(t + 1) % ell].factor) {
            out.push(FreeProductWord::new(w.into_iter().cloned().collect()));
        }
        let mut k = 0;
        loop {
            if k == ell {
                return out;
            }
            idx[k] += 1;
            if idx[k] < letters.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Longest common subword of `r1` with a cyclic shift of `r2` or `r2⁻¹`,
/// comparing syllable by syllable from every pair of starting points.
/// The identity overlap of a word with itself is skipped.
pub fn naive_max_piece(product: &FreeProduct, r1: &FreeProductWord, r2: &FreeProductWord) -> usize {
    let ell = r1.len();
    let inv = product.inverse(r2);
    let mut best = 0;
    for (inverted, w) in [(false, r2), (true, &inv)] {
        for i in 0..ell {
            for j in 0..ell {
                if !inverted && r1 == r2 && (j + ell - i).is_multiple_of(ell) {
                    continue;
                }
                let mut len = 0;
                while len < ell && r1.syllables[(i + len) % ell] == w.syllables[(j + len) % ell] {
                    len += 1;
                }
                best = best.max(len);
            }
        }
    }
    best
}
