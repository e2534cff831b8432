//! Group orders and cycle counts by direct search.

use std::collections::{BTreeMap, HashSet};

/// A permutation of `0..n` as its image list.
pub type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a, then b
    a.iter().map(|&i| b[i]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(n: usize, cur: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Order of the group generated by `gens`, by closing under products.
pub fn closure_order(gens: &[Perm]) -> usize {
    let Some(first) = gens.first() else { return 1 };
    let id: Perm = (0..first.len()).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    seen.len()
}

fn evaluate(word: &[(usize, i32)], images: &[Perm]) -> Perm {
    let n = images[0].len();
    word.iter().fold((0..n).collect(), |acc, &(g, e)| {
        let p = if e > 0 { images[g].clone() } else { invert(&images[g]) };
        (0..e.unsigned_abs()).fold(acc, |a, _| compose(&a, &p))
    })
}

/// Largest image of the presented group in `S_degree`, over all generator
/// assignments satisfying every relator.
pub fn largest_permutation_image(generators: usize, relators: &[Vec<(usize, i32)>], degree: usize) -> usize {
    let perms = all_perms(degree);
    let id: Perm = (0..degree).collect();
    let mut best = 1;
    let mut idx = vec![0usize; generators];
    loop {
        let images: Vec<Perm> = idx.iter().map(|&i| perms[i].clone()).collect();
        if relators.iter().all(|r| evaluate(r, &images) == id) {
            best = best.max(closure_order(&images));
        }
        let mut k = 0;
        loop {
            if k == generators {
                return best;
            }
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Advance to the next increasing `k`-subset of `0..n`.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of embedded cycles of each length `2..=max_len` in a multigraph,
/// by trying every vertex subset in every cyclic order.
pub fn cycle_counts(vertices: usize, edges: &[(usize, usize)], max_len: usize) -> BTreeMap<usize, usize> {
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, b) in edges {
        *mult.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let m = |a: usize, b: usize| mult.get(&(a.min(b), a.max(b))).copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    out.insert(2, mult.values().map(|&k| k * k.saturating_sub(1) / 2).sum());
    for k in 3..=max_len {
        let mut total = 0;
        let mut subset: Vec<usize> = (0..k).collect();
        if k > vertices {
            out.insert(k, 0);
            continue;
        }
        let orders = all_perms(k - 1);
        loop {
            // first vertex fixed, the rest in every order; each cycle appears twice
            for order in &orders {
                let seq: Vec<usize> = std::iter::once(subset[0]).chain(order.iter().map(|&i| subset[i + 1])).collect();
                total += (0..k).map(|i| m(seq[i], seq[(i + 1) % k])).product::<usize>();
            }
            if !next_subset(&mut subset, vertices) {
                break;
            }
        }
        out.insert(k, total / 2);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_group() {
        // a³ = b³ = (ab)² = 1 has the tetrahedral image A4 in S4
        let rel = vec![vec![(0, 3)], vec![(1, 3)], vec![(0, 1), (1, 1), (0, 1), (1, 1)]];
        assert_eq!(largest_permutation_image(2, &rel, 4), 12);
        assert_eq!(closure_order(&[vec![1, 2, 0]]), 3);
    }

    #[test]
    fn cycles_of_small_graphs() {
        let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(cycle_counts(4, &square, 4), BTreeMap::from([(2, 0), (3, 0), (4, 1)]));
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(cycle_counts(4, &k4, 4), BTreeMap::from([(2, 0), (3, 4), (4, 3)]));
        assert_eq!(cycle_counts(2, &[(0, 1), (0, 1), (1, 0)], 2)[&2], 3);
    }
}
