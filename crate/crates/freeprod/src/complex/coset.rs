//! Coset enumeration over the trivial subgroup by relator tracing.

use std::collections::VecDeque;

use crate::factor::{FreeProduct, FreeProductWord};

use super::ComplexError;

/// Letters are `(generator, ±1)`.
pub type Letter = (usize, i32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self, ComplexError> {
        if relators.iter().flatten().any(|&(g, s)| g >= generators.len() || s.abs() != 1) {
            return Err(ComplexError::BadPresentation("letter out of range".into()));
        }
        Ok(Presentation { generators, relators })
    }

    /// Parse `a, b | a^3, b^3, (ab)^2`. Generator names are identifiers,
    /// matched longest first; `^n` takes any integer exponent.
    pub fn parse(s: &str) -> Result<Self, ComplexError> {
        let bad = |m: &str| ComplexError::BadPresentation(m.to_string());
        let (gens, rels) = s.split_once('|').ok_or_else(|| bad("missing '|'"))?;
        let generators: Vec<String> = gens.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
        if generators.iter().any(|g| !g.chars().all(|c| c.is_alphanumeric() || c == '_')) {
            return Err(bad("generator names must be identifiers"));
        }
        let mut relators = Vec::new();
        for r in rels.split(',') {
            let r: String = r.chars().filter(|c| !c.is_whitespace()).collect();
            if r.is_empty() {
                continue;
            }
            let chars: Vec<char> = r.chars().collect();
            let mut pos = 0;
            let word = parse_seq(&chars, &mut pos, &generators).map_err(|m| bad(&m))?;
            if pos != chars.len() {
                return Err(bad(&format!("unexpected '{}' in {r}", chars[pos])));
            }
            relators.push(word);
        }
        Presentation::new(generators, relators)
    }

    /// Presentation of `(G_1 * … * G_n) / ⟨⟨R⟩⟩` on the named generators
    /// of the factors, numbered factor by factor.
    pub fn of_quotient(product: &FreeProduct, relators: &[FreeProductWord]) -> Self {
        let offsets = generator_offsets(product);
        let mut generators = Vec::new();
        let mut rels = Vec::new();
        for (i, g) in product.factors.iter().enumerate() {
            generators.extend(g.generator_names().iter().map(|n| format!("{n}{}", i + 1)));
            rels.extend(g.presentation_relators().into_iter().map(|r| r.into_iter().map(|(x, s)| (x + offsets[i], s)).collect::<Vec<_>>()));
        }
        for w in relators {
            let mut r = Vec::new();
            for s in &w.syllables {
                r.extend(product.factor(s.factor).word_for(&s.element).into_iter().map(|(x, e)| (x + offsets[s.factor], e)));
            }
            rels.push(r);
        }
        Presentation { generators, relators: rels }
    }
}

/// First generator index of each factor in [`Presentation::of_quotient`].
pub fn generator_offsets(product: &FreeProduct) -> Vec<usize> {
    let mut out = Vec::with_capacity(product.rank() + 1);
    let mut acc = 0;
    for g in &product.factors {
        out.push(acc);
        acc += g.generator_names().len();
    }
    out.push(acc);
    out
}

fn parse_seq(chars: &[char], pos: &mut usize, gens: &[String]) -> Result<Vec<Letter>, String> {
    let mut out = Vec::new();
    while *pos < chars.len() && chars[*pos] != ')' {
        let base = if chars[*pos] == '(' {
            *pos += 1;
            let inner = parse_seq(chars, pos, gens)?;
            if chars.get(*pos) != Some(&')') {
                return Err("unbalanced parentheses".into());
            }
            *pos += 1;
            inner
        } else {
            let rest: String = chars[*pos..].iter().collect();
            let g = (0..gens.len()).filter(|&g| rest.starts_with(gens[g].as_str())).max_by_key(|&g| gens[g].len()).ok_or_else(|| format!("unknown generator at '{rest}'"))?;
            *pos += gens[g].chars().count();
            vec![(g, 1)]
        };
        let mut exp = 1i64;
        if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            if chars.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while chars.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let s: String = chars[start..*pos].iter().collect();
            exp = s.parse().map_err(|_| format!("bad exponent '{s}'"))?;
        }
        let unit: Vec<Letter> = if exp < 0 { base.iter().rev().map(|&(g, s)| (g, -s)).collect() } else { base };
        for _ in 0..exp.unsigned_abs() {
            out.extend_from_slice(&unit);
        }
    }
    Ok(out)
}

/// Right action of the generators on cosets. Coset 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `table[c][2g]` is `c·g` and `table[c][2g + 1]` is `c·g⁻¹`.
    table: Vec<Vec<Option<usize>>>,
    generators: usize,
}

fn column((g, s): Letter) -> usize {
    2 * g + usize::from(s < 0)
}

impl CosetTable {
    /// A table from the forward action of each generator; inverse columns
    /// are derived where the action is injective.
    pub fn from_action(generators: usize, forward: Vec<Vec<Option<usize>>>) -> Self {
        let n = forward.len();
        let mut table = vec![vec![None; 2 * generators]; n];
        for (c, row) in forward.iter().enumerate() {
            for (g, &t) in row.iter().enumerate().take(generators) {
                table[c][2 * g] = t;
                if let Some(t) = t.filter(|&t| t < n) {
                    table[t][2 * g + 1] = Some(c);
                }
            }
        }
        CosetTable { table, generators }
    }

    pub fn coset_count(&self) -> usize {
        self.table.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn act(&self, c: usize, letter: Letter) -> Option<usize> {
        self.table.get(c)?.get(column(letter)).copied().flatten()
    }

    pub fn apply(&self, c: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(c, |c, &l| self.act(c, l))
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|t| t.is_some_and(|t| t < self.table.len())))
    }

    /// Index of the first relator that fails to fix some coset.
    pub fn failing_relator(&self, relators: &[Vec<Letter>]) -> Option<usize> {
        relators.iter().position(|r| (0..self.coset_count()).any(|c| self.apply(c, r) != Some(c)))
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.coset_count()];
        let mut queue = VecDeque::new();
        if !seen.is_empty() {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(c) = queue.pop_front() {
            for t in self.table[c].iter().flatten() {
                if *t < seen.len() && !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

struct Enumerator {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    max: usize,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), ComplexError> {
        if self.table.len() >= self.max {
            return Err(ComplexError::Overflow(self.max));
        }
        let n = self.table.len();
        let cols = self.table[c].len();
        self.table.push(vec![None; cols]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.table[e].len() {
                if let Some(f) = self.table[e][x] {
                    self.table[f][x ^ 1] = None;
                    let (e1, f1) = (self.rep(e), self.rep(f));
                    if let Some(t) = self.table[e1][x] {
                        self.merge(f1, t, &mut queue);
                    } else if let Some(t) = self.table[f1][x ^ 1] {
                        self.merge(e1, t, &mut queue);
                    } else {
                        self.table[e1][x] = Some(f1);
                        self.table[f1][x ^ 1] = Some(e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), ComplexError> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][word[i]] {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.table[b][word[j as usize] ^ 1] {
                    Some(t) => {
                        b = t;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][word[i]] = Some(b);
                self.table[b][word[i] ^ 1] = Some(f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Complete coset table of the trivial subgroup, so the coset count is the
/// group order. Cosets are renumbered in breadth-first order from the
/// identity.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<CosetTable, ComplexError> {
    let cols = 2 * p.generators.len();
    let words: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&l| column(l)).collect()).collect();
    let mut en = Enumerator { table: vec![vec![None; cols]], parent: vec![0], max: max_cosets.max(1) };
    let mut c = 0;
    while c < en.table.len() {
        if en.parent[c] == c {
            for w in &words {
                if en.parent[c] != c {
                    break;
                }
                en.scan_and_fill(c, w)?;
            }
            for x in 0..cols {
                if en.parent[c] == c && en.table[c][x].is_none() {
                    en.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    // renumber the live cosets breadth first
    let mut index = vec![None; en.table.len()];
    let mut order = vec![0];
    index[0] = Some(0);
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        k += 1;
        for x in 0..cols {
            let t = en.rep(en.table[c][x].expect("complete after enumeration"));
            if index[t].is_none() {
                index[t] = Some(order.len());
                order.push(t);
            }
        }
    }
    let mut table = vec![vec![None; cols]; order.len()];
    for (i, &c) in order.iter().enumerate() {
        for x in 0..cols {
            let t = en.rep(en.table[c][x].expect("complete"));
            table[i][x] = index[t];
        }
    }
    Ok(CosetTable { table, generators: p.generators.len() })
}
