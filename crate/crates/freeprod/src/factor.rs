//! Factor groups with solvable word problem and normal-form arithmetic in
//! their free product.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("ball of radius {radius} exceeds the element cap {cap}")]
    BallOverflow { radius: usize, cap: usize },
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("bad factor spec `{0}`")]
    BadSpec(String),
    #[error("bad element token `{0}`")]
    BadElement(String),
}

/// Canonical form of a factor-group element.
///
/// Equal elements are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Row index into a multiplication table.
    Table(u32),
    /// Freely reduced word; letter `g + 1` is generator `g`, `-(g + 1)` its inverse.
    Word(Box<[i32]>),
    /// Exponent vector in a free abelian group.
    Exponents(Box<[i32]>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Table(i) => write!(f, "t{i}"),
            Element::Word(w) => {
                f.write_str("w")?;
                for (k, x) in w.iter().enumerate() {
                    if k > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Element::Exponents(v) => {
                f.write_str("v")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl Element {
    pub fn parse(s: &str) -> Result<Element, FactorError> {
        let bad = || FactorError::BadElement(s.to_string());
        let (tag, rest) = s.split_at(s.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(s.len()));
        match tag {
            "t" => rest.parse().map(Element::Table).map_err(|_| bad()),
            "w" | "v" => {
                let sep = if tag == "w" { '.' } else { ',' };
                let xs: Result<Vec<i32>, _> = if rest.is_empty() {
                    Ok(Vec::new())
                } else {
                    rest.split(sep).map(str::parse).collect()
                };
                let xs = xs.map_err(|_| bad())?.into_boxed_slice();
                Ok(if tag == "w" { Element::Word(xs) } else { Element::Exponents(xs) })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `table[a][b]` is the product `a·b`; element 0 is the identity.
    Finite { table: Vec<Vec<u32>>, inverses: Vec<u32> },
    Free { rank: usize },
    FreeAbelian { rank: usize },
}

/// One free factor `G_i` with a symmetric generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorGroup {
    kind: FactorKind,
    /// Named generators before symmetrisation.
    base: Vec<Element>,
    names: Vec<String>,
    symmetric: Vec<Element>,
    spec: String,
}

impl FactorGroup {
    /// Finite group from a multiplication table with identity at index 0.
    pub fn from_table(table: Vec<Vec<u32>>, generators: Vec<u32>, names: Vec<String>) -> Result<Self, FactorError> {
        let n = table.len();
        if n == 0 {
            return Err(FactorError::NotAGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x as usize >= n) {
                return Err(FactorError::NotAGroup("table is not square".into()));
            }
        }
        for a in 0..n {
            if table[0][a] as usize != a || table[a][0] as usize != a {
                return Err(FactorError::NotAGroup("0 is not an identity".into()));
            }
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0);
            inverses[a] = inv.ok_or_else(|| FactorError::NotAGroup(format!("{a} has no inverse")))? as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return Err(FactorError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g as usize >= n) || names.len() != generators.len() {
            return Err(FactorError::NotAGroup("bad generator list".into()));
        }
        let spec = format!(
            "table:{}@{}",
            table
                .iter()
                .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("/"),
            generators.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        );
        let base: Vec<Element> = generators.iter().map(|&g| Element::Table(g)).collect();
        let mut g = FactorGroup {
            kind: FactorKind::Finite { table, inverses },
            base,
            names,
            symmetric: Vec::new(),
            spec,
        };
        g.symmetrise();
        Ok(g)
    }

    /// The cyclic group `Z/n` generated by one named element.
    pub fn cyclic(n: u32, name: &str) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n == 1 { vec![] } else { vec![1] };
        let names = gens.iter().map(|_| name.to_string()).collect();
        let mut g = Self::from_table(table, gens, names).expect("cyclic table is a group");
        g.spec = format!("cyclic:{n}");
        if name == "x0" {
            g.names = default_names(g.names.len());
        }
        g
    }

    pub fn free(rank: usize) -> Self {
        let base = (0..rank).map(|g| Element::Word(vec![g as i32 + 1].into())).collect();
        let mut g = FactorGroup {
            kind: FactorKind::Free { rank },
            base,
            names: default_names(rank),
            symmetric: Vec::new(),
            spec: format!("free:{rank}"),
        };
        g.symmetrise();
        g
    }

    pub fn free_abelian(rank: usize) -> Self {
        let base = (0..rank)
            .map(|g| {
                let mut v = vec![0; rank];
                v[g] = 1;
                Element::Exponents(v.into())
            })
            .collect();
        let mut g = FactorGroup {
            kind: FactorKind::FreeAbelian { rank },
            base,
            names: default_names(rank),
            symmetric: Vec::new(),
            spec: format!("abelian:{rank}"),
        };
        g.symmetrise();
        g
    }

    /// Parse `cyclic:N`, `free:K`, `abelian:K` or `table:ROWS@GENS`
    /// (rows separated by `/`, entries and generators by `,`), optionally
    /// followed by `=NAME,NAME,…` naming the generators.
    pub fn parse_spec(s: &str) -> Result<Self, FactorError> {
        let bad = || FactorError::BadSpec(s.to_string());
        let (body, names) = match s.trim().split_once('=') {
            Some((b, n)) => (b, Some(n.split(',').map(str::to_string).collect::<Vec<_>>())),
            None => (s.trim(), None),
        };
        let mut g = Self::parse_base_spec(body).map_err(|_| bad())?;
        if let Some(names) = names {
            if names.len() != g.names.len() || names.iter().any(|n| n.is_empty()) {
                return Err(bad());
            }
            g.names = names;
        }
        Ok(g)
    }

    fn parse_base_spec(s: &str) -> Result<Self, FactorError> {
        let bad = || FactorError::BadSpec(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "cyclic" => {
                let n: u32 = arg.parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(bad());
                }
                Ok(Self::cyclic(n, "x0"))
            }
            "free" => Ok(Self::free(arg.parse().map_err(|_| bad())?)),
            "abelian" => Ok(Self::free_abelian(arg.parse().map_err(|_| bad())?)),
            "table" => {
                let (rows, gens) = arg.split_once('@').ok_or_else(bad)?;
                let table: Result<Vec<Vec<u32>>, _> = rows
                    .split('/')
                    .map(|r| r.split(',').map(str::parse).collect::<Result<Vec<u32>, _>>())
                    .collect();
                let gens: Result<Vec<u32>, _> = gens.split(',').map(str::parse).collect();
                let gens = gens.map_err(|_| bad())?;
                let names = default_names(gens.len());
                Self::from_table(table.map_err(|_| bad())?, gens, names)
            }
            _ => Err(bad()),
        }
    }

    /// The factor string accepted by [`FactorGroup::parse_spec`].
    pub fn spec(&self) -> String {
        if self.names == default_names(self.names.len()) {
            self.spec.clone()
        } else {
            format!("{}={}", self.spec, self.names.join(","))
        }
    }

    pub fn kind(&self) -> &FactorKind {
        &self.kind
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Named generators (not symmetrised).
    pub fn base_generators(&self) -> &[Element] {
        &self.base
    }

    /// Symmetric generating set: named generators and their inverses, deduplicated.
    pub fn generators(&self) -> &[Element] {
        &self.symmetric
    }

    /// Group order for finite factors.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            FactorKind::Finite { table, .. } => Some(table.len()),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            FactorKind::Finite { .. } => Element::Table(0),
            FactorKind::Free { .. } => Element::Word(Box::new([])),
            FactorKind::FreeAbelian { rank } => Element::Exponents(vec![0; *rank].into()),
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        match a {
            Element::Table(i) => *i == 0,
            Element::Word(w) => w.is_empty(),
            Element::Exponents(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (FactorKind::Finite { table, .. }, Element::Table(x), Element::Table(y)) => {
                Element::Table(table[*x as usize][*y as usize])
            }
            (FactorKind::Free { .. }, Element::Word(x), Element::Word(y)) => {
                let mut out: Vec<i32> = x.to_vec();
                for &l in y.iter() {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Element::Word(out.into())
            }
            (FactorKind::FreeAbelian { .. }, Element::Exponents(x), Element::Exponents(y)) => {
                Element::Exponents(x.iter().zip(y.iter()).map(|(p, q)| p + q).collect())
            }
            _ => panic!("element does not belong to factor {}", self.spec),
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match (&self.kind, a) {
            (FactorKind::Finite { inverses, .. }, Element::Table(x)) => Element::Table(inverses[*x as usize]),
            (FactorKind::Free { .. }, Element::Word(w)) => Element::Word(w.iter().rev().map(|l| -l).collect()),
            (FactorKind::FreeAbelian { .. }, Element::Exponents(v)) => Element::Exponents(v.iter().map(|x| -x).collect()),
            _ => panic!("element does not belong to factor {}", self.spec),
        }
    }

    /// Whether `a` is a well-formed element of this factor.
    pub fn contains(&self, a: &Element) -> bool {
        match (&self.kind, a) {
            (FactorKind::Finite { table, .. }, Element::Table(x)) => (*x as usize) < table.len(),
            (FactorKind::Free { rank }, Element::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (FactorKind::FreeAbelian { rank }, Element::Exponents(v)) => v.len() == *rank,
            _ => false,
        }
    }

    /// Nontrivial elements within word distance `m` of the identity, ordered
    /// by distance and then by canonical form.
    pub fn ball(&self, m: usize, cap: usize) -> Result<Vec<Element>, FactorError> {
        if m == 0 {
            return Err(FactorError::ZeroRadius);
        }
        let id = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
        let mut layer = vec![id];
        let mut out = Vec::new();
        for _ in 0..m {
            let mut next = Vec::new();
            for a in &layer {
                for s in &self.symmetric {
                    let b = self.multiply(a, s);
                    if seen.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            if out.len() > cap {
                return Err(FactorError::BallOverflow { radius: m, cap });
            }
            layer = next;
        }
        Ok(out)
    }

    /// A shortest word in the named generators evaluating to `a`, as
    /// `(generator, ±1)` letters.
    pub fn word_for(&self, a: &Element) -> Vec<(usize, i32)> {
        match (&self.kind, a) {
            (FactorKind::Free { .. }, Element::Word(w)) => {
                w.iter().map(|&l| (l.unsigned_abs() as usize - 1, l.signum())).collect()
            }
            (FactorKind::FreeAbelian { .. }, Element::Exponents(v)) => {
                let mut out = Vec::new();
                for (g, &x) in v.iter().enumerate() {
                    for _ in 0..x.unsigned_abs() {
                        out.push((g, x.signum()));
                    }
                }
                out
            }
            (FactorKind::Finite { table, .. }, Element::Table(target)) => {
                let n = table.len();
                let mut prev: Vec<Option<(usize, usize, i32)>> = vec![None; n];
                let mut seen = vec![false; n];
                seen[0] = true;
                let mut queue = VecDeque::from([0usize]);
                let letters: Vec<(usize, i32, Element)> = self
                    .base
                    .iter()
                    .enumerate()
                    .flat_map(|(g, e)| [(g, 1, e.clone()), (g, -1, self.inverse(e))])
                    .collect();
                while let Some(x) = queue.pop_front() {
                    for (g, s, e) in &letters {
                        let Element::Table(ev) = e else { unreachable!() };
                        let y = table[x][*ev as usize] as usize;
                        if !seen[y] {
                            seen[y] = true;
                            prev[y] = Some((x, *g, *s));
                            queue.push_back(y);
                        }
                    }
                }
                let mut word = Vec::new();
                let mut cur = *target as usize;
                while let Some((p, g, s)) = prev[cur] {
                    word.push((g, s));
                    cur = p;
                }
                assert!(cur == 0, "element not reachable from the generators");
                word.reverse();
                word
            }
            _ => panic!("element does not belong to factor {}", self.spec),
        }
    }

    /// Relators presenting this factor on its named generators.
    ///
    /// Finite factors use the Cayley graph cycles `w_g · s · w_{gs}^{-1}`.
    pub fn presentation_relators(&self) -> Vec<Vec<(usize, i32)>> {
        match &self.kind {
            FactorKind::Free { .. } => Vec::new(),
            FactorKind::FreeAbelian { rank } => {
                let mut out = Vec::new();
                for a in 0..*rank {
                    for b in a + 1..*rank {
                        out.push(vec![(a, 1), (b, 1), (a, -1), (b, -1)]);
                    }
                }
                out
            }
            FactorKind::Finite { table, .. } => {
                let mut out = Vec::new();
                let mut seen = HashSet::new();
                for x in 0..table.len() as u32 {
                    let wx = self.word_for(&Element::Table(x));
                    for (g, e) in self.base.iter().enumerate() {
                        let y = self.multiply(&Element::Table(x), e);
                        let wy = self.word_for(&y);
                        let mut r = wx.clone();
                        r.push((g, 1));
                        r.extend(wy.iter().rev().map(|&(h, s)| (h, -s)));
                        let r = free_reduce(r);
                        if !r.is_empty() && seen.insert(r.clone()) {
                            out.push(r);
                        }
                    }
                }
                out
            }
        }
    }

    fn symmetrise(&mut self) {
        let mut out: Vec<Element> = Vec::new();
        for g in &self.base {
            for e in [g.clone(), self.inverse(g)] {
                if !self.is_identity(&e) && !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        self.symmetric = out;
    }
}

fn default_names(k: usize) -> Vec<String> {
    (0..k).map(|g| format!("x{g}")).collect()
}

fn free_reduce(w: Vec<(usize, i32)>) -> Vec<(usize, i32)> {
    let mut out: Vec<(usize, i32)> = Vec::with_capacity(w.len());
    for l in w {
        if out.last() == Some(&(l.0, -l.1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Per-factor balls `B_i(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallTable {
    pub radius: usize,
    pub balls: Vec<Vec<Element>>,
    index: Vec<HashMap<Element, usize>>,
}

impl BallTable {
    pub fn new(factors: &[FactorGroup], m: usize, cap: usize) -> Result<Self, FactorError> {
        let balls: Vec<Vec<Element>> = factors.iter().map(|g| g.ball(m, cap)).collect::<Result<_, _>>()?;
        let index = balls
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect())
            .collect();
        Ok(BallTable { radius: m, balls, index })
    }

    /// `b_i` for each factor.
    pub fn sizes(&self) -> Vec<usize> {
        self.balls.iter().map(Vec::len).collect()
    }

    /// `B = Σ b_i`.
    pub fn total(&self) -> usize {
        self.balls.iter().map(Vec::len).sum()
    }

    pub fn position(&self, factor: usize, e: &Element) -> Option<usize> {
        self.index.get(factor)?.get(e).copied()
    }

    /// Offset of factor `i` in the concatenation of all balls.
    pub fn offset(&self, factor: usize) -> usize {
        self.balls[..factor].iter().map(Vec::len).sum()
    }
}

/// A maximal factor-group letter of a normal-form word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: usize,
    pub element: Element,
}

impl Syllable {
    pub fn new(factor: usize, element: Element) -> Self {
        Syllable { factor, element }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.factor + 1, self.element)
    }
}

/// Normal-form word of the free product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeProductWord {
    pub syllables: Vec<Syllable>,
}

impl FreeProductWord {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        FreeProductWord { syllables }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.len() <= 1 || self.syllables[0].factor != self.syllables[self.len() - 1].factor
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut s = self.syllables.clone();
        if !s.is_empty() {
            let k = k % s.len();
            s.rotate_left(k);
        }
        FreeProductWord { syllables: s }
    }

    /// Parse whitespace-separated `factor:element` tokens with 1-based factors.
    pub fn parse(s: &str) -> Result<Self, FactorError> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (f, e) = tok.split_once(':').ok_or_else(|| FactorError::BadElement(tok.to_string()))?;
            let f: usize = f.parse().map_err(|_| FactorError::BadElement(tok.to_string()))?;
            if f == 0 {
                return Err(FactorError::BadElement(tok.to_string()));
            }
            out.push(Syllable::new(f - 1, Element::parse(e)?));
        }
        Ok(FreeProductWord { syllables: out })
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The free product `G_1 * … * G_n` with normal-form arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    pub factors: Vec<FactorGroup>,
}

impl FreeProduct {
    pub fn new(factors: Vec<FactorGroup>) -> Self {
        FreeProduct { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &FactorGroup {
        &self.factors[i]
    }

    /// Whether `w` is in normal form over these factors.
    pub fn is_normal(&self, w: &FreeProductWord) -> bool {
        w.syllables.iter().all(|s| {
            s.factor < self.factors.len()
                && self.factors[s.factor].contains(&s.element)
                && !self.factors[s.factor].is_identity(&s.element)
        }) && w.syllables.windows(2).all(|p| p[0].factor != p[1].factor)
    }

    /// Append one syllable, merging with the last syllable when the factors agree.
    pub fn push(&self, w: &mut FreeProductWord, s: Syllable) {
        let g = &self.factors[s.factor];
        if g.is_identity(&s.element) {
            return;
        }
        match w.syllables.last_mut() {
            Some(last) if last.factor == s.factor => {
                let p = g.multiply(&last.element, &s.element);
                if g.is_identity(&p) {
                    w.syllables.pop();
                } else {
                    last.element = p;
                }
            }
            _ => w.syllables.push(s),
        }
    }

    /// Normal form of an arbitrary syllable sequence.
    pub fn normalize(&self, syllables: impl IntoIterator<Item = Syllable>) -> FreeProductWord {
        let mut w = FreeProductWord::empty();
        for s in syllables {
            self.push(&mut w, s);
        }
        w
    }

    /// Normal form of the concatenation `w1 · w2`.
    pub fn multiply(&self, w1: &FreeProductWord, w2: &FreeProductWord) -> FreeProductWord {
        let mut w = w1.clone();
        for s in &w2.syllables {
            self.push(&mut w, s.clone());
        }
        w
    }

    pub fn inverse(&self, w: &FreeProductWord) -> FreeProductWord {
        FreeProductWord {
            syllables: w
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.factor, self.factors[s.factor].inverse(&s.element)))
                .collect(),
        }
    }

    /// A cyclically reduced conjugate of `w`.
    pub fn cyclic_reduce(&self, w: &FreeProductWord) -> FreeProductWord {
        let mut s: VecDeque<Syllable> = w.syllables.iter().cloned().collect();
        while s.len() >= 2 && s[0].factor == s[s.len() - 1].factor {
            let last = s.pop_back().unwrap();
            let first = s.pop_front().unwrap();
            let g = &self.factors[first.factor];
            let p = g.multiply(&last.element, &first.element);
            if !g.is_identity(&p) {
                s.push_front(Syllable::new(first.factor, p));
            }
        }
        FreeProductWord { syllables: s.into() }
    }

    /// All cyclic shifts of `w` and of `w⁻¹`, deduplicated in order of appearance.
    pub fn cyclic_variants(&self, w: &FreeProductWord) -> Vec<FreeProductWord> {
        let inv = self.inverse(w);
        let n = w.len().max(1);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for base in [w, &inv] {
            for k in 0..n {
                let r = base.rotate(k);
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_a() -> FreeProduct {
        FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")])
    }

    fn w(s: &str) -> FreeProductWord {
        FreeProductWord::parse(s).unwrap()
    }

    #[test]
    fn balls_of_small_groups() {
        let z3 = FactorGroup::cyclic(3, "a");
        assert_eq!(z3.ball(1, 100).unwrap(), vec![Element::Table(1), Element::Table(2)]);
        let z = FactorGroup::free_abelian(1);
        let b = z.ball(2, 100).unwrap();
        let mut got: Vec<i32> = b
            .iter()
            .map(|e| match e {
                Element::Exponents(v) => v[0],
                _ => unreachable!(),
            })
            .collect();
        got.sort();
        assert_eq!(got, vec![-2, -1, 1, 2]);
        let z2 = FactorGroup::cyclic(2, "g");
        assert_eq!(z2.ball(3, 100).unwrap(), vec![Element::Table(1)]);
        assert_eq!(z2.generators().len(), 1);
    }

    #[test]
    fn free_ball_sizes_and_overflow() {
        let f2 = FactorGroup::free(2);
        // 4 + 12 reduced words of length 1 and 2.
        assert_eq!(f2.ball(2, 100).unwrap().len(), 16);
        assert!(matches!(f2.ball(6, 100), Err(FactorError::BallOverflow { .. })));
        assert_eq!(f2.ball(0, 10), Err(FactorError::ZeroRadius));
    }

    #[test]
    fn multiply_examples() {
        let g = fixture_a();
        assert!(g.multiply(&w("1:t1"), &w("1:t2")).is_empty());
        assert_eq!(g.multiply(&w("1:t1 2:t1"), &w("2:t2 1:t1")), w("1:t2"));
        assert_eq!(g.multiply(&w("1:t1 2:t1"), &w("1:t1 2:t1")), w("1:t1 2:t1 1:t1 2:t1"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let g = fixture_a();
        assert_eq!(g.cyclic_reduce(&w("1:t1 2:t1 1:t2")), w("2:t1"));
        assert_eq!(g.cyclic_reduce(&w("1:t1 2:t1 1:t1 2:t1")), w("1:t1 2:t1 1:t1 2:t1"));
        assert!(g.cyclic_reduce(&FreeProductWord::empty()).is_empty());
        assert_eq!(g.cyclic_reduce(&w("1:t1 2:t1 1:t1")), w("1:t2 2:t1"));
    }

    #[test]
    fn cyclic_variants_examples() {
        let g = fixture_a();
        let v = g.cyclic_variants(&w("1:t1 2:t1"));
        assert_eq!(v, vec![w("1:t1 2:t1"), w("2:t1 1:t1"), w("2:t2 1:t2"), w("1:t2 2:t2")]);
        // abab has period 2: two distinct shifts plus two of its inverse.
        assert_eq!(g.cyclic_variants(&w("1:t1 2:t1 1:t1 2:t1")).len(), 4);
        assert_eq!(g.cyclic_variants(&w("1:t1")), vec![w("1:t1"), w("1:t2")]);
    }

    #[test]
    fn table_validation_rejects_non_groups() {
        assert!(FactorGroup::from_table(vec![vec![0, 1], vec![1, 1]], vec![1], vec!["a".into()]).is_err());
        assert!(FactorGroup::from_table(vec![vec![1, 0], vec![0, 1]], vec![1], vec!["a".into()]).is_err());
    }

    #[test]
    fn spec_round_trip() {
        for s in ["cyclic:3", "cyclic:3=a", "free:2", "free:2=s,t", "abelian:1", "table:0,1/1,0@1"] {
            let g = FactorGroup::parse_spec(s).unwrap();
            assert_eq!(g.spec(), s);
        }
        assert!(FactorGroup::parse_spec("cyclic:1").is_err());
        assert!(FactorGroup::parse_spec("klein").is_err());
    }

    #[test]
    fn element_tokens_round_trip() {
        for e in [
            Element::Table(7),
            Element::Word(vec![1, -2, 1].into()),
            Element::Exponents(vec![3, -1].into()),
            Element::Word(Box::new([])),
        ] {
            assert_eq!(Element::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn finite_presentation_relators_close_up() {
        let z3 = FactorGroup::cyclic(3, "a");
        let rels = z3.presentation_relators();
        assert!(!rels.is_empty());
        for r in rels {
            let mut acc = z3.identity();
            for (g, s) in r {
                let e = if s > 0 { z3.base_generators()[g].clone() } else { z3.inverse(&z3.base_generators()[g]) };
                acc = z3.multiply(&acc, &e);
            }
            assert!(z3.is_identity(&acc));
        }
    }

    #[test]
    fn word_for_evaluates_back() {
        let z5 = FactorGroup::cyclic(5, "c");
        for x in 0..5 {
            let mut acc = z5.identity();
            for (g, s) in z5.word_for(&Element::Table(x)) {
                let e = z5.base_generators()[g].clone();
                let e = if s > 0 { e } else { z5.inverse(&e) };
                acc = z5.multiply(&acc, &e);
            }
            assert_eq!(acc, Element::Table(x));
        }
        assert!(z5.word_for(&Element::Table(2)).len() <= 2);
    }
}
