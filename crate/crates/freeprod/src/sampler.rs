//! Exact counting and sampling of cyclically reduced words, relator sets at
//! density `d`, and the prefix-collision collapse witness.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use petgraph::unionfind::UnionFind;
use rand::Rng;
use thiserror::Error;

use crate::factor::{BallTable, FactorError, FactorGroup, FreeProduct, FreeProductWord, Syllable};
use crate::scalar::{format_ratio, parse_ratio};

/// Default hard cap on `|R|`.
pub const DEFAULT_RELATOR_CAP: u64 = 1 << 24;
/// Default cap on the size of a single ball `B_i(m)`.
pub const DEFAULT_BALL_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("need at least two factors")]
    TooFewFactors,
    #[error("two factors of order 2 are excluded")]
    InfiniteDihedral,
    #[error("density must lie strictly between 0 and 1")]
    BadDensity,
    #[error("syllable length must be at least 2")]
    ShortLength,
    #[error("no cyclically reduced words of this length")]
    EmptySupport,
    #[error("final choice set of the sequential process is empty")]
    DeadEnd,
    #[error("density exponent too large for exact rounding")]
    ExponentTooLarge,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("relator set format: {0}")]
    Format(String),
}

/// Parameters of `FPD(G; d, m, ℓ)` plus the sampling seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub factors: Vec<FactorGroup>,
    pub density: Ratio<i64>,
    pub m: usize,
    pub ell: usize,
    pub seed: u64,
    pub cap: Option<u64>,
}

impl ModelParams {
    pub fn new(factors: Vec<FactorGroup>, density: Ratio<i64>, m: usize, ell: usize, seed: u64) -> Result<Self, SamplerError> {
        let p = ModelParams { factors, density, m, ell, seed, cap: Some(DEFAULT_RELATOR_CAP) };
        p.validate()?;
        Ok(p)
    }

    pub fn with_cap(mut self, cap: Option<u64>) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.factors.len() < 2 {
            return Err(SamplerError::TooFewFactors);
        }
        if self.factors.len() == 2 && self.factors.iter().all(|g| g.order() == Some(2)) {
            return Err(SamplerError::InfiniteDihedral);
        }
        if self.density <= Ratio::zero() || self.density >= Ratio::one() {
            return Err(SamplerError::BadDensity);
        }
        if self.ell < 2 {
            return Err(SamplerError::ShortLength);
        }
        if self.m == 0 {
            return Err(FactorError::ZeroRadius.into());
        }
        Ok(())
    }
}

/// Transfer matrix `A[i][j] = b_j (i ≠ j)` with cached powers.
#[derive(Clone, Debug)]
pub struct TransferCounts {
    pub b: Vec<u64>,
    powers: Vec<Vec<Vec<BigUint>>>,
    fast: Option<Vec<Vec<Vec<u128>>>>,
    total: BigUint,
}

impl TransferCounts {
    pub fn new(b: &[usize], ell: usize) -> Self {
        let n = b.len();
        let b: Vec<u64> = b.iter().map(|&x| x as u64).collect();
        let a: Vec<Vec<BigUint>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigUint::zero() } else { BigUint::from(b[j]) }).collect())
            .collect();
        let mut powers = Vec::with_capacity(ell + 1);
        powers.push(identity_matrix(n));
        for t in 1..=ell {
            powers.push(mat_mul(&powers[t - 1], &a));
        }
        let total = (0..n).fold(BigUint::zero(), |acc, i| acc + &powers[ell][i][i]);
        let row_max = b.iter().sum::<u64>().max(1);
        let bits = (row_max as f64).log2() * (ell as f64 + 1.0);
        let fast = (bits < 120.0).then(|| {
            powers
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(|x| x.to_u128().unwrap()).collect()).collect())
                .collect()
        });
        TransferCounts { b, powers, fast, total }
    }

    /// `|S_ℓ| = trace(A^ℓ)`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Entry `(A^t)[i][j]`.
    pub fn entry(&self, t: usize, i: usize, j: usize) -> &BigUint {
        &self.powers[t][i][j]
    }

    pub fn ell(&self) -> usize {
        self.powers.len() - 1
    }

    /// Draw a factor cycle `i_1 … i_ℓ` with probability proportional to `Π b_{i_k}`.
    fn sample_cycle<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.b.len();
        let ell = self.ell();
        let mut cycle = Vec::with_capacity(ell);
        if let Some(p) = &self.fast {
            let total: u128 = (0..n).map(|i| p[ell][i][i]).sum();
            let first = pick_u128(rng, total, (0..n).map(|i| p[ell][i][i]));
            cycle.push(first);
            let mut cur = first;
            for k in 1..ell {
                let t = ell - k;
                let w = |j: usize| if j == cur { 0 } else { self.b[j] as u128 * p[t][j][first] };
                let tot: u128 = (0..n).map(w).sum();
                cur = pick_u128(rng, tot, (0..n).map(w));
                cycle.push(cur);
            }
        } else {
            let p = &self.powers;
            let first = pick_big(rng, &self.total, (0..n).map(|i| p[ell][i][i].clone()));
            cycle.push(first);
            let mut cur = first;
            for k in 1..ell {
                let t = ell - k;
                let w = |j: usize| if j == cur { BigUint::zero() } else { &p[t][j][first] * self.b[j] };
                let tot = (0..n).map(w).fold(BigUint::zero(), |a, x| a + x);
                cur = pick_big(rng, &tot, (0..n).map(w));
                cycle.push(cur);
            }
        }
        cycle
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<BigUint>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect()).collect()
}

fn mat_mul(x: &[Vec<BigUint>], y: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(BigUint::zero(), |acc, k| acc + &x[i][k] * &y[k][j])).collect())
        .collect()
}

fn pick_u128<R: Rng + ?Sized>(rng: &mut R, total: u128, weights: impl Iterator<Item = u128>) -> usize {
    let mut r = rng.gen_range(0..total);
    for (i, w) in weights.enumerate() {
        if r < w {
            return i;
        }
        r -= w;
    }
    unreachable!("weights sum to total")
}

fn pick_big<R: Rng + ?Sized>(rng: &mut R, total: &BigUint, weights: impl Iterator<Item = BigUint>) -> usize {
    let mut r = rng.gen_biguint_below(total);
    for (i, w) in weights.enumerate() {
        if r < w {
            return i;
        }
        r -= w;
    }
    unreachable!("weights sum to total")
}

/// Compiled model: validated parameters, balls and transfer counts.
#[derive(Clone, Debug)]
pub struct Model {
    pub params: ModelParams,
    pub product: FreeProduct,
    pub balls: BallTable,
    pub counts: TransferCounts,
}

impl Model {
    pub fn new(params: ModelParams) -> Result<Self, SamplerError> {
        Self::with_ball_cap(params, DEFAULT_BALL_CAP)
    }

    pub fn with_ball_cap(params: ModelParams, ball_cap: usize) -> Result<Self, SamplerError> {
        params.validate()?;
        let balls = BallTable::new(&params.factors, params.m, ball_cap)?;
        let counts = TransferCounts::new(&balls.sizes(), params.ell);
        let product = FreeProduct::new(params.factors.clone());
        Ok(Model { params, product, balls, counts })
    }

    pub fn ell(&self) -> usize {
        self.params.ell
    }
}

/// `|S_ℓ|`, the number of cyclically reduced words with `ℓ` syllables.
pub fn count_s(model: &Model) -> BigUint {
    model.counts.total().clone()
}

/// Smallest integer `k` with `k ≥ n^d`, computed exactly.
pub fn ceil_power(n: &BigUint, d: Ratio<i64>) -> Result<BigUint, SamplerError> {
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let (p, q) = (*d.numer(), *d.denom());
    if p <= 0 || q <= 0 {
        return Err(SamplerError::BadDensity);
    }
    if (p as u64).saturating_mul(n.bits()) > 1 << 22 || q > u32::MAX as i64 {
        return Err(SamplerError::ExponentTooLarge);
    }
    let np = n.pow(p as u32);
    let mut k = np.nth_root(q as u32);
    if k.pow(q as u32) < np {
        k += 1u32;
    }
    Ok(k)
}

/// `⌈|S_ℓ|^d⌉`.
pub fn relator_target(model: &Model) -> Result<BigUint, SamplerError> {
    ceil_power(model.counts.total(), model.params.density)
}

/// Exactly uniform draw from `S_ℓ`.
pub fn sample_uniform<R: Rng + ?Sized>(model: &Model, rng: &mut R) -> Result<FreeProductWord, SamplerError> {
    if model.counts.total().is_zero() {
        return Err(SamplerError::EmptySupport);
    }
    let cycle = model.counts.sample_cycle(rng);
    let syllables = cycle
        .into_iter()
        .map(|i| {
            let ball = &model.balls.balls[i];
            Syllable::new(i, ball[rng.gen_range(0..ball.len())].clone())
        })
        .collect();
    Ok(FreeProductWord::new(syllables))
}

fn pick_from_union<R: Rng + ?Sized>(balls: &BallTable, excluded: &[usize], rng: &mut R) -> Option<Syllable> {
    let size: usize = balls
        .balls
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded.contains(i))
        .map(|(_, b)| b.len())
        .sum();
    if size == 0 {
        return None;
    }
    let mut r = rng.gen_range(0..size);
    for (i, b) in balls.balls.iter().enumerate() {
        if excluded.contains(&i) {
            continue;
        }
        if r < b.len() {
            return Some(Syllable::new(i, b[r].clone()));
        }
        r -= b.len();
    }
    unreachable!()
}

/// The sequential syllable-by-syllable process.
///
/// Uniform over `S_ℓ` only when all `b_i` agree; see [`process_tv_distance`].
pub fn sample_process<R: Rng + ?Sized>(model: &Model, rng: &mut R) -> Result<FreeProductWord, SamplerError> {
    let ell = model.ell();
    let balls = &model.balls;
    let mut out: Vec<Syllable> = Vec::with_capacity(ell);
    out.push(pick_from_union(balls, &[], rng).ok_or(SamplerError::EmptySupport)?);
    for _ in 1..ell - 1 {
        let prev = out.last().unwrap().factor;
        out.push(pick_from_union(balls, &[prev], rng).ok_or(SamplerError::DeadEnd)?);
    }
    let excluded = [out[0].factor, out[ell - 2].factor];
    out.push(pick_from_union(balls, &excluded, rng).ok_or(SamplerError::DeadEnd)?);
    Ok(FreeProductWord::new(out))
}

/// Per-word probability of a factor cycle under the sequential process.
fn process_probability(b: &[f64], cycle: &[usize]) -> f64 {
    let total: f64 = b.iter().sum();
    let ell = cycle.len();
    let mut p = 1.0 / total;
    for k in 1..ell - 1 {
        p /= total - b[cycle[k - 1]];
    }
    let (i1, il) = (cycle[0], cycle[ell - 2]);
    let last = if i1 == il { total - b[i1] } else { total - b[i1] - b[il] };
    p / last
}

/// Exact total-variation distance between the sequential process (conditioned
/// on not dead-ending) and the uniform distribution on `S_ℓ`, by enumerating
/// factor cycles.
pub fn process_tv_distance(model: &Model) -> Result<f64, SamplerError> {
    let b: Vec<f64> = model.balls.sizes().iter().map(|&x| x as f64).collect();
    let n = b.len();
    let ell = model.ell();
    let support = model.counts.total().to_f64().unwrap_or(f64::INFINITY);
    if support == 0.0 {
        return Err(SamplerError::EmptySupport);
    }
    let mut cycles: Vec<(f64, f64)> = Vec::new();
    let mut stack = vec![0usize; ell];
    fn rec(k: usize, n: usize, stack: &mut Vec<usize>, b: &[f64], out: &mut Vec<(f64, f64)>) {
        let ell = stack.len();
        if k == ell {
            if stack[ell - 1] != stack[0] {
                let words: f64 = stack.iter().map(|&i| b[i]).product();
                out.push((words, process_probability(b, stack)));
            }
            return;
        }
        for i in 0..n {
            if k > 0 && stack[k - 1] == i {
                continue;
            }
            stack[k] = i;
            rec(k + 1, n, stack, b, out);
        }
    }
    rec(0, n, &mut stack, &b, &mut cycles);
    let success: f64 = cycles.iter().map(|(w, p)| w * p).sum();
    let tv = cycles.iter().map(|(w, p)| w * (p / success - 1.0 / support).abs()).sum::<f64>() / 2.0;
    Ok(tv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerKind {
    ExactUniform,
    Process,
}

impl SamplerKind {
    pub fn tag(self) -> &'static str {
        match self {
            SamplerKind::ExactUniform => "exact-uniform",
            SamplerKind::Process => "sequential",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "exact-uniform" => Some(SamplerKind::ExactUniform),
            "sequential" => Some(SamplerKind::Process),
            _ => None,
        }
    }
}

/// A sampled multiset of relators with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorSet {
    pub relators: Vec<FreeProductWord>,
    pub params: ModelParams,
    pub sampler: SamplerKind,
    /// `⌈|S_ℓ|^d⌉` before applying the cap.
    pub target: BigUint,
    /// Set when the cap cut the multiset short of `target`.
    pub truncated: bool,
}

/// Draw `⌈|S_ℓ|^d⌉` relators with replacement, truncated at the cap.
pub fn sample_relator_set<R: Rng + ?Sized>(model: &Model, sampler: SamplerKind, rng: &mut R) -> Result<RelatorSet, SamplerError> {
    if model.counts.total().is_zero() {
        return Err(SamplerError::EmptySupport);
    }
    let target = relator_target(model)?;
    let want = target.to_u64().unwrap_or(u64::MAX);
    let size = model.params.cap.map_or(want, |c| want.min(c));
    let mut relators = Vec::with_capacity(size as usize);
    for _ in 0..size {
        relators.push(match sampler {
            SamplerKind::ExactUniform => sample_uniform(model, rng)?,
            SamplerKind::Process => sample_process(model, rng)?,
        });
    }
    Ok(RelatorSet { relators, params: model.params.clone(), sampler, truncated: size < want, target })
}

impl RelatorSet {
    /// Line-oriented text form; [`RelatorSet::parse`] inverts it exactly.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        s.push_str("relator-set 1\n");
        s.push_str(&format!(
            "factors {}\n",
            p.factors.iter().map(|g| g.spec()).collect::<Vec<_>>().join(" ")
        ));
        s.push_str(&format!("m {}\nell {}\ndensity {}\nseed {}\n", p.m, p.ell, format_ratio(&p.density), p.seed));
        s.push_str(&format!("cap {}\n", p.cap.map_or("none".to_string(), |c| c.to_string())));
        s.push_str(&format!("sampler {}\ntarget {}\ntruncated {}\n", self.sampler.tag(), self.target, self.truncated));
        s.push_str(&format!("count {}\n---\n", self.relators.len()));
        for r in &self.relators {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, SamplerError> {
        let bad = |m: &str| SamplerError::Format(m.to_string());
        let mut lines = text.lines();
        if lines.next() != Some("relator-set 1") {
            return Err(bad("missing header"));
        }
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for line in lines.by_ref() {
            if line == "---" {
                break;
            }
            let (k, v) = line.split_once(' ').ok_or_else(|| bad(line))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
        let factors = get("factors")?
            .split_whitespace()
            .map(FactorGroup::parse_spec)
            .collect::<Result<Vec<_>, _>>()?;
        let num = |k: &str| -> Result<u64, SamplerError> { get(k)?.parse().map_err(|_| bad(k)) };
        let density = parse_ratio(get("density")?).ok_or_else(|| bad("density"))?;
        let cap = match get("cap")? {
            "none" => None,
            c => Some(c.parse().map_err(|_| bad("cap"))?),
        };
        let params = ModelParams {
            factors,
            density,
            m: num("m")? as usize,
            ell: num("ell")? as usize,
            seed: num("seed")?,
            cap,
        };
        let sampler = SamplerKind::from_tag(get("sampler")?).ok_or_else(|| bad("sampler"))?;
        let target: BigUint = get("target")?.parse().map_err(|_| bad("target"))?;
        let truncated = get("truncated")? == "true";
        let count = num("count")? as usize;
        let relators = lines.map(FreeProductWord::parse).collect::<Result<Vec<_>, _>>()?;
        if relators.len() != count {
            return Err(bad("relator count mismatch"));
        }
        Ok(RelatorSet { relators, params, sampler, target, truncated })
    }
}

/// Two relators `wb`, `wb′` sharing the prefix `w` with `b ≠ b′`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Collision {
    pub prefix: Vec<Syllable>,
    /// Ordered so that `pair.0 < pair.1`.
    pub pair: (Syllable, Syllable),
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = FreeProductWord::new(self.prefix.clone());
        write!(f, "[{w}] ({}, {})", self.pair.0, self.pair.1)
    }
}

/// All distinct last-syllable pairs over relators sharing an `(ℓ−1)`-prefix,
/// sorted.
pub fn prefix_collisions(relators: &[FreeProductWord]) -> Vec<Collision> {
    let mut groups: HashMap<&[Syllable], BTreeSet<&Syllable>> = HashMap::new();
    for r in relators {
        if let Some((last, prefix)) = r.syllables.split_last() {
            groups.entry(prefix).or_default().insert(last);
        }
    }
    let mut out = Vec::new();
    for (prefix, lasts) in groups {
        let lasts: Vec<&Syllable> = lasts.into_iter().collect();
        for i in 0..lasts.len() {
            for j in i + 1..lasts.len() {
                out.push(Collision { prefix: prefix.to_vec(), pair: (lasts[i].clone(), lasts[j].clone()) });
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DihedralVerdict {
    Collapsed,
    /// Fraction of the required ball identifications achieved.
    Partial(f64),
    None,
}

impl DihedralVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            DihedralVerdict::Collapsed => "collapsed",
            DihedralVerdict::Partial(_) => "partial",
            DihedralVerdict::None => "none",
        }
    }

    pub fn fraction(&self) -> f64 {
        match self {
            DihedralVerdict::Collapsed => 1.0,
            DihedralVerdict::Partial(f) => *f,
            DihedralVerdict::None => 0.0,
        }
    }
}

/// Union-find over `∪ B_i(m)` driven by prefix collisions.
pub fn dihedral_witness(balls: &BallTable, relators: &[FreeProductWord]) -> DihedralVerdict {
    let total = balls.total();
    let n = balls.balls.len();
    let mut uf = UnionFind::<usize>::new(total);
    let idx = |s: &Syllable| balls.position(s.factor, &s.element).map(|p| balls.offset(s.factor) + p);
    for c in prefix_collisions(relators) {
        if let (Some(a), Some(b)) = (idx(&c.pair.0), idx(&c.pair.1)) {
            uf.union(a, b);
        }
    }
    let labels = uf.into_labeling();
    let (required, achieved) = if n >= 3 {
        let classes: BTreeSet<usize> = labels.iter().copied().collect();
        (total - 1, total - classes.len())
    } else {
        let mut req = 0;
        let mut ach = 0;
        for i in 0..n {
            let off = balls.offset(i);
            let len = balls.balls[i].len();
            let classes: BTreeSet<usize> = labels[off..off + len].iter().copied().collect();
            req += len - 1;
            ach += len - classes.len();
        }
        (req, ach)
    };
    if relators.is_empty() || achieved == 0 {
        DihedralVerdict::None
    } else if achieved >= required {
        DihedralVerdict::Collapsed
    } else {
        DihedralVerdict::Partial(achieved as f64 / required as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fixture_a(ell: usize, d: Ratio<i64>) -> Model {
        let f = vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")];
        Model::new(ModelParams::new(f, d, 1, ell, 7).unwrap()).unwrap()
    }

    fn w(s: &str) -> FreeProductWord {
        FreeProductWord::parse(s).unwrap()
    }

    #[test]
    fn counts_for_fixture_a() {
        let half = Ratio::new(1, 2);
        assert_eq!(count_s(&fixture_a(4, half)), BigUint::from(32u32));
        assert_eq!(count_s(&fixture_a(5, half)), BigUint::zero());
        assert_eq!(count_s(&fixture_a(30, half)), BigUint::from(1u64 << 31));
    }

    #[test]
    fn relator_targets() {
        assert_eq!(relator_target(&fixture_a(4, Ratio::new(1, 2))).unwrap(), BigUint::from(6u32));
        assert_eq!(relator_target(&fixture_a(30, Ratio::new(3, 5))).unwrap(), BigUint::from(397_337u32));
        // For |S_ℓ| ≥ 2 and small d the target is 2, not 1.
        assert_eq!(relator_target(&fixture_a(4, Ratio::new(1, 1000))).unwrap(), BigUint::from(2u32));
        assert_eq!(ceil_power(&BigUint::one(), Ratio::new(1, 1000)).unwrap(), BigUint::one());
        assert_eq!(ceil_power(&BigUint::from(16u32), Ratio::new(1, 2)).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn params_guard() {
        let z2 = || FactorGroup::cyclic(2, "g");
        assert_eq!(
            ModelParams::new(vec![z2(), z2()], Ratio::new(1, 2), 1, 4, 0),
            Err(SamplerError::InfiniteDihedral)
        );
        assert!(ModelParams::new(vec![z2(), z2(), z2()], Ratio::new(1, 2), 1, 4, 0).is_ok());
        assert_eq!(
            ModelParams::new(vec![z2(), z2(), z2()], Ratio::new(1, 1), 1, 4, 0),
            Err(SamplerError::BadDensity)
        );
        assert_eq!(ModelParams::new(vec![z2()], Ratio::new(1, 2), 1, 4, 0), Err(SamplerError::TooFewFactors));
    }

    #[test]
    fn empty_support_and_dead_end() {
        let m = fixture_a(5, Ratio::new(1, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_uniform(&m, &mut rng), Err(SamplerError::EmptySupport));
        assert_eq!(sample_process(&m, &mut rng), Err(SamplerError::DeadEnd));
        let m4 = fixture_a(4, Ratio::new(1, 2));
        for _ in 0..100 {
            let r = sample_process(&m4, &mut rng).unwrap();
            assert!(r.is_cyclically_reduced() && r.len() == 4);
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let m = fixture_a(10, Ratio::new(1, 2));
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| sample_uniform(&m, &mut rng).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }

    #[test]
    fn relator_set_text_round_trip() {
        let m = fixture_a(6, Ratio::new(1, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = sample_relator_set(&m, SamplerKind::ExactUniform, &mut rng).unwrap();
        let text = r.to_text();
        let back = RelatorSet::parse(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn cap_truncates_and_flags() {
        let f = vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")];
        let p = ModelParams::new(f, Ratio::new(1, 2), 1, 10, 0).unwrap().with_cap(Some(5));
        let m = Model::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = sample_relator_set(&m, SamplerKind::ExactUniform, &mut rng).unwrap();
        assert_eq!(r.relators.len(), 5);
        assert!(r.truncated);
    }

    #[test]
    fn collisions_examples() {
        let r = vec![w("1:t1 2:t1 1:t1 2:t1"), w("1:t1 2:t1 1:t1 2:t2")];
        let c = prefix_collisions(&r);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].prefix, w("1:t1 2:t1 1:t1").syllables);
        assert_eq!(c[0].pair, (Syllable::new(1, crate::factor::Element::Table(1)), Syllable::new(1, crate::factor::Element::Table(2))));
        assert!(prefix_collisions(&r[..1]).is_empty());
    }

    #[test]
    fn witness_examples() {
        let m = fixture_a(4, Ratio::new(1, 2));
        let r = vec![
            w("1:t1 2:t1 1:t1 2:t1"),
            w("1:t1 2:t1 1:t1 2:t2"),
            w("2:t1 1:t1 2:t1 1:t1"),
            w("2:t1 1:t1 2:t1 1:t2"),
        ];
        assert_eq!(dihedral_witness(&m.balls, &r), DihedralVerdict::Collapsed);
        assert_eq!(dihedral_witness(&m.balls, &r[..2]), DihedralVerdict::Partial(0.5));
        assert_eq!(dihedral_witness(&m.balls, &[]), DihedralVerdict::None);
    }

    #[test]
    fn process_tv_is_zero_for_equal_balls() {
        let z2 = || FactorGroup::cyclic(2, "g");
        let p = ModelParams::new(vec![z2(), z2(), z2()], Ratio::new(1, 2), 1, 3, 0).unwrap();
        assert!(process_tv_distance(&Model::new(p).unwrap()).unwrap() < 1e-12);
        let f = vec![FactorGroup::cyclic(2, "a"), FactorGroup::cyclic(3, "b"), FactorGroup::cyclic(5, "c")];
        let p = ModelParams::new(f, Ratio::new(1, 2), 1, 4, 0).unwrap();
        assert!(process_tv_distance(&Model::new(p).unwrap()).unwrap() > 1e-3);
    }
}
