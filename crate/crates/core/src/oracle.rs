//! Ground-truth distributions: exhaustive enumeration of `[k]^n`, a transfer
//! dynamic program over the last letter, and enumeration of rearrangement
//! classes for `X,Y`-descents.
//!
//! Both word engines produce a [`DistPolynomial`], the exact map from
//! [`StatVector`] to the number of words realizing it. They share nothing but
//! the word types, so equality between them is a meaningful check.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::binom::multinomial;
use crate::error::{Error, Result};
use crate::word::{stat_vector_unchecked, BlockPartition, Letter, PairKind, Stat, StatVector};

pub const BUDGET_ENV: &str = "WORDSTAT_ENUM_BUDGET";
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Upper bound on the number of objects the exhaustive engines will visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget(pub u64);

impl EnumerationBudget {
    /// Reads `WORDSTAT_ENUM_BUDGET`, falling back to `2^24`.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(EnumerationBudget)
            .unwrap_or_default()
    }

    fn admit(&self, requested: &BigUint) -> Result<()> {
        if *requested > BigUint::from(self.0) {
            return Err(Error::BudgetExceeded {
                requested: requested.to_string(),
                limit: self.0,
            });
        }
        Ok(())
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget(DEFAULT_BUDGET)
    }
}

/// Exact joint distribution of [`StatVector`] over all words of `[k]^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistPolynomial {
    k: u32,
    n: u32,
    partition: BlockPartition,
    entries: BTreeMap<StatVector, BigUint>,
}

impl DistPolynomial {
    fn new(partition: &BlockPartition, n: u32) -> Self {
        DistPolynomial {
            k: partition.k(),
            n,
            partition: partition.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn entries(&self) -> &BTreeMap<StatVector, BigUint> {
        &self.entries
    }

    pub fn get(&self, sv: &StatVector) -> BigUint {
        self.entries.get(sv).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> BigUint {
        self.entries.values().sum()
    }

    fn add(&mut self, sv: StatVector, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry(sv).or_default() += count;
    }

    /// Pointwise sum, used to combine shards over the same `(k, n, partition)`.
    pub fn merge(&mut self, other: DistPolynomial) -> Result<()> {
        if self.k != other.k || self.n != other.n || self.partition != other.partition {
            return Err(Error::invalid(
                "cannot merge distributions over different contexts",
            ));
        }
        for (sv, c) in other.entries {
            self.add(sv, c);
        }
        Ok(())
    }

    /// Distribution of one coordinate: value -> number of words.
    pub fn marginal(&self, block: u32, stat: Stat) -> Result<BTreeMap<u32, BigUint>> {
        self.partition.check_block(block)?;
        let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (sv, c) in &self.entries {
            *out.entry(sv.get(block, stat)).or_default() += c;
        }
        Ok(out)
    }

    /// Number of words whose statistics satisfy every constraint.
    pub fn count_matching(&self, c: &ConstraintSpec) -> Result<BigUint> {
        c.validate(&self.partition)?;
        Ok(self
            .entries
            .iter()
            .filter(|(sv, _)| c.accepts(sv))
            .map(|(_, n)| n)
            .sum())
    }

    /// Image under a map of statistic vectors, e.g. a relabeling of blocks.
    pub fn map_keys(&self, f: impl Fn(&StatVector) -> StatVector) -> BTreeMap<StatVector, BigUint> {
        let mut out: BTreeMap<StatVector, BigUint> = BTreeMap::new();
        for (sv, c) in &self.entries {
            *out.entry(f(sv)).or_default() += c;
        }
        out
    }
}

/// Required exact values for selected `(block, statistic)` coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSpec {
    required: Vec<(u32, Stat, u32)>,
}

impl ConstraintSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Requires statistic `stat` of 1-based `block` to equal `value`.
    pub fn require(mut self, block: u32, stat: Stat, value: u32) -> Self {
        self.required.push((block, stat, value));
        self
    }

    pub fn constraints(&self) -> &[(u32, Stat, u32)] {
        &self.required
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty()
    }

    pub fn validate(&self, p: &BlockPartition) -> Result<()> {
        for &(block, _, _) in &self.required {
            p.check_block(block)?;
        }
        Ok(())
    }

    fn accepts(&self, sv: &StatVector) -> bool {
        self.required.iter().all(|&(b, s, v)| sv.get(b, s) == v)
    }

    fn projection(&self, t: u32) -> Projection {
        let mut keep = vec![[false; 4]; t as usize];
        for &(b, s, _) in &self.required {
            keep[(b - 1) as usize][stat_slot(s)] = true;
        }
        Projection { keep }
    }
}

fn stat_slot(s: Stat) -> usize {
    match s {
        Stat::Des => 0,
        Stat::Ris => 1,
        Stat::Lev => 2,
        Stat::Cnt => 3,
    }
}

/// Which coordinates the transfer program keeps; untracked ones stay zero.
#[derive(Debug, Clone)]
struct Projection {
    keep: Vec<[bool; 4]>,
}

impl Projection {
    fn full(t: u32) -> Self {
        Projection {
            keep: vec![[true; 4]; t as usize],
        }
    }

    #[inline]
    fn bump(&self, sv: &mut StatVector, block: usize, stat: Stat) {
        if self.keep[block][stat_slot(stat)] {
            *sv.blocks_mut()[block].get_mut(stat) += 1;
        }
    }
}

fn word_count(k: u32, n: u32) -> BigUint {
    num_traits::pow(BigUint::from(k), n as usize)
}

/// Exhaustive enumeration of `[k]^n`, bounded by [`EnumerationBudget::from_env`].
pub fn brute_distribution(k: u32, n: u32, p: &BlockPartition) -> Result<DistPolynomial> {
    brute_distribution_with_budget(k, n, p, EnumerationBudget::from_env())
}

pub fn brute_distribution_with_budget(
    k: u32,
    n: u32,
    p: &BlockPartition,
    budget: EnumerationBudget,
) -> Result<DistPolynomial> {
    check_context(k, p)?;
    budget.admit(&word_count(k, n))?;
    if n == 0 {
        let mut d = DistPolynomial::new(p, 0);
        d.add(StatVector::zero(p.t()), BigUint::one());
        return Ok(d);
    }
    // shard by first letter; shards are disjoint and combine by pointwise sum
    let shards: Vec<HashMap<StatVector, u64>> = (1..=k)
        .into_par_iter()
        .map(|first| {
            let mut counts: HashMap<StatVector, u64> = HashMap::new();
            let mut word = vec![1 as Letter; n as usize];
            word[0] = first;
            loop {
                *counts.entry(stat_vector_unchecked(&word, p)).or_default() += 1;
                if !advance_suffix(&mut word[1..], k) {
                    break;
                }
            }
            counts
        })
        .collect();
    let mut d = DistPolynomial::new(p, n);
    for shard in shards {
        for (sv, c) in shard {
            d.add(sv, BigUint::from(c));
        }
    }
    Ok(d)
}

// odometer step over [k]^len; false once every word has been visited
fn advance_suffix(letters: &mut [Letter], k: u32) -> bool {
    for slot in letters.iter_mut().rev() {
        if *slot < k {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

fn check_context(k: u32, p: &BlockPartition) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be positive"));
    }
    if p.k() != k {
        return Err(Error::AlphabetMismatch {
            word_k: k,
            partition_k: p.k(),
        });
    }
    Ok(())
}

/// Same distribution as [`brute_distribution`], computed by a dynamic program
/// over `(last letter, statistics so far)` in time polynomial in `n`.
pub fn transfer_distribution(k: u32, n: u32, p: &BlockPartition) -> Result<DistPolynomial> {
    check_context(k, p)?;
    Ok(run_transfer(p, n, &Projection::full(p.t()), None))
}

/// Transfer distribution restricted to words starting with `first`.
/// For `n = 0` the result is empty.
pub fn transfer_distribution_from(
    k: u32,
    n: u32,
    p: &BlockPartition,
    first: Letter,
) -> Result<DistPolynomial> {
    check_context(k, p)?;
    p.block(first)?;
    if n == 0 {
        return Ok(DistPolynomial::new(p, 0));
    }
    Ok(run_transfer(p, n, &Projection::full(p.t()), Some(first)))
}

fn run_transfer(
    p: &BlockPartition,
    n: u32,
    proj: &Projection,
    first: Option<Letter>,
) -> DistPolynomial {
    let k = p.k();
    let mut out = DistPolynomial::new(p, n);
    if n == 0 {
        out.add(StatVector::zero(p.t()), BigUint::one());
        return out;
    }
    // layer[l - 1]: statistics of words ending in l
    let mut layer: Vec<HashMap<StatVector, BigUint>> = vec![HashMap::new(); k as usize];
    for l in 1..=k {
        if first.is_some_and(|f| f != l) {
            continue;
        }
        let mut sv = StatVector::zero(p.t());
        proj.bump(&mut sv, p.block_index(l), Stat::Cnt);
        layer[(l - 1) as usize].insert(sv, BigUint::one());
    }
    for _ in 1..n {
        let mut next: Vec<HashMap<StatVector, BigUint>> = vec![HashMap::new(); k as usize];
        for (last_idx, states) in layer.iter().enumerate() {
            let last = last_idx as Letter + 1;
            let from_block = p.block_index(last);
            for (sv, count) in states {
                for b in 1..=k {
                    let mut sv2 = sv.clone();
                    let stat = match PairKind::of(last, b) {
                        PairKind::Descent => Stat::Des,
                        PairKind::Level => Stat::Lev,
                        PairKind::Rise => Stat::Ris,
                    };
                    proj.bump(&mut sv2, from_block, stat);
                    proj.bump(&mut sv2, p.block_index(b), Stat::Cnt);
                    *next[(b - 1) as usize].entry(sv2).or_default() += count;
                }
            }
        }
        layer = next;
    }
    for states in layer {
        for (sv, c) in states {
            out.add(sv, c);
        }
    }
    out
}

/// Number of words in `[k]^n` satisfying `c`, via a transfer program that
/// tracks only the constrained coordinates.
pub fn count_matching(k: u32, n: u32, p: &BlockPartition, c: &ConstraintSpec) -> Result<BigUint> {
    check_context(k, p)?;
    c.validate(p)?;
    if c.is_empty() {
        return Ok(word_count(k, n));
    }
    let d = run_transfer(p, n, &c.projection(p.t()), None);
    d.count_matching(c)
}

/// Distribution of one coordinate over `[k]^n` (value -> count), computed by
/// the projected transfer program.
pub fn transfer_marginal(
    k: u32,
    n: u32,
    p: &BlockPartition,
    block: u32,
    stat: Stat,
) -> Result<BTreeMap<u32, BigUint>> {
    check_context(k, p)?;
    p.check_block(block)?;
    let mut keep = vec![[false; 4]; p.t() as usize];
    keep[(block - 1) as usize][stat_slot(stat)] = true;
    run_transfer(p, n, &Projection { keep }, None).marginal(block, stat)
}

/// `des_{X,Y}(w)`: descents whose top lies in `X` and bottom in `Y`.
pub fn des_xy(letters: &[Letter], x: &BTreeSet<Letter>, y: &BTreeSet<Letter>) -> u64 {
    letters
        .windows(2)
        .filter(|w| w[0] > w[1] && x.contains(&w[0]) && y.contains(&w[1]))
        .count() as u64
}

/// Distribution of `des_{X,Y}` over the distinct rearrangements of
/// `1^{rho_1} 2^{rho_2} ... m^{rho_m}`.
pub fn rearrangement_distribution(
    rho: &[u64],
    x: &BTreeSet<Letter>,
    y: &BTreeSet<Letter>,
) -> Result<BTreeMap<u64, BigUint>> {
    rearrangement_distribution_with_budget(rho, x, y, EnumerationBudget::from_env())
}

pub fn rearrangement_distribution_with_budget(
    rho: &[u64],
    x: &BTreeSet<Letter>,
    y: &BTreeSet<Letter>,
    budget: EnumerationBudget,
) -> Result<BTreeMap<u64, BigUint>> {
    budget.admit(&multinomial(rho))?;
    let mut word: Vec<Letter> = Vec::new();
    for (i, &r) in rho.iter().enumerate() {
        word.extend(std::iter::repeat_n(i as Letter + 1, r as usize));
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    loop {
        *counts.entry(des_xy(&word, x, y)).or_default() += 1;
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(counts
        .into_iter()
        .map(|(s, c)| (s, BigUint::from(c)))
        .collect())
}

// lexicographic successor of a multiset permutation
fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Convenience for tests and the CLI: `k^n` as a `u64` when it fits.
pub fn word_count_u64(k: u32, n: u32) -> Option<u64> {
    word_count(k, n).to_u64()
}
