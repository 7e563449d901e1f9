//! Cross-engine equality suites over parameter grids.
//!
//! Grid points are evaluated in parallel; results are collected in grid
//! order so reports (including the first failing tuple) are deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::binom::weak_compositions;
use crate::error::{Error, Result};
use crate::formulas::{self, variants};
use crate::identities::{self, IdentityReport};
use crate::oracle::{self, brute_distribution, transfer_distribution};
use crate::query::{self, Engine, Family};
use crate::series::{
    self, build_ak_series, build_bk_series, encode_distribution, QTracking, TrackingSpec,
};
use crate::word::{complement, stat_vector, BlockPartition, BlockStats, Letter, StatVector, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    OracleVsTransfer,
    FormulasVsOracle,
    SeriesVsOracle,
    Identities,
    HallRemmel,
    Duality,
    BkVsAk,
    Errata,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::OracleVsTransfer,
        Suite::FormulasVsOracle,
        Suite::SeriesVsOracle,
        Suite::Identities,
        Suite::HallRemmel,
        Suite::Duality,
        Suite::BkVsAk,
        Suite::Errata,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleVsTransfer => "oracle-vs-transfer",
            Suite::FormulasVsOracle => "formulas-vs-oracle",
            Suite::SeriesVsOracle => "series-vs-oracle",
            Suite::Identities => "identities",
            Suite::HallRemmel => "hall-remmel",
            Suite::Duality => "duality",
            Suite::BkVsAk => "bk-vs-ak",
            Suite::Errata => "errata",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

/// Grid bounds. `k_max` bounds the alphabet (or, for `hall-remmel`, the
/// number of distinct letters); `n_max` bounds the length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub k_max: u32,
    pub n_max: u32,
    /// Shift every value of the side under test by one, so a healthy harness
    /// must report failures.
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(k_max: u32, n_max: u32) -> Self {
        VerifyOptions {
            k_max,
            n_max,
            inject_fault: false,
        }
    }

    pub fn with_fault(mut self) -> Self {
        self.inject_fault = true;
        self
    }

    fn perturb(&self, v: BigInt) -> BigInt {
        if self.inject_fault {
            v + BigInt::one()
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} failed",
            self.suite, self.checked, self.failures
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "; first failure: {first}")?;
        }
        Ok(())
    }
}

/// One comparison: a description of the tuple and whether it held.
type Check = (String, bool);

fn eq_check<T: PartialEq + fmt::Debug>(
    label: String,
    lhs: &T,
    rhs: &T,
    lhs_name: &str,
    rhs_name: &str,
) -> Check {
    if lhs == rhs {
        (label, true)
    } else {
        (
            format!("{label}: {lhs_name} {lhs:?} != {rhs_name} {rhs:?}"),
            false,
        )
    }
}

fn run_grid<P: Sync>(
    suite: Suite,
    points: Vec<P>,
    f: impl Fn(&P) -> Result<Vec<Check>> + Sync + Send,
) -> Result<SuiteReport> {
    let results: Vec<Vec<Check>> = points.par_iter().map(f).collect::<Result<_>>()?;
    let mut report = SuiteReport {
        suite,
        checked: 0,
        failures: 0,
        first_failure: None,
    };
    for (label, ok) in results.into_iter().flatten() {
        report.checked += 1;
        if !ok {
            report.failures += 1;
            report.first_failure.get_or_insert(label);
        }
    }
    Ok(report)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    match suite {
        Suite::OracleVsTransfer => oracle_vs_transfer(opts),
        Suite::FormulasVsOracle => formulas_vs_oracle(opts),
        Suite::SeriesVsOracle => series_vs_oracle(opts),
        Suite::Identities => identity_suite(opts),
        Suite::HallRemmel => hall_remmel(opts),
        Suite::Duality => duality(opts),
        Suite::BkVsAk => bk_vs_ak(opts),
        Suite::Errata => errata(opts),
    }
}

/// Threshold partitions for every cut point plus residue partitions mod 2 and 3.
pub fn standard_partitions(k: u32) -> Vec<(String, BlockPartition)> {
    let mut out = Vec::new();
    for t in 0..=k {
        out.push((
            format!("threshold:{t}"),
            BlockPartition::threshold(k, t).expect("t <= k"),
        ));
    }
    for s in [2, 3] {
        out.push((
            format!("mod:{s}"),
            BlockPartition::mod_residue(k, s).expect("s > 0"),
        ));
    }
    out
}

fn oracle_vs_transfer(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut points = Vec::new();
    for k in 1..=opts.k_max {
        for (name, p) in standard_partitions(k) {
            for n in 0..=opts.n_max {
                points.push((k, n, name.clone(), p.clone()));
            }
        }
    }
    run_grid(Suite::OracleVsTransfer, points, |(k, n, name, p)| {
        let brute = brute_distribution(*k, *n, p)?;
        let mut transfer = transfer_distribution(*k, *n, p)?;
        if opts.inject_fault {
            transfer.merge(brute_distribution(*k, *n, p)?)?;
        }
        Ok(vec![eq_check(
            format!("k={k} n={n} {name}"),
            brute.entries(),
            transfer.entries(),
            "brute",
            "transfer",
        )])
    })
}

/// Every closed-form family with alphabet at most `k_max`.
pub fn formula_families(k_max: u32) -> Vec<Family> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        for t in 1..=k {
            out.push(Family::LevelsThreshold { k, t });
        }
        for sizes in compositions(k) {
            out.push(Family::LevelsBlocks { sizes });
        }
        for t in 1..=k {
            out.push(Family::DesLe { k, t });
        }
        for t in 0..=k {
            out.push(Family::DesGt { k, t });
        }
        for s in 2..=k_max.max(2) {
            for r in 1..=s {
                out.push(Family::DesMod { s, alphabet: k, r });
            }
        }
    }
    out
}

/// Compositions of `k` into positive parts.
fn compositions(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << (k - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..k - 1 {
            if mask & (1 << bit) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out
}

fn describe(f: &Family) -> String {
    match f {
        Family::LevelsThreshold { k, t } => format!("levels-threshold k={k} t={t}"),
        Family::LevelsBlocks { sizes } => format!("levels-blocks sizes={sizes:?}"),
        Family::DesLe { k, t } => format!("des-le k={k} t={t}"),
        Family::DesGt { k, t } => format!("des-gt k={k} t={t}"),
        Family::DesMod { s, alphabet, r } => format!("des-mod s={s} alphabet={alphabet} r={r}"),
        Family::HallRemmel { rho, x, y } => format!("hall-remmel rho={rho:?} x={x:?} y={y:?}"),
    }
}

fn formulas_vs_oracle(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut points = Vec::new();
    for f in formula_families(opts.k_max) {
        for n in 0..=opts.n_max {
            points.push((f.clone(), n));
        }
    }
    run_grid(Suite::FormulasVsOracle, points, |(f, n)| {
        let oracle = query::table(f, *n, Engine::Oracle)?;
        let max = n.saturating_sub(1) as u64;
        let mut checks = Vec::new();
        for total in 0..=max {
            for key in weak_compositions(total, f.arity()) {
                let key: Vec<u32> = key.into_iter().map(|v| v as u32).collect();
                let closed = opts.perturb(query::count(f, *n, &key, Engine::ClosedForm)?);
                checks.push(eq_check(
                    format!("{} n={n} value={key:?}", describe(f)),
                    &closed,
                    &oracle.get(&key),
                    "closed-form",
                    "oracle",
                ));
            }
        }
        Ok(checks)
    })
}

fn series_vs_oracle(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut points = Vec::new();
    for k in 1..=opts.k_max {
        for (name, p) in standard_partitions(k) {
            points.push((k, name, p));
        }
    }
    run_grid(Suite::SeriesVsOracle, points, |(k, name, p)| {
        let spec = TrackingSpec::all_tracked(p.t());
        let a = build_ak_series(*k, p, &spec, opts.n_max as usize)?;
        let mut checks = Vec::new();
        for n in 0..=opts.n_max {
            let mut expected = encode_distribution(&brute_distribution(*k, n, p)?, &spec)?;
            if opts.inject_fault {
                expected = &expected + &crate::poly::CoefficientPolynomial::one(expected.arity());
            }
            checks.push(eq_check(
                format!("k={k} n={n} {name}"),
                a.coefficient(n as usize),
                &expected,
                "series",
                "oracle",
            ));
        }
        Ok(checks)
    })
}

fn identity_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    enum Point {
        Identity(u32),
        Direct(u32, u32),
    }
    let mut points: Vec<Point> = (0..=opts.n_max).map(Point::Identity).collect();
    for k in 1..=opts.k_max {
        for n in 0..=opts.n_max {
            points.push(Point::Direct(k, n));
        }
    }
    let report_check = |rep: IdentityReport| -> Check {
        let label = format!("{} n={} r={} s={}", rep.id, rep.n, rep.r, rep.s);
        let rhs = opts.perturb(rep.rhs.clone());
        eq_check(label, &rep.lhs, &rhs, "lhs", "rhs")
    };
    run_grid(Suite::Identities, points, |p| {
        let mut checks = Vec::new();
        match *p {
            Point::Identity(n) => {
                let n = n as u64;
                for r in 0..=n {
                    for s in 0..=n {
                        checks.push(report_check(identities::check_identity_26_28(n, r, s)));
                        checks.push(report_check(identities::check_identity_32(n, r, s)));
                    }
                }
            }
            Point::Direct(k, n) => {
                let (k, n) = (k as u64, n as u64);
                for s in 0..=n {
                    let top = opts.perturb(identities::direct_count_top_letter(k, n, s)?);
                    checks.push(eq_check(
                        format!("top-letter k={k} n={n} s={s}"),
                        &top,
                        &formulas::count_des_gt(k, k - 1, n, s)?,
                        "direct",
                        "des-gt",
                    ));
                    if k >= 2 {
                        let bottom = opts.perturb(identities::direct_count_two_bottom(k, n, s)?);
                        checks.push(eq_check(
                            format!("two-bottom k={k} n={n} s={s}"),
                            &bottom,
                            &formulas::count_des_le(k, 2, n, s)?,
                            "direct",
                            "des-le",
                        ));
                    }
                }
            }
        }
        Ok(checks)
    })
}

fn subsets(m: u32) -> Vec<BTreeSet<Letter>> {
    (0..(1u32 << m))
        .map(|mask| (1..=m).filter(|l| mask & (1 << (l - 1)) != 0).collect())
        .collect()
}

fn hall_remmel(opts: &VerifyOptions) -> Result<SuiteReport> {
    enum Point {
        Rho(Vec<u64>),
        Even(u32, u32),
    }
    let mut points = Vec::new();
    for m in 1..=opts.k_max {
        for total in 0..=opts.n_max {
            for rho in weak_compositions(total as u64, m as usize) {
                points.push(Point::Rho(rho));
            }
        }
    }
    for half in 1..=(opts.k_max / 2).max(1) {
        for n in 0..=opts.n_max {
            points.push(Point::Even(2 * half, n));
        }
    }
    run_grid(Suite::HallRemmel, points, |p| {
        let mut checks = Vec::new();
        match p {
            Point::Rho(rho) => {
                let m = rho.len() as u32;
                let n: u64 = rho.iter().sum();
                let sets = subsets(m);
                for x in &sets {
                    for y in &sets {
                        let dist = oracle::rearrangement_distribution(rho, x, y)?;
                        for s in 0..=n {
                            let closed = opts.perturb(formulas::hall_remmel_count(rho, x, y, s));
                            let expected = BigInt::from(dist.get(&s).cloned().unwrap_or_default());
                            checks.push(eq_check(
                                format!("rho={rho:?} x={x:?} y={y:?} s={s}"),
                                &closed,
                                &expected,
                                "closed-form",
                                "oracle",
                            ));
                        }
                    }
                }
            }
            Point::Even(alphabet, n) => {
                let (alphabet, n) = (*alphabet as u64, *n as u64);
                for p in 0..=n {
                    let mut total = BigInt::default();
                    for rho in weak_compositions(n, alphabet as usize) {
                        total += formulas::hall_remmel_even_words(&rho, n, p)?;
                    }
                    let total = opts.perturb(total);
                    checks.push(eq_check(
                        format!("even alphabet={alphabet} n={n} p={p}"),
                        &total,
                        &formulas::count_des_mod(2, alphabet, 2, n, p)?.value,
                        "sum over rho",
                        "des-mod",
                    ));
                }
            }
        }
        Ok(checks)
    })
}

/// All words of length `n` over `[k]`, in lexicographic order.
pub fn all_words(k: u32, n: u32) -> impl Iterator<Item = Vec<Letter>> {
    let total = (k as u64).pow(n);
    (0..total).map(move |mut idx| {
        let mut w = vec![1; n as usize];
        for slot in w.iter_mut().rev() {
            *slot = (idx % k as u64) as Letter + 1;
            idx /= k as u64;
        }
        w
    })
}

/// Statistics of `w^c` predicted from those of `w`: descents and rises swap,
/// and block `i` goes to `block_map[i]`.
fn dual_vector(sv: &StatVector, block_map: &[usize]) -> StatVector {
    let mut blocks = vec![BlockStats::default(); sv.blocks().len()];
    for (i, b) in sv.blocks().iter().enumerate() {
        blocks[block_map[i]] = BlockStats {
            des: b.ris,
            ris: b.des,
            lev: b.lev,
            cnt: b.cnt,
        };
    }
    StatVector::from_blocks(blocks)
}

fn duality(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut points = Vec::new();
    for k in 1..=opts.k_max {
        for n in 0..=opts.n_max {
            points.push((k, n));
        }
    }
    run_grid(Suite::Duality, points, |&(k, n)| {
        let mut checks = Vec::new();
        // threshold(k, t) complements to threshold(k, k - t) with the blocks swapped
        for t in 0..=k {
            let p = BlockPartition::threshold(k, t)?;
            let pc = BlockPartition::threshold(k, k - t)?;
            checks.push(word_duality(
                k,
                n,
                &p,
                &pc,
                &[1, 0],
                &format!("threshold:{t}"),
                opts,
            )?);
        }
        // residue r mod s complements to residue (k - r) mod s
        for s in [2u32, 3] {
            let p = BlockPartition::mod_residue(k, s)?;
            let map: Vec<usize> = (1..=s).map(|r| ((k + s - r % s) % s) as usize).collect();
            checks.push(word_duality(k, n, &p, &p, &map, &format!("mod:{s}"), opts)?);
        }
        // counting identities: des over [t] = ris over the top t letters, etc.
        let (k64, n64) = (k as u64, n as u64);
        for t in 0..=k {
            let rises = query_rises(k, n, t)?;
            for s in 0..=n {
                let idx = s as usize;
                if t >= 1 {
                    let le = opts.perturb(formulas::count_des_le(k64, t as u64, n64, s as u64)?);
                    checks.push(eq_check(
                        format!("des-le k={k} t={t} n={n} s={s}"),
                        &le,
                        &rises.top[idx],
                        "des-le",
                        "rises over top letters",
                    ));
                }
                let gt = opts.perturb(formulas::count_des_gt(k64, t as u64, n64, s as u64)?);
                checks.push(eq_check(
                    format!("des-gt k={k} t={t} n={n} s={s}"),
                    &gt,
                    &rises.bottom[idx],
                    "des-gt",
                    "rises over bottom letters",
                ));
            }
        }
        Ok(checks)
    })
}

struct RiseCounts {
    /// `top[s]`: words with `s` rises starting in `{k+1-t, ..., k}`.
    top: Vec<BigInt>,
    /// `bottom[s]`: words with `s` rises starting in `[k - t]`.
    bottom: Vec<BigInt>,
}

fn query_rises(k: u32, n: u32, t: u32) -> Result<RiseCounts> {
    let top_p = BlockPartition::threshold(k, k - t)?;
    let mut top = vec![BigInt::default(); n as usize + 1];
    let mut bottom = vec![BigInt::default(); n as usize + 1];
    for (sv, c) in brute_distribution(k, n, &top_p)?.entries() {
        top[sv.get(2, crate::word::Stat::Ris) as usize] += BigInt::from(c.clone());
        bottom[sv.get(1, crate::word::Stat::Ris) as usize] += BigInt::from(c.clone());
    }
    Ok(RiseCounts { top, bottom })
}

fn word_duality(
    k: u32,
    n: u32,
    p: &BlockPartition,
    pc: &BlockPartition,
    block_map: &[usize],
    name: &str,
    opts: &VerifyOptions,
) -> Result<Check> {
    for letters in all_words(k, n) {
        let w = Word::new(letters, k)?;
        let mut predicted = dual_vector(&stat_vector(&w, p)?, block_map);
        if opts.inject_fault {
            predicted.blocks_mut()[0].cnt += 1;
        }
        let actual = stat_vector(&complement(&w), pc)?;
        if predicted != actual {
            return Ok((
                format!("complement k={k} n={n} {name} word={w}: predicted {predicted} != actual {actual}"),
                false,
            ));
        }
    }
    Ok((format!("complement k={k} n={n} {name}"), true))
}

fn bk_vs_ak(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut points = Vec::new();
    for k in 1..=opts.k_max {
        for t in 0..=k {
            points.push((k, t));
        }
    }
    run_grid(Suite::BkVsAk, points, |&(k, t)| {
        let p = BlockPartition::threshold(k, t)?;
        let mut spec = TrackingSpec::untracked(2).with_q(QTracking::Common);
        for name in ["x1", "y1", "z1", "x2", "y2", "z2"] {
            spec = spec.track_named(name)?;
        }
        let order = (k * opts.n_max) as usize;
        let a = build_ak_series(k, &p, &spec, opts.n_max as usize)?;
        let b = build_bk_series(k, &p, &spec, order)?;
        let q_slot = spec
            .layout(series::GeneratingFunction::B)
            .common_q()
            .expect("common q is a coefficient variable of B");
        let mut checks = Vec::new();
        for n in 0..=opts.n_max {
            let mut summed = crate::poly::CoefficientPolynomial::zero(a.arity());
            for w in 0..=order {
                summed = &summed + &b.coefficient(w).coefficient_in(q_slot, n);
            }
            if opts.inject_fault {
                summed = &summed + &crate::poly::CoefficientPolynomial::one(a.arity());
            }
            checks.push(eq_check(
                format!("k={k} threshold:{t} n={n}"),
                &summed,
                a.coefficient(n as usize),
                "sum of B coefficients",
                "A coefficient",
            ));
        }
        Ok(checks)
    })
}

/// Shipped readings must agree with enumeration everywhere on the grid;
/// each rejected reading must disagree somewhere.
fn errata(opts: &VerifyOptions) -> Result<SuiteReport> {
    let outcomes = errata_outcomes(opts.k_max, opts.n_max)?;
    let mut checks = Vec::new();
    for o in outcomes {
        let ok = if o.shipped {
            o.mismatches == 0
        } else {
            o.mismatches > 0
        };
        let ok = ok != opts.inject_fault;
        let label = if ok {
            format!("{} ({} mismatches)", o.name, o.mismatches)
        } else if o.shipped {
            format!(
                "shipped reading {} disagrees with enumeration at {}",
                o.name,
                o.first_mismatch.unwrap_or_default()
            )
        } else {
            format!(
                "rejected reading {} never disagrees with enumeration",
                o.name
            )
        };
        checks.push((label, ok));
    }
    run_grid(Suite::Errata, vec![checks], |c| Ok(c.clone()))
}

/// Grid agreement of one reading of an ambiguous formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantOutcome {
    pub name: String,
    pub shipped: bool,
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<String>,
}

/// Evaluates every reading of the residue-class descent formulas against
/// enumeration for alphabets up to `k_max` and lengths up to `n_max`.
pub fn errata_outcomes(k_max: u32, n_max: u32) -> Result<Vec<VariantOutcome>> {
    use variants::{FreeIndex, ResidueCoefficient};
    type Reading = (
        &'static str,
        bool,
        Box<dyn Fn(u64, u64, u64, u64, u64) -> Option<BigInt> + Sync + Send>,
    );
    // arguments: s, alphabet, r, n, p; None when the reading does not apply
    let readings: Vec<Reading> = vec![
        (
            "zero-residue/(r-1)",
            true,
            Box::new(|s, a, r, n, p| {
                (a % s == 0).then(|| {
                    variants::des_mod_zero_residue(s, a / s, r, n, p, ResidueCoefficient::RMinusOne)
                })
            }),
        ),
        (
            "zero-residue/(s-1)",
            false,
            Box::new(|s, a, r, n, p| {
                (a % s == 0).then(|| {
                    variants::des_mod_zero_residue(s, a / s, r, n, p, ResidueCoefficient::SMinusOne)
                })
            }),
        ),
        (
            "offset/j-summed",
            true,
            Box::new(|s, a, r, n, p| {
                (a % s != 0)
                    .then(|| variants::des_mod_offset(s, a / s, a % s, r, n, p, FreeIndex::Summed))
            }),
        ),
        (
            "offset/j=0",
            false,
            Box::new(|s, a, r, n, p| {
                (a % s != 0)
                    .then(|| variants::des_mod_offset(s, a / s, a % s, r, n, p, FreeIndex::Zero))
            }),
        ),
        (
            "offset/j=m",
            false,
            Box::new(|s, a, r, n, p| {
                (a % s != 0)
                    .then(|| variants::des_mod_offset(s, a / s, a % s, r, n, p, FreeIndex::Top))
            }),
        ),
    ];
    let mut grid = Vec::new();
    for alphabet in 1..=k_max {
        for s in 2..=k_max.max(2) {
            for r in 1..=s {
                for n in 0..=n_max {
                    grid.push((s, alphabet, r, n));
                }
            }
        }
    }
    let truth: Vec<Vec<BigInt>> = grid
        .par_iter()
        .map(|&(s, alphabet, r, n)| -> Result<Vec<BigInt>> {
            let t = query::table(&Family::DesMod { s, alphabet, r }, n, Engine::Transfer)?;
            Ok((0..=n).map(|p| t.get(&[p])).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (name, shipped, f) in &readings {
        let mut o = VariantOutcome {
            name: name.to_string(),
            shipped: *shipped,
            checked: 0,
            mismatches: 0,
            first_mismatch: None,
        };
        for (&(s, alphabet, r, n), expected) in grid.iter().zip(&truth) {
            for p in 0..=n {
                let Some(v) = f(s as u64, alphabet as u64, r as u64, n as u64, p as u64) else {
                    continue;
                };
                o.checked += 1;
                if v != expected[p as usize] {
                    o.mismatches += 1;
                    o.first_mismatch.get_or_insert_with(|| {
                        format!("s={s} alphabet={alphabet} r={r} n={n} p={p}")
                    });
                }
            }
        }
        out.push(o);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_pass_and_faults_are_caught() {
        let opts = VerifyOptions::new(2, 3);
        for suite in Suite::ALL {
            let rep = run_suite(suite, &opts).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(rep.checked > 0, "{rep}");
            let bad = run_suite(suite, &opts.with_fault()).unwrap();
            assert!(!bad.passed(), "{suite} did not notice the injected fault");
            assert!(bad.first_failure.is_some());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = VerifyOptions::new(2, 3).with_fault();
        let a = run_suite(Suite::FormulasVsOracle, &opts).unwrap();
        let b = run_suite(Suite::FormulasVsOracle, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn words_enumerate_in_order() {
        let w: Vec<_> = all_words(2, 2).collect();
        assert_eq!(w, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(all_words(3, 0).count(), 1);
    }

    #[test]
    fn compositions_of_four() {
        assert_eq!(compositions(4).len(), 8);
        assert!(compositions(4).iter().all(|c| c.iter().sum::<u32>() == 4));
        assert_eq!(compositions(1), vec![vec![1]]);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
