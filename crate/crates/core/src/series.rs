//! Truncated power series for the word generating function `A_k` (expanded in
//! the length marker `q`) and the composition generating function `B_k`
//! (expanded in the weight marker `v`).
//!
//! Neither function is ever handled as a rational function. Both are written
//! as `P / Q` after clearing the per-letter denominators `1 - q_i(z_i - y_i)`;
//! `Q` has constant term 1, so `P * Q^{-1}` is computed as a truncated series
//! whose coefficients are exact polynomials in the tracked statistic markers.
//!
//! Per letter `i` (markers resolved through the block of `i`, and `u_i` the
//! expansion variable to the power 1 for `A_k`, or `v^i` for `B_k`):
//!
//! ```text
//! a_i = u_i q_i (1 - y_i)        b_i = u_i q_i y_i
//! c_i = 1 - u_i q_i (z_i - x_i)  d_i = 1 - u_i q_i (z_i - y_i)
//! P = prod d + sum_j a_j (prod_{i<j} d_i)(prod_{i>j} c_i)
//! Q = prod d - sum_j b_j (prod_{i<j} d_i)(prod_{i>j} c_i)
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracle::DistPolynomial;
use crate::poly::{CoefficientPolynomial, Exponents, VarSet};
use crate::word::{BlockPartition, StatVector};

/// The variable a [`PowerSeries`] is truncated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionVar {
    /// Word length, for `A_k`.
    Q,
    /// Composition weight, for `B_k`.
    V,
}

impl ExpansionVar {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionVar::Q => "q",
            ExpansionVar::V => "v",
        }
    }
}

/// Which generating function a layout is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratingFunction {
    A,
    B,
}

/// `sum_{n <= order} coeffs[n] * var^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    var: ExpansionVar,
    vars: VarSet,
    order: usize,
    coeffs: Vec<CoefficientPolynomial>,
}

impl PowerSeries {
    pub fn zero(var: ExpansionVar, vars: VarSet, order: usize) -> Self {
        let arity = vars.len();
        PowerSeries {
            var,
            vars,
            order,
            coeffs: vec![CoefficientPolynomial::zero(arity); order + 1],
        }
    }

    pub fn one(var: ExpansionVar, vars: VarSet, order: usize) -> Self {
        let mut s = Self::zero(var, vars, order);
        s.coeffs[0] = CoefficientPolynomial::one(s.arity());
        s
    }

    /// `c * var^degree`; zero if `degree` exceeds the truncation order.
    pub fn term(
        var: ExpansionVar,
        vars: VarSet,
        order: usize,
        degree: usize,
        c: CoefficientPolynomial,
    ) -> Self {
        let mut s = Self::zero(var, vars, order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn var(&self) -> ExpansionVar {
        self.var
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn coefficient(&self, n: usize) -> &CoefficientPolynomial {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[CoefficientPolynomial] {
        &self.coeffs
    }

    fn like(&self) -> Self {
        Self::zero(self.var, self.vars.clone(), self.order)
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
        assert_eq!(
            self.order, other.order,
            "series truncated at different orders"
        );
        assert_eq!(
            self.vars, other.vars,
            "series over different coefficient variables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.like();
        for (o, (a, b)) in out
            .coeffs
            .iter_mut()
            .zip(self.coeffs.iter().zip(&other.coeffs))
        {
            *o = a + b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.like();
        for (o, (a, b)) in out
            .coeffs
            .iter_mut()
            .zip(self.coeffs.iter().zip(&other.coeffs))
        {
            *o = a - b;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let unit = if c0.is_one() {
            BigInt::one()
        } else if (-c0).is_one() {
            -BigInt::one()
        } else {
            return Err(Error::NonUnitConstantTerm);
        };
        let mut inv = self.like();
        inv.coeffs[0] = CoefficientPolynomial::constant(self.arity(), unit.clone());
        for n in 1..=self.order {
            let mut acc = CoefficientPolynomial::zero(self.arity());
            for i in 1..=n {
                if self.coeffs[i].is_zero() || inv.coeffs[n - i].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &inv.coeffs[n - i]);
            }
            inv.coeffs[n] = acc.scale(&-&unit);
        }
        Ok(inv)
    }

    pub fn div(&self, denominator: &Self) -> Result<Self> {
        Ok(self.mul(&denominator.inverse()?))
    }

    /// Partial sums of coefficients, `[var^n] (self / (1 - var))`.
    pub fn total_through(&self, n: usize) -> CoefficientPolynomial {
        self.coeffs[..=n.min(self.order)]
            .iter()
            .fold(CoefficientPolynomial::zero(self.arity()), |acc, c| &acc + c)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(
                f,
                "[{}^{}] {}",
                self.var.name(),
                n,
                c.display_with(&self.vars)
            )?;
        }
        Ok(())
    }
}

/// Whether each of `x_i, y_i, z_i` is kept as a variable or specialized to 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BlockTracking {
    pub x: bool,
    pub y: bool,
    pub z: bool,
}

/// How letter counts are marked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QTracking {
    /// `q_i = 1` for `B_k`; for `A_k` only the expansion variable marks length.
    Untracked,
    /// One common `q`. For `A_k` this is the expansion variable itself; for
    /// `B_k` it becomes a coefficient variable counting parts.
    Common,
    /// A separate `q_i` per block, held as coefficient variables.
    PerBlock,
}

/// Which specialization of the generating function is being computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackingSpec {
    blocks: Vec<BlockTracking>,
    q: QTracking,
}

/// Descent, rise and level markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    X,
    Y,
    Z,
}

impl TrackingSpec {
    /// Nothing tracked: `x = y = z = 1` and a common `q`.
    pub fn untracked(t: u32) -> Self {
        TrackingSpec {
            blocks: vec![BlockTracking::default(); t as usize],
            q: QTracking::Common,
        }
    }

    /// Every `x_i, y_i, z_i` tracked, with per-block `q_i`.
    pub fn all_tracked(t: u32) -> Self {
        TrackingSpec {
            blocks: vec![
                BlockTracking {
                    x: true,
                    y: true,
                    z: true
                };
                t as usize
            ],
            q: QTracking::PerBlock,
        }
    }

    pub fn t(&self) -> u32 {
        self.blocks.len() as u32
    }

    pub fn q(&self) -> QTracking {
        self.q
    }

    pub fn blocks(&self) -> &[BlockTracking] {
        &self.blocks
    }

    pub fn with_q(mut self, q: QTracking) -> Self {
        self.q = q;
        self
    }

    /// Tracks `marker` of 1-based `block`.
    pub fn track(mut self, block: u32, marker: Marker) -> Result<Self> {
        if block == 0 || block > self.t() {
            return Err(Error::UnknownBlock {
                block,
                blocks: self.t(),
            });
        }
        let b = &mut self.blocks[(block - 1) as usize];
        match marker {
            Marker::X => b.x = true,
            Marker::Y => b.y = true,
            Marker::Z => b.z = true,
        }
        Ok(self)
    }

    /// Tracks a marker written as `x2`, `y1`, `z3`, ... (block is 1-based).
    pub fn track_named(self, name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let marker = match chars.next() {
            Some('x') => Marker::X,
            Some('y') => Marker::Y,
            Some('z') => Marker::Z,
            _ => {
                return Err(Error::invalid(format!(
                    "cannot parse tracked variable '{name}'"
                )))
            }
        };
        let block: u32 = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::invalid(format!("cannot parse tracked variable '{name}'")))?;
        self.track(block, marker)
    }

    /// Variable layout for the given generating function.
    pub fn layout(&self, gf: GeneratingFunction) -> SeriesLayout {
        let mut names = Vec::new();
        let mut slots = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let mut slot = BlockSlots::default();
            for (on, marker, target) in [
                (b.x, "x", &mut slot.x),
                (b.y, "y", &mut slot.y),
                (b.z, "z", &mut slot.z),
            ] {
                if on {
                    *target = Some(names.len());
                    names.push(format!("{marker}_{}", i + 1));
                }
            }
            slots.push(slot);
        }
        let mut common_q = None;
        match (self.q, gf) {
            (QTracking::PerBlock, _) => {
                for (i, slot) in slots.iter_mut().enumerate() {
                    slot.q = Some(names.len());
                    names.push(format!("q_{}", i + 1));
                }
            }
            (QTracking::Common, GeneratingFunction::B) => {
                common_q = Some(names.len());
                names.push("q".to_string());
            }
            _ => {}
        }
        SeriesLayout {
            vars: VarSet::new(names),
            blocks: slots,
            common_q,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct BlockSlots {
    x: Option<usize>,
    y: Option<usize>,
    z: Option<usize>,
    q: Option<usize>,
}

/// Assignment of tracked markers to coefficient-variable slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesLayout {
    vars: VarSet,
    blocks: Vec<BlockSlots>,
    common_q: Option<usize>,
}

impl SeriesLayout {
    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Slot of the common part-count marker of `B_k`, if tracked.
    pub fn common_q(&self) -> Option<usize> {
        self.common_q
    }

    fn arity(&self) -> usize {
        self.vars.len()
    }

    fn marker(&self, slot: Option<usize>) -> CoefficientPolynomial {
        match slot {
            Some(i) => CoefficientPolynomial::var(self.arity(), i),
            None => CoefficientPolynomial::one(self.arity()),
        }
    }

    /// Monomial exponents of a word with statistics `sv`.
    pub fn encode(&self, sv: &StatVector) -> Exponents {
        let mut e = vec![0; self.arity()];
        for (slot, stats) in self.blocks.iter().zip(sv.blocks()) {
            for (s, v) in [
                (slot.x, stats.des),
                (slot.y, stats.ris),
                (slot.z, stats.lev),
                (slot.q, stats.cnt),
            ] {
                if let Some(i) = s {
                    e[i] += v;
                }
            }
        }
        if let Some(i) = self.common_q {
            e[i] += sv.letter_total();
        }
        e
    }
}

/// Markers of one letter as polynomials.
struct LetterMarkers {
    x: CoefficientPolynomial,
    y: CoefficientPolynomial,
    z: CoefficientPolynomial,
    q: CoefficientPolynomial,
}

fn letter_markers(layout: &SeriesLayout, block: usize) -> LetterMarkers {
    let s = layout.blocks[block];
    let q_slot = s.q.or(layout.common_q);
    LetterMarkers {
        x: layout.marker(s.x),
        y: layout.marker(s.y),
        z: layout.marker(s.z),
        q: layout.marker(q_slot),
    }
}

fn check_inputs(k: u32, p: &BlockPartition, spec: &TrackingSpec) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be positive"));
    }
    if p.k() != k {
        return Err(Error::AlphabetMismatch {
            word_k: k,
            partition_k: p.k(),
        });
    }
    if spec.t() != p.t() {
        return Err(Error::invalid(format!(
            "tracking spec covers {} block(s) but the partition has {}",
            spec.t(),
            p.t()
        )));
    }
    Ok(())
}

/// The four per-letter factors of the cleared fraction.
struct LetterFactors {
    a: PowerSeries,
    b: PowerSeries,
    c: PowerSeries,
    d: PowerSeries,
}

fn letter_factors(
    layout: &SeriesLayout,
    block: usize,
    var: ExpansionVar,
    degree: usize,
    order: usize,
) -> LetterFactors {
    let m = letter_markers(layout, block);
    let arity = layout.arity();
    let one = CoefficientPolynomial::one(arity);
    let term =
        |c: CoefficientPolynomial| PowerSeries::term(var, layout.vars.clone(), order, degree, c);
    let unit = PowerSeries::one(var, layout.vars.clone(), order);
    LetterFactors {
        a: term(&m.q * &(&one - &m.y)),
        b: term(&m.q * &m.y),
        c: unit.sub(&term(&m.q * &(&m.z - &m.x))),
        d: unit.sub(&term(&m.q * &(&m.z - &m.y))),
    }
}

fn cleared_fraction(
    factors: &[LetterFactors],
    var: ExpansionVar,
    vars: &VarSet,
    order: usize,
) -> Result<PowerSeries> {
    let k = factors.len();
    let one = PowerSeries::one(var, vars.clone(), order);
    // prefix[j] = prod_{i<j} d_i, suffix[j] = prod_{i>j} c_i (0-based)
    let mut prefix = Vec::with_capacity(k + 1);
    prefix.push(one.clone());
    for f in factors {
        let next = prefix.last().expect("non-empty").mul(&f.d);
        prefix.push(next);
    }
    let mut suffix = vec![one.clone(); k];
    for j in (0..k.saturating_sub(1)).rev() {
        suffix[j] = suffix[j + 1].mul(&factors[j + 1].c);
    }
    let mut numerator = prefix[k].clone();
    let mut denominator = prefix[k].clone();
    for (j, f) in factors.iter().enumerate() {
        let frame = prefix[j].mul(&suffix[j]);
        numerator = numerator.add(&f.a.mul(&frame));
        denominator = denominator.sub(&f.b.mul(&frame));
    }
    numerator.div(&denominator)
}

/// `A_k` through `q^order`. The coefficient of `q^n` is the joint
/// distribution of the tracked statistics over `[k]^n`.
pub fn build_ak_series(
    k: u32,
    p: &BlockPartition,
    spec: &TrackingSpec,
    order: usize,
) -> Result<PowerSeries> {
    check_inputs(k, p, spec)?;
    let layout = spec.layout(GeneratingFunction::A);
    let factors: Vec<LetterFactors> = (1..=k)
        .map(|l| letter_factors(&layout, p.block_index(l), ExpansionVar::Q, 1, order))
        .collect();
    cleared_fraction(&factors, ExpansionVar::Q, &layout.vars, order)
}

/// `B_k` through `v^order`: compositions with parts in `[k]`, weighted by
/// `v^{sum of parts}` and the tracked statistics of the parts read as a word.
pub fn build_bk_series(
    k: u32,
    p: &BlockPartition,
    spec: &TrackingSpec,
    order: usize,
) -> Result<PowerSeries> {
    check_inputs(k, p, spec)?;
    let layout = spec.layout(GeneratingFunction::B);
    let factors: Vec<LetterFactors> = (1..=k)
        .map(|l| {
            letter_factors(
                &layout,
                p.block_index(l),
                ExpansionVar::V,
                l as usize,
                order,
            )
        })
        .collect();
    cleared_fraction(&factors, ExpansionVar::V, &layout.vars, order)
}

/// `gamma_i` and `alpha_i` of the lower-triangular system for `A_k(1..k)`.
struct BlockCoefficients {
    gamma: Vec<PowerSeries>,
    alpha: Vec<PowerSeries>,
}

fn block_coefficients(
    k: u32,
    p: &BlockPartition,
    spec: &TrackingSpec,
    order: usize,
    ak: &PowerSeries,
) -> Result<BlockCoefficients> {
    let layout = spec.layout(GeneratingFunction::A);
    let vars = layout.vars.clone();
    let mut gamma = Vec::with_capacity(k as usize);
    let mut alpha = Vec::with_capacity(k as usize);
    for l in 1..=k {
        let m = letter_markers(&layout, p.block_index(l));
        let f = letter_factors(&layout, p.block_index(l), ExpansionVar::Q, 1, order);
        let d_inv = f.d.inverse()?;
        let q_y = PowerSeries::term(ExpansionVar::Q, vars.clone(), order, 1, &m.q * &m.y);
        let g = q_y.mul(ak).add(&f.a).mul(&d_inv);
        let a = PowerSeries::term(
            ExpansionVar::Q,
            vars.clone(),
            order,
            1,
            &m.q * &(&m.y - &m.x),
        )
        .mul(&d_inv);
        gamma.push(g);
        alpha.push(a);
    }
    Ok(BlockCoefficients { gamma, alpha })
}

/// `A_k(1), ..., A_k(k)`: the words starting with each letter, obtained by
/// forward substitution `A_k(s) = gamma_s - alpha_s sum_{j<s} A_k(j)`.
pub fn solve_block_system(
    k: u32,
    p: &BlockPartition,
    spec: &TrackingSpec,
    order: usize,
) -> Result<Vec<PowerSeries>> {
    let ak = build_ak_series(k, p, spec, order)?;
    let BlockCoefficients { gamma, alpha } = block_coefficients(k, p, spec, order, &ak)?;
    let mut solved: Vec<PowerSeries> = Vec::with_capacity(k as usize);
    let mut running = PowerSeries::zero(ExpansionVar::Q, ak.vars().clone(), order);
    for (g, a) in gamma.iter().zip(&alpha) {
        let next = g.sub(&a.mul(&running));
        running = running.add(&next);
        solved.push(next);
    }
    Ok(solved)
}

/// Closed-form solution of the same system:
/// `A_k(i) = gamma_i - alpha_i sum_{j<i} gamma_j prod_{j<l<i} (1 - alpha_l)`.
pub fn explicit_block_solution(
    k: u32,
    p: &BlockPartition,
    spec: &TrackingSpec,
    order: usize,
) -> Result<Vec<PowerSeries>> {
    let ak = build_ak_series(k, p, spec, order)?;
    let BlockCoefficients { gamma, alpha } = block_coefficients(k, p, spec, order, &ak)?;
    let one = PowerSeries::one(ExpansionVar::Q, ak.vars().clone(), order);
    let mut out = Vec::with_capacity(k as usize);
    for i in 0..k as usize {
        let mut inner = PowerSeries::zero(ExpansionVar::Q, ak.vars().clone(), order);
        for j in 0..i {
            let mut prod = gamma[j].clone();
            for a in &alpha[j + 1..i] {
                prod = prod.mul(&one.sub(a));
            }
            inner = inner.add(&prod);
        }
        out.push(gamma[i].sub(&alpha[i].mul(&inner)));
    }
    Ok(out)
}

/// Encodes an oracle distribution as a polynomial in the `A_k` layout of `spec`.
pub fn encode_distribution(
    dist: &DistPolynomial,
    spec: &TrackingSpec,
) -> Result<CoefficientPolynomial> {
    if spec.t() != dist.partition().t() {
        return Err(Error::invalid(
            "tracking spec and distribution use different partitions",
        ));
    }
    let layout = spec.layout(GeneratingFunction::A);
    let mut out = CoefficientPolynomial::zero(layout.arity());
    for (sv, c) in dist.entries() {
        out.add_term(layout.encode(sv), BigInt::from(c.clone()));
    }
    Ok(out)
}

/// `[q^n] A_k` with `n` above the order is not available.
pub fn coefficient_checked(series: &PowerSeries, n: usize) -> Result<&CoefficientPolynomial> {
    if n > series.order() {
        return Err(Error::invalid(format!(
            "coefficient {n} requested from a series truncated at order {}",
            series.order()
        )));
    }
    Ok(series.coefficient(n))
}

/// Number of words of length `n` as read off a specialized series: the value
/// of the coefficient at all markers equal to 1.
pub fn coefficient_mass(series: &PowerSeries, n: usize) -> BigInt {
    if n > series.order() {
        return BigInt::zero();
    }
    series.coefficient(n).eval_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_distribution, transfer_distribution, transfer_distribution_from};
    use crate::word::{stat_vector, Word};

    fn text(p: &CoefficientPolynomial, vars: &VarSet) -> String {
        p.display_with(vars).to_string()
    }

    #[test]
    fn ak_low_order_coefficients() {
        let p = BlockPartition::threshold(2, 1).unwrap();
        let spec = TrackingSpec::all_tracked(2);
        let a = build_ak_series(2, &p, &spec, 3).unwrap();
        assert!(a.coefficient(0).is_one());
        assert_eq!(text(a.coefficient(1), a.vars()), "q_2 + q_1");
        let oracle = encode_distribution(&brute_distribution(2, 2, &p).unwrap(), &spec).unwrap();
        assert_eq!(a.coefficient(2), &oracle);
        assert_eq!(a.coefficient(2).len(), 4);
    }

    #[test]
    fn ak_tracking_one_descent_marker() {
        let p = BlockPartition::threshold(2, 1).unwrap();
        let spec = TrackingSpec::untracked(2).track_named("x2").unwrap();
        let a = build_ak_series(2, &p, &spec, 2).unwrap();
        assert_eq!(text(a.coefficient(2), a.vars()), "3 + x_2");
        let a0 = build_ak_series(
            3,
            &BlockPartition::single(3).unwrap(),
            &TrackingSpec::untracked(1),
            0,
        )
        .unwrap();
        assert_eq!(a0.coefficients().len(), 1);
        assert!(a0.coefficient(0).is_one());
    }

    #[test]
    fn fully_specialized_ak_counts_words() {
        for k in 1..=5u32 {
            let p = BlockPartition::mod_residue(k, 2).unwrap();
            let a = build_ak_series(k, &p, &TrackingSpec::untracked(2), 6).unwrap();
            for n in 0..=6 {
                assert_eq!(
                    a.coefficient(n).constant_term(),
                    BigInt::from(k).pow(n as u32)
                );
                assert_eq!(a.coefficient(n).len(), 1);
            }
        }
    }

    #[test]
    fn ak_matches_transfer_on_arbitrary_partition() {
        let p = BlockPartition::from_blocks(&[2, 1, 3, 1]).unwrap();
        let spec = TrackingSpec::all_tracked(3);
        let a = build_ak_series(4, &p, &spec, 4).unwrap();
        for n in 0..=4u32 {
            let d = transfer_distribution(4, n, &p).unwrap();
            assert_eq!(
                a.coefficient(n as usize),
                &encode_distribution(&d, &spec).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn block_system_checks() {
        // k = 1: A_1(1) = gamma_1 and A_1 = 1 + A_1(1)
        let p1 = BlockPartition::single(1).unwrap();
        let spec1 = TrackingSpec::all_tracked(1);
        let sol = solve_block_system(1, &p1, &spec1, 5).unwrap();
        let a1 = build_ak_series(1, &p1, &spec1, 5).unwrap();
        let one = PowerSeries::one(ExpansionVar::Q, a1.vars().clone(), 5);
        assert_eq!(one.add(&sol[0]), a1);

        let p = BlockPartition::threshold(2, 1).unwrap();
        let spec = TrackingSpec::all_tracked(2);
        let sol = solve_block_system(2, &p, &spec, 3).unwrap();
        let a = build_ak_series(2, &p, &spec, 3).unwrap();
        let total = sol.iter().fold(
            PowerSeries::one(ExpansionVar::Q, a.vars().clone(), 3),
            |acc, s| acc.add(s),
        );
        assert_eq!(total, a);
    }

    #[test]
    fn block_system_counts_words_by_first_letter() {
        for k in 1..=4u32 {
            let p = BlockPartition::mod_residue(k, 2).unwrap();
            let spec = TrackingSpec::untracked(2);
            let sol = solve_block_system(k, &p, &spec, 5).unwrap();
            for n in 0..=5usize {
                let total: BigInt = sol.iter().map(|s| s.coefficient(n).constant_term()).sum();
                let expected = BigInt::from(k).pow(n as u32) - if n == 0 { 1 } else { 0 };
                assert_eq!(total, expected);
            }
        }
    }

    #[test]
    fn block_system_matches_first_letter_oracle_and_explicit_form() {
        let p = BlockPartition::mod_residue(4, 3).unwrap();
        let spec = TrackingSpec::all_tracked(3);
        let sol = solve_block_system(4, &p, &spec, 4).unwrap();
        let explicit = explicit_block_solution(4, &p, &spec, 4).unwrap();
        assert_eq!(sol, explicit);
        for (idx, s) in sol.iter().enumerate() {
            for n in 1..=4u32 {
                let d = transfer_distribution_from(4, n, &p, idx as u32 + 1).unwrap();
                assert_eq!(
                    s.coefficient(n as usize),
                    &encode_distribution(&d, &spec).unwrap()
                );
            }
        }
    }

    #[test]
    fn bk_low_order_and_compositions_of_four() {
        let p = BlockPartition::threshold(2, 1).unwrap();
        let spec = TrackingSpec::all_tracked(2);
        let b = build_bk_series(2, &p, &spec, 4).unwrap();
        assert!(b.coefficient(0).is_one());
        assert_eq!(text(b.coefficient(1), b.vars()), "q_1");

        // all x = y = z = 1, common q marking the number of parts:
        // 1111 -> q^4; 112, 121, 211 -> q^3; 22 -> q^2
        let spec = TrackingSpec::untracked(2).with_q(QTracking::Common);
        let b = build_bk_series(2, &p, &spec, 4).unwrap();
        assert_eq!(text(b.coefficient(4), b.vars()), "q^2 + 3*q^3 + q^4");
        assert_eq!(text(b.coefficient(2), b.vars()), "q + q^2");
    }

    fn compositions(weight: u32, k: u32) -> Vec<Vec<u32>> {
        if weight == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=k.min(weight) {
            for mut rest in compositions(weight - first, k) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn bk_matches_composition_enumeration() {
        for (k, p) in [
            (2, BlockPartition::threshold(2, 1).unwrap()),
            (3, BlockPartition::mod_residue(3, 2).unwrap()),
        ] {
            let spec = TrackingSpec::all_tracked(p.t());
            let b = build_bk_series(k, &p, &spec, 6).unwrap();
            let layout = spec.layout(GeneratingFunction::B);
            for w in 0..=6 {
                let mut expected = CoefficientPolynomial::zero(layout.vars().len());
                for c in compositions(w, k) {
                    let sv = stat_vector(&Word::new(c, k).unwrap(), &p).unwrap();
                    expected.add_term(layout.encode(&sv), BigInt::one());
                }
                assert_eq!(b.coefficient(w as usize), &expected, "k={k} w={w}");
            }
        }
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let vars = VarSet::new(vec!["x".into()]);
        let s = PowerSeries::term(
            ExpansionVar::Q,
            vars.clone(),
            3,
            0,
            CoefficientPolynomial::constant(1, 2),
        );
        assert_eq!(s.inverse().unwrap_err(), Error::NonUnitConstantTerm);
        let neg = PowerSeries::term(
            ExpansionVar::Q,
            vars,
            3,
            0,
            CoefficientPolynomial::constant(1, -1),
        );
        let inv = neg.inverse().unwrap();
        assert!(neg.mul(&inv).coefficient(0).is_one());
    }

    #[test]
    fn mismatched_spec_is_rejected() {
        let p = BlockPartition::threshold(3, 1).unwrap();
        assert!(build_ak_series(3, &p, &TrackingSpec::all_tracked(3), 2).is_err());
        assert!(build_ak_series(2, &p, &TrackingSpec::all_tracked(2), 2).is_err());
        assert!(TrackingSpec::untracked(2).track_named("w1").is_err());
        assert!(TrackingSpec::untracked(2).track_named("x3").is_err());
    }
}
