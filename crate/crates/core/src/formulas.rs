//! Closed-form counts of words by a single refined statistic, as exact
//! alternating binomial sums.
//!
//! Every sum uses the generalized binomial of [`crate::binom::binom`], so terms
//! that fall outside a coefficient's support vanish on their own and the
//! outer sums can be written over their natural ranges.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::{binom, multinomial, pow, sign, weak_compositions};
use crate::error::{Error, Result};
use crate::word::Letter;

/// Identifies which counting formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    LevelsThreshold,
    LevelsBlocks,
    DesLe,
    DesGt,
    DesModZeroResidue,
    DesModAboveOffset,
    DesModWithinOffset,
    HallRemmel,
    HallRemmelEven,
    DirectTopLetter,
    DirectTwoBottom,
}

impl FormulaId {
    pub fn name(self) -> &'static str {
        match self {
            FormulaId::LevelsThreshold => "levels-threshold",
            FormulaId::LevelsBlocks => "levels-blocks",
            FormulaId::DesLe => "des-le",
            FormulaId::DesGt => "des-gt",
            FormulaId::DesModZeroResidue => "des-mod/sk",
            FormulaId::DesModAboveOffset => "des-mod/sk+t,r>t",
            FormulaId::DesModWithinOffset => "des-mod/sk+t,r<=t",
            FormulaId::HallRemmel => "hall-remmel",
            FormulaId::HallRemmelEven => "hall-remmel-even",
            FormulaId::DirectTopLetter => "direct-top-letter",
            FormulaId::DirectTwoBottom => "direct-two-bottom",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A formula value together with what produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: BigInt,
    pub formula: FormulaId,
    pub params: Vec<(String, String)>,
}

impl FormulaResult {
    pub fn new(value: BigInt, formula: FormulaId, params: &[(&str, String)]) -> Self {
        FormulaResult {
            value,
            formula,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }
}

fn i(v: u64) -> i64 {
    i64::try_from(v).expect("parameter fits in i64")
}

fn signed(e: i64, v: BigInt) -> BigInt {
    if sign(e) < 0 {
        -v
    } else {
        v
    }
}

/// Words in `[k]^n` with exactly `s` levels whose first letter is in `[t]`.
pub fn count_levels_threshold(k: u64, t: u64, n: u64, s: u64) -> Result<BigInt> {
    if t == 0 || t > k {
        return Err(Error::invalid(format!(
            "need 1 <= t <= k, got t={t}, k={k}"
        )));
    }
    let (k, t, n, s) = (i(k), i(t), i(n), i(s));
    let mut total = BigInt::zero();
    for m in 0..=n {
        let tail = binom(n - m, s);
        if tail.is_zero() {
            continue;
        }
        for j in 0..=m {
            let term = binom(m, j)
                * binom(j + n - m - 1, n - m)
                * &tail
                * pow(k - t, (m - j) as u64)
                * pow(t, j as u64);
            total += signed(n - m - s, term);
        }
    }
    Ok(total)
}

/// Words in `[k]^n` with exactly `targets[i]` levels starting in block `i`,
/// where block `i` holds `block_sizes[i]` letters and `k` is their sum.
pub fn count_levels_blocks(block_sizes: &[u64], n: u64, targets: &[u64]) -> Result<BigInt> {
    levels_blocks_impl(block_sizes, n, targets, true)
}

fn levels_blocks_impl(
    block_sizes: &[u64],
    n: u64,
    targets: &[u64],
    with_sign: bool,
) -> Result<BigInt> {
    if block_sizes.is_empty() {
        return Err(Error::invalid("need at least one block"));
    }
    if block_sizes.len() != targets.len() {
        return Err(Error::invalid(format!(
            "{} block size(s) but {} target(s)",
            block_sizes.len(),
            targets.len()
        )));
    }
    let parts = block_sizes.len();
    let mut total = BigInt::zero();
    for m in 0..=n {
        let a_list = weak_compositions(m, parts);
        let b_list = weak_compositions(n - m, parts);
        for b in &b_list {
            // factor depending on b only
            let mut b_factor = BigInt::from(1);
            for (bi, &ti) in b.iter().zip(targets) {
                b_factor *= binom(i(*bi), i(ti));
            }
            if b_factor.is_zero() {
                continue;
            }
            if with_sign {
                let excess: i64 = b.iter().zip(targets).map(|(&bi, &ti)| i(bi) - i(ti)).sum();
                b_factor = signed(excess, b_factor);
            }
            for a in &a_list {
                let mut term = BigInt::from(multinomial(a)) * &b_factor;
                for ((&ai, &bi), &ni) in a.iter().zip(b).zip(block_sizes) {
                    term *= pow(i(ni), ai) * binom(i(ai) + i(bi) - 1, i(bi));
                    if term.is_zero() {
                        break;
                    }
                }
                total += term;
            }
        }
    }
    Ok(total)
}

/// Words in `[k]^n` with exactly `s` descents whose first letter is in `[t]`.
/// By complementation this also counts `s` rises starting in `{k+1-t, ..., k}`.
pub fn count_des_le(k: u64, t: u64, n: u64, s: u64) -> Result<BigInt> {
    if t == 0 || t > k {
        return Err(Error::invalid(format!(
            "need 1 <= t <= k, got t={t}, k={k}"
        )));
    }
    let (k, t, n, s) = (i(k), i(t), i(n), i(s));
    let mut total = BigInt::zero();
    for m in 0..=n {
        let tail = binom(n - m, s);
        if tail.is_zero() {
            continue;
        }
        for a in 0..=m {
            for b in 0..=(m - a) {
                let c = binom(t * a, n - b);
                if c.is_zero() {
                    continue;
                }
                let term = binom(m, a) * binom(m - a, b) * c * &tail * pow(k - t, b as u64);
                total += signed(n - a - b - s, term);
            }
        }
    }
    Ok(total)
}

/// Words in `[k]^n` with exactly `s` descents whose first letter exceeds `t`.
/// By complementation this also counts `s` rises starting in `[k - t]`.
pub fn count_des_gt(k: u64, t: u64, n: u64, s: u64) -> Result<BigInt> {
    if t > k {
        return Err(Error::invalid(format!(
            "need 0 <= t <= k, got t={t}, k={k}"
        )));
    }
    let (k, t, n, s) = (i(k), i(t), i(n), i(s));
    let mut total = BigInt::zero();
    for m in 0..=n {
        let tail = binom(n - m, s);
        if tail.is_zero() {
            continue;
        }
        for a in 0..=m {
            for b in 0..=a {
                let c = binom((k - t) * a, n - b);
                if c.is_zero() {
                    continue;
                }
                let term = binom(m, a) * binom(a, b) * c * &tail * pow(t, b as u64);
                total += signed(n - a - s, term);
            }
        }
    }
    Ok(total)
}

/// Words in `[alphabet]^n` with exactly `p` descents whose first letter is
/// congruent to `r` mod `s` (`r = s` meaning multiples of `s`).
///
/// Writing `alphabet = s*k + t` with `0 <= t < s`, the sum used depends on
/// whether `t = 0`, `r > t` or `r <= t`.
pub fn count_des_mod(s: u64, alphabet: u64, r: u64, n: u64, p: u64) -> Result<FormulaResult> {
    if s < 2 {
        return Err(Error::invalid(format!(
            "modulus must be at least 2, got {s}"
        )));
    }
    if r == 0 || r > s {
        return Err(Error::invalid(format!(
            "residue must satisfy 1 <= r <= s, got r={r}, s={s}"
        )));
    }
    if alphabet == 0 {
        return Err(Error::invalid("alphabet size must be positive"));
    }
    let (k, t) = (alphabet / s, alphabet % s);
    let params = [
        ("s", s.to_string()),
        ("alphabet", alphabet.to_string()),
        ("r", r.to_string()),
        ("n", n.to_string()),
        ("p", p.to_string()),
    ];
    let (value, id) = if t == 0 {
        (
            variants::des_mod_zero_residue(s, k, r, n, p, variants::ResidueCoefficient::RMinusOne),
            FormulaId::DesModZeroResidue,
        )
    } else if r > t {
        (
            variants::des_mod_offset(s, k, t, r, n, p, variants::FreeIndex::Summed),
            FormulaId::DesModAboveOffset,
        )
    } else {
        (
            variants::des_mod_offset(s, k, t, r, n, p, variants::FreeIndex::Summed),
            FormulaId::DesModWithinOffset,
        )
    };
    Ok(FormulaResult::new(value, id, &params))
}

/// Number of rearrangements of `1^{rho_1} ... m^{rho_m}` with exactly `s`
/// descents whose top lies in `x` and bottom in `y`.
pub fn hall_remmel_count(
    rho: &[u64],
    x: &BTreeSet<Letter>,
    y: &BTreeSet<Letter>,
    s: u64,
) -> BigInt {
    let m = rho.len() as Letter;
    let n: u64 = rho.iter().sum();
    let rho_of = |z: Letter| rho[(z - 1) as usize];
    let outside: Vec<u64> = (1..=m).filter(|z| !x.contains(z)).map(rho_of).collect();
    let a: u64 = outside.iter().sum();
    let prefactor = BigInt::from(multinomial(&outside));
    let tops: Vec<(u64, i64)> = (1..=m)
        .filter(|z| x.contains(z))
        .map(|xl| {
            let above: u64 = (xl + 1..=m).filter(|z| !x.contains(z)).map(rho_of).sum();
            let below: u64 = (1..xl).filter(|z| !y.contains(z)).map(rho_of).sum();
            (rho_of(xl), i(above + below))
        })
        .collect();
    let (a, n, s) = (i(a), i(n), i(s));
    let mut total = BigInt::zero();
    for r in 0..=s {
        let mut term = binom(a + r, r) * binom(n + 1, s - r);
        for &(rx, shift) in &tops {
            term *= binom(i(rx) + r + shift, i(rx));
        }
        total += signed(s - r, term);
    }
    prefactor * total
}

/// Rearrangements of `1^{rho_1} ... (2k)^{rho_{2k}}` (a composition of `n`)
/// with exactly `p` descents starting at an even letter.
pub fn hall_remmel_even_words(rho: &[u64], n: u64, p: u64) -> Result<BigInt> {
    check_even_rho(rho, n)?;
    Ok(variants::hall_remmel_even(
        rho,
        n,
        p,
        variants::EvenPrefactor::OddLetters,
    ))
}

fn check_even_rho(rho: &[u64], n: u64) -> Result<()> {
    if rho.is_empty() || !rho.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "multiplicities must cover an even alphabet, got {} entries",
            rho.len()
        )));
    }
    let total: u64 = rho.iter().sum();
    if total != n {
        return Err(Error::invalid(format!(
            "multiplicities sum to {total}, expected n = {n}"
        )));
    }
    Ok(())
}

/// Alternative readings of formulas whose printed form is ambiguous. The
/// public counting functions use the readings that agree with enumeration;
/// the others are kept so the disagreement stays demonstrable.
pub mod variants {
    use super::*;

    /// Base of the `i_1` power when the alphabet size is a multiple of `s`.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum ResidueCoefficient {
        RMinusOne,
        SMinusOne,
    }

    /// Treatment of the index `j` that appears in the summands of the
    /// `alphabet = s*k + t` formulas.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum FreeIndex {
        /// Summed over `0..=m`.
        Summed,
        /// Fixed to `0`.
        Zero,
        /// Fixed to `m`.
        Top,
    }

    /// Which multiplicities form the prefactor of the even-descent formula.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum EvenPrefactor {
        /// `a = rho_1 + rho_3 + ...`, multinomial over odd letters.
        OddLetters,
        /// `a = rho_2 + rho_4 + ...`, multinomial over even letters.
        EvenLetters,
    }

    /// Alphabet `[s*k]`.
    pub fn des_mod_zero_residue(
        s: u64,
        k: u64,
        r: u64,
        n: u64,
        p: u64,
        coeff: ResidueCoefficient,
    ) -> BigInt {
        let base = match coeff {
            ResidueCoefficient::RMinusOne => i(r) - 1,
            ResidueCoefficient::SMinusOne => i(s) - 1,
        };
        let (s, k, n, p) = (i(s), i(k), i(n), i(p));
        let mut total = BigInt::zero();
        for j in 0..=n {
            let tail = binom(n - j, p);
            if tail.is_zero() {
                continue;
            }
            for i1 in 0..=j {
                let front = pow(s, (j - i1) as u64) * pow(base, i1 as u64) * binom(j, i1) * &tail;
                if front.is_zero() {
                    continue;
                }
                for i2 in 0..=j {
                    let c = binom(k * i2, n - i1);
                    if c.is_zero() {
                        continue;
                    }
                    total += signed(n + p + i2, &front * binom(j, i2) * c);
                }
            }
        }
        total
    }

    /// Alphabet `[s*k + t]` with `1 <= t < s`; covers both `r > t` and `r <= t`.
    pub fn des_mod_offset(
        s: u64,
        k: u64,
        t: u64,
        r: u64,
        n: u64,
        p: u64,
        index: FreeIndex,
    ) -> BigInt {
        let (s, k, t, r, n, p) = (i(s), i(k), i(t), i(r), i(n), i(p));
        let (first_base, upper_scale) = if r > t {
            (r - 1 - t, k)
        } else {
            (s - t + r - 1, k + 1)
        };
        let mut total = BigInt::zero();
        for m in 0..=n {
            let tail = binom(n - m, p);
            if tail.is_zero() {
                continue;
            }
            let js: Vec<i64> = match index {
                FreeIndex::Summed => (0..=m).collect(),
                FreeIndex::Zero => vec![0],
                FreeIndex::Top => vec![m],
            };
            for j in js {
                let outer = binom(m, j) * &tail;
                for i1 in 0..=(m - j) {
                    let left = &outer * binom(m - j, i1) * pow(first_base, i1 as u64);
                    if left.is_zero() {
                        continue;
                    }
                    for i2 in 0..=j {
                        let c = binom(upper_scale * j, n - i1 - i2);
                        if c.is_zero() {
                            continue;
                        }
                        let term = &left
                            * binom(j, i2)
                            * pow(r - 1, i2 as u64)
                            * pow(s, (m - i1 - i2) as u64)
                            * c;
                        total += signed(n + p + j, term);
                    }
                }
            }
        }
        total
    }

    /// Level counts by block without the sign coming from `(z_i - 1)^{b_i}`.
    pub fn levels_blocks_unsigned(block_sizes: &[u64], n: u64, targets: &[u64]) -> Result<BigInt> {
        levels_blocks_impl(block_sizes, n, targets, false)
    }

    pub fn hall_remmel_even(rho: &[u64], n: u64, p: u64, prefactor: EvenPrefactor) -> BigInt {
        let half = rho.len() / 2;
        let evens: Vec<u64> = (1..=half).map(|h| rho[2 * h - 1]).collect();
        let odds: Vec<u64> = (1..=half).map(|h| rho[2 * h - 2]).collect();
        let chosen = match prefactor {
            EvenPrefactor::OddLetters => &odds,
            EvenPrefactor::EvenLetters => &evens,
        };
        let a = i(chosen.iter().sum());
        let pre = BigInt::from(multinomial(chosen));
        let (n, p) = (i(n), i(p));
        let mut total = BigInt::zero();
        for r in 0..=p {
            let mut term = binom(a + r, r) * binom(n + 1, p - r);
            for h in 1..=half {
                // odd letters 2h+1, 2h+3, ..., 2k-1 lying above the even letter 2h
                let above: u64 = (h + 1..=half).map(|g| rho[2 * g - 2]).sum();
                term *= binom(i(evens[h - 1]) + r + i(above), i(evens[h - 1]));
            }
            total += signed(p - r, term);
        }
        pre * total
    }
}
