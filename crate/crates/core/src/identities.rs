//! Direct combinatorial counts and the binomial identities obtained by
//! comparing them with the alternating-sum formulas.
//!
//! Each identity check evaluates the sum exactly as stated first. Only when
//! that fails is a reading with widened summation bounds tried; the report
//! records which one held.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::{binom, pow, sign};
use crate::error::{Error, Result};

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

/// Words in `[k]^n` with exactly `s` descents starting at the letter `k`.
pub fn direct_count_top_letter(k: u64, n: u64, s: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be positive"));
    }
    let (k, n, s) = (i(k), i(n), i(s));
    let mut total = BigInt::zero();
    for r in s..=(n - s) {
        total += pow(k - 1, r as u64) * binom(r, s) * binom(n - r, s);
    }
    Ok(total)
}

/// Words in `[k]^n` with exactly `s` descents starting in `{1, 2}`, i.e.
/// exactly `s` factors `21`.
pub fn direct_count_two_bottom(k: u64, n: u64, s: u64) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::invalid(format!("need k >= 2, got {k}")));
    }
    let (k, n, s) = (i(k), i(n), i(s));
    let mut total = BigInt::zero();
    for a in s..=n {
        for b in s..=(n - a) {
            let rest = n - a - b;
            total += pow(k - 2, rest as u64)
                * binom(rest + s, s)
                * binom(n - b, a - s)
                * binom(n - a, b - s);
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `C(r,s) C(n-r,s)` against the alternating sum over `m` and `a`.
    Levels28,
    /// The coefficient-of-`x^r` identity in `n`, `r`, `s`.
    Descents32,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Levels28 => "identity-28",
            IdentityId::Descents32 => "identity-32",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n: u64,
    pub r: u64,
    pub s: u64,
    pub lhs: BigInt,
    /// Right-hand side of the form that decided the verdict.
    pub rhs: BigInt,
    /// The right-hand side exactly as stated.
    pub literal_rhs: BigInt,
    /// Set when the literal form failed and the widened form was evaluated.
    pub corrected_rhs: Option<BigInt>,
    pub verdict: Verdict,
}

impl IdentityReport {
    fn decide(
        id: IdentityId,
        (n, r, s): (u64, u64, u64),
        lhs: BigInt,
        literal: BigInt,
        corrected: impl FnOnce() -> BigInt,
    ) -> Self {
        let (rhs, corrected_rhs) = if literal == lhs {
            (literal.clone(), None)
        } else {
            let c = corrected();
            (c.clone(), Some(c))
        };
        let verdict = if rhs == lhs {
            Verdict::Equal
        } else {
            Verdict::Unequal
        };
        IdentityReport {
            id,
            n,
            r,
            s,
            lhs,
            rhs,
            literal_rhs: literal,
            corrected_rhs,
            verdict,
        }
    }

    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn literal_holds(&self) -> bool {
        self.literal_rhs == self.lhs
    }
}

fn rhs_28(n: i64, r: i64, s: i64, m_from: i64) -> BigInt {
    let mut total = BigInt::zero();
    for m in m_from..=(n - s) {
        let tail = binom(n - m, s);
        for a in r..=m {
            let term = binom(m, a) * binom(a, r) * binom(a, n - r) * &tail;
            total += signed(n - a - s, term);
        }
    }
    total
}

pub fn check_identity_26_28(n: u64, r: u64, s: u64) -> IdentityReport {
    let (ni, ri, si) = (i(n), i(r), i(s));
    let lhs = binom(ri, si) * binom(ni - ri, si);
    let literal = rhs_28(ni, ri, si, ri);
    IdentityReport::decide(IdentityId::Levels28, (n, r, s), lhs, literal, || {
        rhs_28(ni, ri, si, 0)
    })
}

fn rhs_32(n: i64, r: i64, s: i64, widen: bool) -> BigInt {
    let mut total = BigInt::zero();
    for m in 0..=n {
        let tail = binom(n - m, s);
        if tail.is_zero() {
            continue;
        }
        let a_max = if widen { m } else { m - r };
        for a in 0..=a_max {
            let term = binom(m, a) * binom(m - a, r) * binom(2 * a, n - r) * &tail;
            total += signed(n - a - r - s, term);
        }
    }
    total
}

pub fn check_identity_32(n: u64, r: u64, s: u64) -> IdentityReport {
    let (ni, ri, si) = (i(n), i(r), i(s));
    let mut lhs = BigInt::zero();
    for a in si..=(ni - si) {
        lhs += binom(ri + si, si) * binom(a + ri, a - si) * binom(ni - a, ni - a - ri - si);
    }
    let literal = rhs_32(ni, ri, si, false);
    IdentityReport::decide(IdentityId::Descents32, (n, r, s), lhs, literal, || {
        rhs_32(ni, ri, si, true)
    })
}
