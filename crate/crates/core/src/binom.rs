//! Exact binomial and multinomial coefficients.
//!
//! `binom(n, k)` is the generalized coefficient: zero for `k < 0`, zero for
//! `0 <= n < k`, and `(-1)^k C(k - n - 1, k)` for negative `n`. In particular
//! `C(-1, 0) = 1`, which the level-counting sums rely on at `n = 0`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

// Below this bound the running product C(n, i) * (n - i) stays inside u128.
const U128_SAFE_N: i64 = 100;

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let magnitude = binom(k - n - 1, k);
        return if k % 2 == 0 { magnitude } else { -magnitude };
    }
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    if n < U128_SAFE_N {
        let mut acc: u128 = 1;
        for i in 0..k {
            // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        return BigInt::from(acc);
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    BigInt::from(acc)
}

/// Shorthand for arguments arriving as unsigned counts.
pub fn binom_u(n: u64, k: u64) -> BigInt {
    binom(n as i64, k as i64)
}

/// `(a_1 + ... + a_r)! / (a_1! ... a_r!)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut running: u64 = 0;
    for &p in parts {
        running += p;
        let c = binom_u(running, p);
        acc *= c.to_biguint().expect("binomial of non-negative arguments");
    }
    acc
}

pub fn pow(base: i64, exp: u64) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All weak compositions of `total` into `parts` non-negative parts, in
/// lexicographic order.
pub fn weak_compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; parts];
    fn rec(idx: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(idx + 1, left - v, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}
