//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Ordered variable names; position `i` is exponent slot `i` of every monomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: Vec<String>) -> Self {
        VarSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same set with slot `idx` removed.
    pub fn without(&self, idx: usize) -> VarSet {
        let mut names = self.names.clone();
        names.remove(idx);
        VarSet { names }
    }
}

pub type Exponents = Vec<u32>;

/// Canonical form: no zero coefficients, every exponent vector has length `arity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientPolynomial {
    arity: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl CoefficientPolynomial {
    pub fn zero(arity: usize) -> Self {
        CoefficientPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigInt::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c.into());
        p
    }

    /// The single variable in slot `idx`.
    pub fn var(arity: usize, idx: usize) -> Self {
        assert!(
            idx < arity,
            "variable slot {idx} out of range for arity {arity}"
        );
        let mut e = vec![0; arity];
        e[idx] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn monomial(exponents: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c.into());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.arity])
    }

    pub fn add_term(&mut self, exponents: Exponents, c: BigInt) {
        assert_eq!(exponents.len(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        CoefficientPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Coefficient of `var^degree`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: usize, degree: u32) -> Self {
        let mut out = Self::zero(self.arity - 1);
        for (e, c) in &self.terms {
            if e[var] == degree {
                let mut rest = e.clone();
                rest.remove(var);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Sets slot `var` to 1 and drops it.
    pub fn eliminate(&self, var: usize) -> Self {
        let mut out = Self::zero(self.arity - 1);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest.remove(var);
            out.add_term(rest, c.clone());
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Sum of all coefficients, i.e. the value at `(1, ..., 1)`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Human-readable form such as `3 + x_2 + 2*y_1^2*q`.
    pub fn display_with<'a>(&'a self, vars: &'a VarSet) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
    }
}

struct PolyDisplay<'a> {
    poly: &'a CoefficientPolynomial,
    vars: &'a VarSet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.poly.terms {
            let mono = monomial_string(e, self.vars);
            let (neg, mag) = if c < &BigInt::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `x_1^2*q_2`, or the empty string for the constant monomial.
pub fn monomial_string(e: &[u32], vars: &VarSet) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, &d)| {
            let name = vars.names.get(i).map(String::as_str).unwrap_or("?");
            if d == 1 {
                name.to_string()
            } else {
                format!("{name}^{d}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl Add for &CoefficientPolynomial {
    type Output = CoefficientPolynomial;

    fn add(self, rhs: &CoefficientPolynomial) -> CoefficientPolynomial {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CoefficientPolynomial {
    type Output = CoefficientPolynomial;

    fn sub(self, rhs: &CoefficientPolynomial) -> CoefficientPolynomial {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &CoefficientPolynomial {
    type Output = CoefficientPolynomial;

    fn neg(self) -> CoefficientPolynomial {
        CoefficientPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CoefficientPolynomial {
    type Output = CoefficientPolynomial;

    fn mul(self, rhs: &CoefficientPolynomial) -> CoefficientPolynomial {
        self.check_arity(rhs);
        if self.is_zero() || rhs.is_zero() {
            return CoefficientPolynomial::zero(self.arity);
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        CoefficientPolynomial {
            arity: self.arity,
            terms: acc,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars(n: usize) -> VarSet {
        VarSet::new((1..=n).map(|i| format!("x_{i}")).collect())
    }

    #[test]
    fn arithmetic_and_display() {
        let x = CoefficientPolynomial::var(2, 0);
        let y = CoefficientPolynomial::var(2, 1);
        let one = CoefficientPolynomial::one(2);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string_for_test(&vars(2)), "-1 + x_1^2");
        let q = &(&y * &y).scale(&BigInt::from(3)) + &x;
        assert_eq!(q.to_string_for_test(&vars(2)), "3*x_2^2 + x_1");
        assert!((&q - &q).is_zero());
        assert_eq!(
            CoefficientPolynomial::zero(2).to_string_for_test(&vars(2)),
            "0"
        );
    }

    #[test]
    fn coefficient_extraction() {
        let x = CoefficientPolynomial::var(2, 0);
        let y = CoefficientPolynomial::var(2, 1);
        let p = &(&x * &y) + &(&y + &CoefficientPolynomial::constant(2, 5));
        let c = p.coefficient_in(1, 1);
        assert_eq!(c.arity(), 1);
        assert_eq!(c.to_string_for_test(&vars(1)), "1 + x_1");
        assert_eq!(p.eliminate(0).to_string_for_test(&vars(1)), "5 + 2*x_1");
        assert_eq!(p.eval_ones(), BigInt::from(7));
        assert_eq!(p.degree_in(1), 1);
    }

    impl CoefficientPolynomial {
        fn to_string_for_test(&self, v: &VarSet) -> String {
            self.display_with(v).to_string()
        }
    }

    fn arb_poly() -> impl Strategy<Value = CoefficientPolynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..5), 0..6).prop_map(|terms| {
            let mut p = CoefficientPolynomial::zero(2);
            for ((a, b), c) in terms {
                p.add_term(vec![a, b], BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(!(&a - &b).terms().values().any(|v| v.is_zero()));
        }
    }
}
