//! Exact rational scalars, combinatorial constants, and the sparse bivariate
//! polynomial ring `Q[x, lambda]`.
//!
//! `Rat` is an arbitrary-precision fraction kept in canonical form (reduced,
//! positive denominator) by construction. [`BiPoly`] stores only nonzero
//! coefficients, keyed by the exponent pair `(x_pow, lambda_pow)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar. Canonical form (gcd 1, positive denominator) is
/// maintained by every arithmetic operation.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

/// The renormalization constant `c_k = (-1)^k / (2^{2k} (k-1)! k!)`.
///
/// Defined for `k >= 1` only; `k = 0` is a domain error.
pub fn c_constant(k: u32) -> Result<Rat> {
    if k == 0 {
        return Err(Error::Domain(
            "c_k is undefined for k = 0 (requires k >= 1)".into(),
        ));
    }
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let denom = BigInt::from(2).pow(2 * k) * factorial(k - 1) * factorial(k);
    Ok(Rat::new(BigInt::from(sign), denom))
}

/// Binomial coefficient with the out-of-range convention: 0 when `r < 0` or
/// `r > n`.
pub fn binomial(n: u64, r: i64) -> Rat {
    Rat::from_integer(binomial_int(n, r))
}

pub(crate) fn binomial_int(n: u64, r: i64) -> BigInt {
    if r < 0 || r as u64 > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(r))
}

/// Sparse polynomial in two indeterminates over `Rat`: `x` (standing for the
/// Jacobi operator) and `lambda` (the Einstein parameter).
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    /// The indeterminate `lambda`.
    pub fn lambda() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    /// `coeff * x^x_pow * lambda^lambda_pow`.
    pub fn monomial(x_pow: u32, lambda_pow: u32, coeff: Rat) -> Self {
        let mut p = Self::default();
        if !coeff.is_zero() {
            p.terms.insert((x_pow, lambda_pow), coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^x_pow * lambda^lambda_pow` (zero if absent).
    pub fn coeff(&self, x_pow: u32, lambda_pow: u32) -> Rat {
        self.terms
            .get(&(x_pow, lambda_pow))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms in ascending `(x_pow, lambda_pow)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32), coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(*key, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(*key, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (key, c) in &self.terms {
            out.terms.insert(*key, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        let mut out = Self::default();
        for (key, v) in &self.terms {
            out.terms.insert(*key, v * c);
        }
        out
    }

    /// Substitutes both indeterminates and returns the exact value.
    pub fn eval(&self, x_val: &Rat, lambda_val: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((a, b), c) in &self.terms {
            acc += c * pow_rat(x_val, *a) * pow_rat(lambda_val, *b);
        }
        acc
    }

    /// Largest total degree `x_pow + lambda_pow` over the monomials, or
    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// True when every monomial has total degree exactly `degree`.
    /// The zero polynomial is homogeneous of every degree.
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|(a, b)| a + b == degree)
    }
}

fn pow_rat(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::add(self, rhs)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::sub(self, rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::mul(self, rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::neg(self)
    }
}

impl fmt::Display for BiPoly {
    /// Renders terms by descending `(x_pow, lambda_pow)`, e.g.
    /// `-1/16*x^2 - 1/4*x*lambda`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = monomial_vars(*a, *b);
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}*{vars}")?;
            }
        }
        Ok(())
    }
}

fn monomial_vars(x_pow: u32, lambda_pow: u32) -> String {
    let mut parts = Vec::new();
    match x_pow {
        0 => {}
        1 => parts.push("x".to_string()),
        p => parts.push(format!("x^{p}")),
    }
    match lambda_pow {
        0 => {}
        1 => parts.push("lambda".to_string()),
        p => parts.push(format!("lambda^{p}")),
    }
    parts.join("*")
}
