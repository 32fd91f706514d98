//! Truncated formal series in the boundary-defining variable `r`, in even
//! powers with a single log-bearing slot:
//!
//! ```text
//!     a_0 + a_1 r^2 + ... + a_N r^{2N}  +  b r^{2s} log r
//! ```
//!
//! with `BiPoly` coefficients, truncation order `N`, and log slot `s`.
//!
//! Invariants:
//! - `even.len() == trunc + 1`
//! - `log_slot <= trunc` (the log term is inside the truncation window)
//! - operations drop anything past `r^{2N}`, never wrap
//! - a log term shifted onto a representable order other than the slot is a
//!   hard internal error: the indicial structure admits exactly one log slot

use crate::exact::{rat_int, BiPoly};

/// Polynomial in `r^2` with `BiPoly` coefficients; index `m` holds the
/// coefficient of `r^{2m}`.
pub type RadialPoly = Vec<BiPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    trunc: usize,
    even: Vec<BiPoly>,
    log_coeff: BiPoly,
    log_slot: usize,
}

impl LogSeries {
    /// The zero series with truncation order `trunc` and log slot `log_slot`.
    pub fn zero(trunc: usize, log_slot: usize) -> Self {
        assert!(
            log_slot <= trunc,
            "log slot {log_slot} beyond truncation order {trunc}"
        );
        Self {
            trunc,
            even: vec![BiPoly::zero(); trunc + 1],
            log_coeff: BiPoly::zero(),
            log_slot,
        }
    }

    /// The constant series 1.
    pub fn one(trunc: usize, log_slot: usize) -> Self {
        Self::monomial(0, BiPoly::one(), trunc, log_slot)
    }

    /// `coeff * r^{2j}`. Coefficients past the truncation order are dropped.
    pub fn monomial(j: usize, coeff: BiPoly, trunc: usize, log_slot: usize) -> Self {
        let mut s = Self::zero(trunc, log_slot);
        if j <= trunc {
            s.even[j] = coeff;
        }
        s
    }

    /// `coeff * r^{2*log_slot} log r`.
    pub fn pure_log(coeff: BiPoly, trunc: usize, log_slot: usize) -> Self {
        let mut s = Self::zero(trunc, log_slot);
        s.log_coeff = coeff;
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.trunc
    }

    pub fn log_slot(&self) -> usize {
        self.log_slot
    }

    /// Coefficient of `r^{2j}`. Panics past the truncation order.
    pub fn even_coeff(&self, j: usize) -> &BiPoly {
        assert!(j <= self.trunc, "coefficient r^{} beyond truncation", 2 * j);
        &self.even[j]
    }

    pub fn log_coeff(&self) -> &BiPoly {
        &self.log_coeff
    }

    pub fn set_even(&mut self, j: usize, coeff: BiPoly) {
        assert!(j <= self.trunc, "coefficient r^{} beyond truncation", 2 * j);
        self.even[j] = coeff;
    }

    pub fn set_log(&mut self, coeff: BiPoly) {
        self.log_coeff = coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.even.iter().all(BiPoly::is_zero) && self.log_coeff.is_zero()
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.trunc, other.trunc, "truncation orders differ");
        assert_eq!(self.log_slot, other.log_slot, "log slots differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for j in 0..=self.trunc {
            out.even[j] = out.even[j].add(&other.even[j]);
        }
        out.log_coeff = out.log_coeff.add(&other.log_coeff);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for j in 0..=self.trunc {
            out.even[j] = out.even[j].sub(&other.even[j]);
        }
        out.log_coeff = out.log_coeff.sub(&other.log_coeff);
        out
    }

    /// Applies the Euler operator `r d/dr` termwise:
    /// `r^{2j} -> 2j r^{2j}` and
    /// `r^{2s} log r -> 2s r^{2s} log r + r^{2s}` (the log term feeds its
    /// slot's even coefficient).
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.trunc, self.log_slot);
        for j in 0..=self.trunc {
            out.even[j] = self.even[j].scale(&rat_int(2 * j as i64));
        }
        out.even[self.log_slot] = out.even[self.log_slot].add(&self.log_coeff);
        out.log_coeff = self.log_coeff.scale(&rat_int(2 * self.log_slot as i64));
        out
    }

    /// Multiplies every coefficient (even and log) by `f`.
    pub fn mul_bipoly(&self, f: &BiPoly) -> Self {
        let mut out = self.clone();
        for j in 0..=self.trunc {
            out.even[j] = out.even[j].mul(f);
        }
        out.log_coeff = out.log_coeff.mul(f);
        out
    }

    /// Cauchy product with a polynomial in `r^2`, truncated at the
    /// truncation order.
    ///
    /// The log part multiplies by the factor's constant term in place; a
    /// shift past the truncation order drops, and a shift onto a still
    /// representable order panics (only one log slot exists).
    pub fn mul_radial(&self, factor: &RadialPoly) -> Self {
        let mut out = Self::zero(self.trunc, self.log_slot);
        for (m, fm) in factor.iter().enumerate() {
            if fm.is_zero() {
                continue;
            }
            for j in 0..=self.trunc {
                if j + m > self.trunc {
                    break;
                }
                out.even[j + m] = out.even[j + m].add(&self.even[j].mul(fm));
            }
            if !self.log_coeff.is_zero() {
                if m == 0 {
                    out.log_coeff = out.log_coeff.add(&self.log_coeff.mul(fm));
                } else if self.log_slot + m <= self.trunc {
                    panic!(
                        "log term shifted from slot {} to representable slot {}: \
                         a second log order cannot arise",
                        self.log_slot,
                        self.log_slot + m
                    );
                }
                // else: shifted past the truncation order, dropped
            }
        }
        out
    }
}
