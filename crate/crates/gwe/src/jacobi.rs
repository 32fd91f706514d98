//! Formal boundary value problem for the Jacobi operator on the asymptotic
//! cylinder, solved two independent ways.
//!
//! The ansatz is `nu = h(r) nu_0` with
//! `h = sum_j a_j r^{2j} + p r^{2k+2} log r`, the `a_j` and `p` polynomials
//! in `x` (the Jacobi operator acting on the boundary value) and `lambda`.
//! The conjugated operator identity
//!
//! ```text
//! (1 - lambda r^2/2)^2 J+ (h nu) =
//!     r^2 h x - (1 - lambda r^2/2)^2 (r d/dr)^2 h
//!     + 2(k+1)(1 - lambda^2 r^4/4) (r d/dr) h
//! ```
//!
//! keeps every coefficient polynomial, so the order-by-order solve is exact.
//! [`formal_solve`] runs that recursion; [`closed_form_pk`] expands the
//! factored product formula. Their agreement is the crate's headline check:
//! the recursion never sees the factored form.

use crate::exact::{c_constant, rat, rat_int, BiPoly};
use crate::series::{LogSeries, RadialPoly};

/// Result of the formal solve for a given `k`.
///
/// `a_coeffs[j]` is the coefficient of `r^{2j}`, `j = 0..=k+1`, with
/// `a_coeffs[0] = 1` and `a_coeffs[k+1]` gauge-fixed (zero by default: the
/// solution is unique only modulo `O(r^{2k+2})`). `p_k` is the log-slot
/// coefficient at `r = 0`, homogeneous of total degree `k+1` in `(x, lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvpSolution {
    pub k: u32,
    pub a_coeffs: Vec<BiPoly>,
    pub p_k: BiPoly,
}

/// Applies the conjugated Jacobi operator to a series via the displayed
/// identity, with `x` acting as multiplication by the indeterminate.
///
/// Requires `s` truncated at order at least `k + 1`.
pub fn apply_jacobi_conjugated(s: &LogSeries, k: u32) -> LogSeries {
    assert!(
        s.truncation_order() > k as usize,
        "series truncated below order k + 1"
    );
    let lam = BiPoly::lambda();
    let lam_sq = lam.mul(&lam);

    // (1 - lambda r^2/2)^2 = 1 - lambda r^2 + lambda^2 r^4/4
    let square_factor: RadialPoly = vec![BiPoly::one(), lam.neg(), lam_sq.scale(&rat(1, 4))];
    // 2(k+1)(1 - lambda^2 r^4/4)
    let two_k1 = rat_int(2 * (k as i64 + 1));
    let first_order_factor: RadialPoly = vec![
        BiPoly::constant(two_k1.clone()),
        BiPoly::zero(),
        lam_sq.scale(&(-two_k1 / rat_int(4))),
    ];

    let shift = vec![BiPoly::zero(), BiPoly::one()]; // multiplication by r^2
    let term_x = s.mul_bipoly(&BiPoly::x()).mul_radial(&shift);
    let term_d2 = s.euler().euler().mul_radial(&square_factor);
    let term_d1 = s.euler().mul_radial(&first_order_factor);

    term_x.sub(&term_d2).add(&term_d1)
}

/// Solves the boundary value problem by the order-by-order recursion with the
/// default gauge `a_{k+1} = 0`.
///
/// At order `r^{2j}` (`1 <= j <= k`) the equation reads
/// `4j(k+1-j) a_j + (lower terms) = 0`; the divisor is nonzero there. At
/// `j = k+1` the even coefficient drops out and the log slot determines
/// `p_k` through its `-2(k+1) p_k` contribution. Panics if the residual of
/// the assembled solution fails to vanish through order `r^{2k+2}`.
pub fn formal_solve(k: u32) -> BvpSolution {
    formal_solve_with_gauge(k, &BiPoly::zero())
}

/// Same recursion with an arbitrary gauge coefficient at order `k + 1`; the
/// log coefficient must not depend on it.
pub fn formal_solve_with_gauge(k: u32, gauge: &BiPoly) -> BvpSolution {
    assert!(k >= 1, "formal_solve requires k >= 1");
    let slot = k as usize + 1;
    let mut h = LogSeries::one(slot, slot);
    let mut a_coeffs = vec![BiPoly::one()];

    for j in 1..=k as usize {
        let residual = apply_jacobi_conjugated(&h, k);
        let divisor = 4 * j as i64 * (slot as i64 - j as i64);
        assert!(divisor != 0, "indicial divisor vanished at interior order");
        let a_j = residual.even_coeff(j).scale(&rat(-1, divisor));
        h.set_even(j, a_j.clone());
        a_coeffs.push(a_j);
    }

    // The order-(k+1) even coefficient is free; fix it before reading off the
    // log slot to witness that p_k does not depend on it.
    h.set_even(slot, gauge.clone());
    a_coeffs.push(gauge.clone());

    // The log term contributes -2(k+1) p_k at the r^{2k+2} even order, which
    // is the only remaining unknown there.
    let residual = apply_jacobi_conjugated(&h, k);
    let p_k = residual.even_coeff(slot).scale(&rat(1, 2 * slot as i64));
    h.set_log(p_k.clone());

    let final_residual = apply_jacobi_conjugated(&h, k);
    for j in 0..=slot {
        assert!(
            final_residual.even_coeff(j).is_zero(),
            "solver inconsistency: residual at r^{} is {}",
            2 * j,
            final_residual.even_coeff(j)
        );
    }
    assert!(
        final_residual.log_coeff().is_zero(),
        "solver inconsistency: residual log coefficient is {}",
        final_residual.log_coeff()
    );

    BvpSolution { k, a_coeffs, p_k }
}

/// The shift coefficients `2(k+l)(k-l+1)` of the second-variation
/// factorization, for `l = 1..=k+1`; each multiplies `lambda` in its factor.
/// The last entry is always zero.
pub fn factor_shifts(k: u32) -> Vec<(u32, i64)> {
    assert!(k >= 1, "factor_shifts requires k >= 1");
    (1..=k as i64 + 1)
        .map(|l| (l as u32, 2 * (k as i64 + l) * (k as i64 - l + 1)))
        .collect()
}

/// Expands the closed product formula
/// `p_k = -2 c_{k+1} prod_{l=1}^{k+1} (x + 2 lambda (k+l)(k-l+1))`.
pub fn closed_form_pk(k: u32) -> BiPoly {
    assert!(k >= 1, "closed_form_pk requires k >= 1");
    let c = c_constant(k + 1).expect("k + 1 >= 2");
    let mut p = BiPoly::constant(rat_int(-2) * c);
    for (_, shift) in factor_shifts(k) {
        let factor = BiPoly::x().add(&BiPoly::monomial(0, 1, rat_int(shift)));
        p = p.mul(&factor);
    }
    p
}
