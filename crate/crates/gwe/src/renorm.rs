//! Renormalized-area expansion and Graham-Witten energy of a minimal
//! submanifold of dimension `2k` in an Einstein manifold with Einstein
//! constant `2 lambda (n-1)`, together with a floating-point re-extraction
//! of the expansion coefficients from quadrature data.
//!
//! The area of the slab `(eps, eps0) x Sigma` is
//! `area * int_eps^eps0 r^{-2k-1} (1 - lambda r^2/2)^{2k} dr`, a Laurent
//! polynomial in `r` plus one log term, so everything here is closed form.

use num_traits::{One, Signed, ToPrimitive};

use crate::exact::{binomial, binomial_int, c_constant, factorial, rat, rat_int, Rat};
use crate::{Error, Result};

/// The divergent coefficients, log coefficient, and energy of the area
/// expansion
/// `Area = sum_l b_l eps^{-2(k-l)} + K log(1/eps) + O(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub k: u32,
    pub lambda: Rat,
    pub area: Rat,
    /// `b_0 .. b_{k-1}`, coefficients of `eps^{-2(k-l)}`.
    pub b_coeffs: Vec<Rat>,
    /// `K`, the coefficient of `log(1/eps)`.
    pub log_coeff: Rat,
    /// The energy, normalized by `K = 2 c_k * energy`.
    pub energy: Rat,
}

fn check_energy_inputs(k: u32, area: &Rat) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if !area.is_positive() {
        return Err(Error::Domain(format!("area must be positive, got {area}")));
    }
    Ok(())
}

/// The energy `2^k (2k-1)! lambda^k area`, exactly.
pub fn gw_energy(k: u32, lambda: &Rat, area: &Rat) -> Result<Rat> {
    check_energy_inputs(k, area)?;
    let prefactor = Rat::from_integer(num_bigint::BigInt::from(2).pow(k) * factorial(2 * k - 1));
    Ok(prefactor * pow_rat(lambda, k) * area)
}

/// All coefficients of the slab-area expansion:
/// `b_l = area * binom(2k, l) (-lambda/2)^l / (2(k-l))` for `l < k` and
/// `K = area * binom(2k, k) (-lambda/2)^k`.
pub fn expansion_coefficients(k: u32, lambda: &Rat, area: &Rat) -> Result<ExpansionReport> {
    check_energy_inputs(k, area)?;
    let minus_half_lambda = lambda.clone() * rat(-1, 2);
    let b_coeffs: Vec<Rat> = (0..k)
        .map(|l| {
            binomial(2 * k as u64, l as i64) * pow_rat(&minus_half_lambda, l) * area
                / rat_int(2 * (k as i64 - l as i64))
        })
        .collect();
    let log_coeff = binomial(2 * k as u64, k as i64) * pow_rat(&minus_half_lambda, k) * area;
    let energy = gw_energy(k, lambda, area)?;

    // K = 2 c_k * energy is an exact identity of the two formulas; a failure
    // here is an arithmetic regression, not an input problem.
    assert_eq!(
        log_coeff,
        rat_int(2) * c_constant(k).expect("k >= 1") * &energy,
        "log coefficient does not satisfy K = 2 c_k E"
    );

    Ok(ExpansionReport {
        k,
        lambda: lambda.clone(),
        area: area.clone(),
        b_coeffs,
        log_coeff,
        energy,
    })
}

/// The constant `-1/(4k c_{k+1})` in front of the first-variation integral.
pub fn first_variation_constant(k: u32) -> Result<Rat> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let c = c_constant(k + 1).expect("k + 1 >= 2");
    Ok(-Rat::one() / (rat_int(4 * k as i64) * c))
}

fn pow_rat(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

// ---------------------------------------------------------------------------
// Floating-point cross-check
// ---------------------------------------------------------------------------

/// Fitted expansion coefficients recovered from slab areas on a grid.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub k: u32,
    /// Fitted `b_0 .. b_{k-1}`.
    pub divergent: Vec<f64>,
    /// Fitted coefficient of `log(1/eps)`.
    pub log_coeff: f64,
    /// Fitted constant term.
    pub constant: f64,
    /// Fitted coefficients of `eps^{2m}`, `m = 1..=k` (the decaying tail of
    /// the exact antiderivative; nuisance parameters for the model).
    pub decaying: Vec<f64>,
    /// Largest `|fit - data| / |data|` over the grid.
    pub max_rel_residual: f64,
}

/// Slab area `area * int_eps^eps0 r^{-2k-1} (1 - lambda r^2/2)^{2k} dr`,
/// integrated term by term through the binomial expansion. Fixed summation
/// order, so results are reproducible bit for bit.
pub fn slab_area(k: u32, lambda: f64, area: f64, eps0: f64, eps: f64) -> f64 {
    let mut total = 0.0;
    for l in 0..=2 * k {
        let binom = binomial_int(2 * k as u64, l as i64)
            .to_f64()
            .expect("binomial out of f64 range");
        let coeff = binom * (-lambda / 2.0).powi(l as i32);
        if l == k {
            total += coeff * (eps0.ln() - eps.ln());
        } else {
            let p = 2 * (l as i32 - k as i32);
            total += coeff * (eps0.powi(p) - eps.powi(p)) / f64::from(p);
        }
    }
    area * total
}

/// The same slab area by adaptive Simpson quadrature on the integrand, kept
/// as an independent check on [`slab_area`].
pub fn slab_area_quadrature(k: u32, lambda: f64, area: f64, eps0: f64, eps: f64) -> f64 {
    let f = |r: f64| r.powi(-(2 * k as i32) - 1) * (1.0 - lambda * r * r / 2.0).powi(2 * k as i32);
    area * adaptive_simpson(&f, eps, eps0, 1e-12)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    recurse(
        f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        rel_tol * whole.abs().max(1e-300),
        48,
    )
}

/// `n` log-spaced points from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && min > 0.0 && max > min, "bad grid parameters");
    let (la, lb) = (min.ln(), max.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Default extraction grid: two decades of log-spaced points ending just
/// under `eps0`, 12 points per decade at the default count of 24.
pub fn default_grid(eps0: f64, points: usize) -> Vec<f64> {
    log_grid(0.009 * eps0, 0.9 * eps0, points)
}

/// Recovers the expansion coefficients from slab areas on `grid` by weighted
/// least squares.
///
/// The model is the exact antiderivative shape
/// `sum_{l<k} b_l eps^{-2(k-l)} + K log(1/eps) + gamma + sum_m c_m eps^{2m}`.
/// Every row is weighted by `eps^{2k}`, which turns the design into a
/// polynomial-plus-log system with O(1) entries; columns are normalized by
/// their largest magnitude and the system is solved by Householder QR.
pub fn numeric_extract(
    k: u32,
    lambda: f64,
    area: f64,
    eps0: f64,
    grid: &[f64],
) -> Result<FitReport> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if area.is_nan() || area <= 0.0 {
        return Err(Error::Domain("area must be positive".into()));
    }
    if eps0.is_nan() || eps0 <= 0.0 || lambda.is_nan() || lambda * eps0 * eps0 >= 2.0 {
        return Err(Error::Domain(
            "require eps0 > 0 and lambda * eps0^2 < 2 so the metric factor stays positive".into(),
        ));
    }
    for &e in grid {
        if !(e > 0.0 && e < eps0) {
            return Err(Error::Domain(format!(
                "grid point {e} outside (0, eps0 = {eps0})"
            )));
        }
    }
    let n_params = 2 * k as usize + 2;
    if grid.len() < n_params + 1 {
        return Err(Error::Fit(format!(
            "underdetermined fit: {} grid points for {} model terms (need at least {})",
            grid.len(),
            n_params,
            n_params + 1
        )));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("grid points are finite"));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Fit("degenerate grid: repeated points".into()));
    }

    let kk = k as usize;
    let rows = grid.len();
    // Row-weighted design: every model column times eps^{2k}.
    let mut design = vec![vec![0.0; n_params]; rows];
    let mut rhs = vec![0.0; rows];
    for (i, &e) in grid.iter().enumerate() {
        let w = e.powi(2 * k as i32);
        for (l, slot) in design[i].iter_mut().take(kk).enumerate() {
            *slot = e.powi(2 * l as i32); // b_l * eps^{-2(k-l)} * w
        }
        design[i][kk] = w * (1.0 / e).ln(); // log column
        design[i][kk + 1] = w; // constant column
        for m in 1..=kk {
            design[i][kk + 1 + m] = e.powi(2 * (k as i32 + m as i32)); // decaying
        }
        rhs[i] = w * slab_area(k, lambda, area, eps0, e);
    }

    let scales: Vec<f64> = (0..n_params)
        .map(|j| design.iter().map(|row| row[j].abs()).fold(0.0, f64::max))
        .collect();
    if scales.contains(&0.0) {
        return Err(Error::Fit("degenerate grid: zero basis column".into()));
    }
    for row in design.iter_mut() {
        for (v, s) in row.iter_mut().zip(&scales) {
            *v /= s;
        }
    }

    let mut beta = householder_lstsq(design, rhs)?;
    for (b, s) in beta.iter_mut().zip(&scales) {
        *b /= s;
    }

    let mut max_rel_residual = 0.0f64;
    for &e in grid {
        let data = slab_area(k, lambda, area, eps0, e);
        let mut fit = beta[kk] * (1.0 / e).ln() + beta[kk + 1];
        for (l, b) in beta.iter().take(kk).enumerate() {
            fit += b * e.powi(-2 * (k as i32 - l as i32));
        }
        for m in 1..=kk {
            fit += beta[kk + 1 + m] * e.powi(2 * m as i32);
        }
        max_rel_residual = max_rel_residual.max((fit - data).abs() / data.abs().max(1e-300));
    }

    Ok(FitReport {
        k,
        divergent: beta[..kk].to_vec(),
        log_coeff: beta[kk],
        constant: beta[kk + 1],
        decaying: beta[kk + 2..].to_vec(),
        max_rel_residual,
    })
}

/// Least squares by Householder QR; `a` is row major, `rows >= cols`.
fn householder_lstsq(mut a: Vec<Vec<f64>>, mut y: Vec<f64>) -> Result<Vec<f64>> {
    let rows = a.len();
    let cols = a[0].len();
    for col in 0..cols {
        let norm = a[col..].iter().map(|r| r[col] * r[col]).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return Err(Error::Fit(
                "singular least-squares system (degenerate grid)".into(),
            ));
        }
        let alpha = if a[col][col] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (col..rows).map(|i| a[i][col]).collect();
        v[0] -= alpha;
        let vsq: f64 = v.iter().map(|x| x * x).sum();
        if vsq > 0.0 {
            for j in col..cols {
                let dot: f64 = v.iter().zip(&a[col..]).map(|(vi, row)| vi * row[j]).sum();
                let t = 2.0 * dot / vsq;
                for (i, vi) in v.iter().enumerate() {
                    a[col + i][j] -= t * vi;
                }
            }
            let dot: f64 = v.iter().zip(&y[col..]).map(|(vi, yi)| vi * yi).sum();
            let t = 2.0 * dot / vsq;
            for (i, vi) in v.iter().enumerate() {
                y[col + i] -= t * vi;
            }
        }
        a[col][col] = alpha;
    }
    // Back substitution on the triangular factor.
    let mut beta = vec![0.0; cols];
    for col in (0..cols).rev() {
        let mut acc = y[col];
        for j in col + 1..cols {
            acc -= a[col][j] * beta[j];
        }
        if a[col][col].abs() < 1e-14 {
            return Err(Error::Fit(
                "singular least-squares system (degenerate grid)".into(),
            ));
        }
        beta[col] = acc / a[col][col];
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn energy_pinned_values() {
        assert_eq!(
            gw_energy(1, &rat(1, 2), &rat_int(1)).unwrap(),
            Rat::one(),
            "unit 2-sphere normalization"
        );
        assert_eq!(
            gw_energy(2, &Rat::zero(), &rat_int(1)).unwrap(),
            Rat::zero()
        );
        assert_eq!(gw_energy(2, &rat(1, 2), &rat_int(1)).unwrap(), rat_int(6));
        // symbolic area unit: scales linearly
        assert_eq!(
            gw_energy(1, &rat(1, 2), &rat(4, 1)).unwrap(),
            rat_int(4),
            "area 4pi in units of pi -> energy 4pi in the same units"
        );
    }

    #[test]
    fn energy_domain_errors() {
        assert!(gw_energy(0, &rat(1, 2), &rat_int(1)).is_err());
        assert!(gw_energy(1, &rat(1, 2), &rat_int(0)).is_err());
        assert!(gw_energy(1, &rat(1, 2), &rat_int(-3)).is_err());
    }

    #[test]
    fn expansion_pinned_values() {
        let r = expansion_coefficients(1, &rat(1, 2), &rat_int(1)).unwrap();
        assert_eq!(r.b_coeffs, vec![rat(1, 2)]);
        assert_eq!(r.log_coeff, rat(-1, 2));
        assert_eq!(r.energy, Rat::one());

        let r = expansion_coefficients(1, &Rat::zero(), &rat_int(1)).unwrap();
        assert_eq!(r.b_coeffs, vec![rat(1, 2)]);
        assert_eq!(r.log_coeff, Rat::zero());

        let r = expansion_coefficients(2, &rat(1, 2), &rat_int(1)).unwrap();
        assert_eq!(r.b_coeffs, vec![rat(1, 4), rat(-1, 2)]);
        assert_eq!(r.log_coeff, rat(3, 8));
        assert_eq!(r.energy, rat_int(6));
    }

    #[test]
    fn first_variation_constant_resolved_by_evaluation() {
        // -1/(4k c_{k+1}) with c_2 = 1/32, c_3 = -1/768, c_4 = 1/36864.
        assert_eq!(first_variation_constant(1).unwrap(), rat_int(-8));
        assert_eq!(first_variation_constant(2).unwrap(), rat_int(96));
        assert_eq!(first_variation_constant(3).unwrap(), rat_int(-3072));
        assert!(first_variation_constant(0).is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-30i64..=30, 1i64..=10).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_pos_rat() -> impl Strategy<Value = Rat> {
        (1i64..=30, 1i64..=10).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn log_coefficient_relation(k in 1u32..=8, lambda in arb_rat(), area in arb_pos_rat()) {
            let report = expansion_coefficients(k, &lambda, &area).unwrap();
            let c = c_constant(k).unwrap();
            prop_assert_eq!(report.log_coeff, rat_int(2) * c * report.energy);
        }

        #[test]
        fn energy_scaling_laws(k in 1u32..=6, lambda in arb_rat(),
                               area in arb_pos_rat(), t in arb_pos_rat()) {
            // degree k in lambda, degree 1 in area
            let base = gw_energy(k, &lambda, &area).unwrap();
            let scaled_lambda = gw_energy(k, &(&lambda * &t), &area).unwrap();
            prop_assert_eq!(scaled_lambda, pow_rat(&t, k) * &base);
            let scaled_area = gw_energy(k, &lambda, &(&area * &t)).unwrap();
            prop_assert_eq!(scaled_area, &t * &base);
        }
    }

    #[test]
    fn closed_form_slab_matches_quadrature() {
        for k in 1..=3 {
            for &eps in &[0.02, 0.1, 0.3] {
                let direct = slab_area(k, 0.5, 1.0, 0.5, eps);
                let quad = slab_area_quadrature(k, 0.5, 1.0, 0.5, eps);
                let rel = ((direct - quad) / direct).abs();
                assert!(rel < 1e-10, "k={k} eps={eps}: rel diff {rel:.3e}");
            }
        }
    }

    #[test]
    fn extraction_recovers_k1_on_small_grid() {
        let grid = log_grid(1e-3, 1e-1, 12);
        let fit = numeric_extract(1, 0.5, 1.0, 0.5, &grid).unwrap();
        assert!((fit.divergent[0] - 0.5).abs() / 0.5 < 1e-8);
        assert!((fit.log_coeff - (-0.5)).abs() / 0.5 < 1e-8);
    }

    #[test]
    fn extraction_no_log_term_when_flat() {
        let grid = log_grid(1e-3, 1e-1, 12);
        let fit = numeric_extract(1, 0.0, 1.0, 0.5, &grid).unwrap();
        assert!(fit.log_coeff.abs() < 1e-10);
    }

    #[test]
    fn extraction_recovers_k2_log_coefficient() {
        let fit = numeric_extract(2, 0.5, 1.0, 0.5, &default_grid(0.5, 24)).unwrap();
        assert!((fit.log_coeff - 0.375).abs() / 0.375 < 1e-8);
    }

    #[test]
    fn extraction_error_paths() {
        let grid = log_grid(1e-3, 1e-1, 4);
        assert!(matches!(
            numeric_extract(1, 0.5, 1.0, 0.5, &grid),
            Err(Error::Fit(_))
        ));

        let degenerate = vec![0.01, 0.01, 0.02, 0.03, 0.04];
        assert!(matches!(
            numeric_extract(1, 0.5, 1.0, 0.5, &degenerate),
            Err(Error::Fit(_))
        ));

        let out_of_range = vec![0.1, 0.2, 0.3, 0.4, 0.6];
        assert!(matches!(
            numeric_extract(1, 0.5, 1.0, 0.5, &out_of_range),
            Err(Error::Domain(_))
        ));

        assert!(matches!(
            numeric_extract(1, 9.0, 1.0, 0.5, &log_grid(1e-3, 1e-1, 8)),
            Err(Error::Domain(_))
        ));
    }
}
