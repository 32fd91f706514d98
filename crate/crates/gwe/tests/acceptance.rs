//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::time::Instant;

use num_traits::{Signed, ToPrimitive, Zero};

use gwe::exact::{c_constant, rat, rat_int, Rat};
use gwe::jacobi::{closed_form_pk, formal_solve};
use gwe::renorm::{default_grid, expansion_coefficients, gw_energy, numeric_extract};
use gwe::spectra::{
    clifford_l_eigenvalue, clifford_laplacian_spectrum, clifford_moduli_dim, clifford_mu_sign,
    clifford_setup, sphere_hessian_spectrum, sphere_kernel_dimension, ModeLabel, Sign, SphereCase,
};

fn report(name: &str, pass: bool) {
    println!(
        "acceptance {}: {}",
        name,
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion failed: {name}");
}

/// Deterministic xorshift64* generator for reproducible random inputs.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut pass = true;
    for k in 1..=8 {
        pass &= formal_solve(k).p_k == closed_form_pk(k);
    }
    let within_budget = start.elapsed().as_secs_f64() < 5.0;
    report(
        "1 (recursion equals closed form, k = 1..8, under 5 s)",
        pass && within_budget,
    );
}

#[test]
fn criterion_2_log_coefficient_relation() {
    let mut rng = Rng(0x9E3779B97F4A7C15);
    let mut pass = true;
    for _ in 0..200 {
        let k = rng.range(1, 8) as u32;
        let lambda = rat(rng.range(-60, 60), rng.range(1, 40));
        let area = rat(rng.range(1, 120), rng.range(1, 40));
        let r = expansion_coefficients(k, &lambda, &area).unwrap();
        pass &= r.log_coeff == rat_int(2) * c_constant(k).unwrap() * &r.energy;
    }

    let e1 = gw_energy(1, &rat(1, 2), &rat_int(1)).unwrap();
    let r1 = expansion_coefficients(1, &rat(1, 2), &rat_int(1)).unwrap();
    pass &= e1 == rat_int(1) && r1.log_coeff == rat(-1, 2);

    let e2 = gw_energy(2, &rat(1, 2), &rat_int(1)).unwrap();
    let r2 = expansion_coefficients(2, &rat(1, 2), &rat_int(1)).unwrap();
    pass &= e2 == rat_int(6) && r2.log_coeff == rat(3, 8);

    report(
        "2 (K = 2 c_k E on 200 random triples plus pinned values)",
        pass,
    );
}

#[test]
fn criterion_3_sphere_spectrum_nonnegative() {
    let start = Instant::now();
    let mut pass = true;
    for k in 1..=6 {
        for m in 1..=4 {
            let case = SphereCase::new(k, m).unwrap();
            let mut kernel = 0u64;
            for line in sphere_hessian_spectrum(&case, 40) {
                let j = match line.labels[0] {
                    ModeLabel::Degree(j) => j,
                    ModeLabel::DegreePair(..) => unreachable!(),
                };
                pass &= !line.eigenvalue.is_negative();
                pass &= line.eigenvalue.is_zero() == (j <= 1);
                if line.eigenvalue.is_zero() {
                    kernel += line.multiplicity;
                }
            }
            pass &= kernel == 2 * (k as u64 + 1) * m as u64;
            pass &= sphere_kernel_dimension(&case) == kernel;
        }
    }
    let within_budget = start.elapsed().as_secs_f64() < 10.0;
    report(
        "3 (sphere eigenvalues >= 0, kernel at j <= 1 of dimension 2(k+1)m, under 10 s)",
        pass && within_budget,
    );
}

#[test]
fn criterion_4_clifford_sign_table() {
    let mut pass = true;
    for k in 1..=12 {
        let expected = match k {
            1 => Sign::Positive,
            3 => Sign::Zero,
            _ => Sign::Negative,
        };
        pass &= clifford_mu_sign(k) == expected;
    }
    pass &= clifford_l_eigenvalue(1, &Rat::zero()) == rat_int(8);
    pass &= clifford_l_eigenvalue(2, &Rat::zero()) == rat_int(-64);
    pass &= clifford_l_eigenvalue(3, &Rat::zero()) == Rat::zero();
    pass &= clifford_l_eigenvalue(4, &Rat::zero()) == rat_int(-2048);
    report(
        "4 (radial-direction sign table k = 1..12 with pinned eigenvalues)",
        pass,
    );
}

#[test]
fn criterion_5_clifford_multiplicities() {
    let pairs = [
        (1, 1),
        (1, 3),
        (1, 5),
        (2, 2),
        (2, 4),
        (2, 6),
        (3, 3),
        (3, 5),
        (4, 4),
        (5, 5),
    ];
    let mut pass = true;
    for (d1, d2) in pairs {
        let case = clifford_setup(d1, d2).unwrap();
        let k = case.k as i64;
        let lines = clifford_laplacian_spectrum(&case, &rat_int(4 * k));
        let mult_at = |eig: i64| -> u64 {
            lines
                .iter()
                .find(|l| l.eigenvalue == rat_int(eig))
                .map_or(0, |l| l.multiplicity)
        };
        pass &= mult_at(0) == 1;
        pass &= mult_at(2 * k) == (d1 + d2 + 2) as u64;
        pass &= mult_at(4 * k) == ((d1 + 1) * (d2 + 1)) as u64;
        // clifford_moduli_dim panics if the enumeration disagrees
        pass &= clifford_moduli_dim(&case) == (d1 + d2 + 2) as u64 + ((d1 + 1) * (d2 + 1)) as u64;
    }
    report(
        "5 (Clifford multiplicities 1, d1+d2+2, (d1+1)(d2+1) on 10 pairs)",
        pass,
    );
}

#[test]
fn criterion_6_numeric_cross_check() {
    let start = Instant::now();
    let mut pass = true;
    for (k, tol) in [(1u32, 1e-8), (2, 1e-8), (3, 1e-6)] {
        let exact = expansion_coefficients(k, &rat(1, 2), &rat_int(1)).unwrap();
        let fit = numeric_extract(k, 0.5, 1.0, 0.5, &default_grid(0.5, 24)).unwrap();
        for (l, b) in exact.b_coeffs.iter().enumerate() {
            let b = b.to_f64().unwrap();
            pass &= (fit.divergent[l] - b).abs() / b.abs() <= tol;
        }
        let log = exact.log_coeff.to_f64().unwrap();
        pass &= (fit.log_coeff - log).abs() / log.abs() <= tol;
    }
    let within_budget = start.elapsed().as_secs_f64() < 2.0;
    report(
        "6 (quadrature fit recovers b_l and K at 1e-8 / 1e-6, under 2 s)",
        pass && within_budget,
    );
}

#[test]
fn criterion_7_homogeneity() {
    let mut pass = true;
    for k in 1..=8 {
        let p = formal_solve(k).p_k;
        pass &= !p.is_zero() && p.is_homogeneous(k + 1);
    }
    report(
        "7 (every monomial of p_k has total degree k+1, k = 1..8)",
        pass,
    );
}

#[test]
fn criterion_8_cli_end_to_end() {
    for (name, args) in common::GOLDEN_MATRIX {
        common::check_golden(name, args);
    }

    let mut pass = true;
    // exit 2: usage errors
    for args in [
        &["jacobi-poly", "--k", "0"][..],
        &["clifford", "--d1", "1", "--d2", "2"][..],
        &["energy", "--k", "1", "--lambda", "x/y", "--area", "1"][..],
    ] {
        pass &= common::run_gwe(args).status.code() == Some(2);
    }
    // exit 1: underdetermined fit
    let out = common::run_gwe(&[
        "verify-numeric",
        "--k",
        "1",
        "--lambda",
        "0.5",
        "--points",
        "2",
    ]);
    pass &= out.status.code() == Some(1);
    // exit 0: healthy run
    let out = common::run_gwe(&["sphere", "--k", "1", "--m", "1"]);
    pass &= out.status.code() == Some(0);

    report(
        "8 (golden JSON matrix stable and exit codes 0/1/2 correct)",
        pass,
    );
}
