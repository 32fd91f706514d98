//! Spectral evaluation of the second-variation operator on the two closed-form
//! geometries: totally geodesic spheres `S^{2k}` in `S^{2k+m}(1)` and Clifford
//! hypersurfaces `S^{d1}(r1) x S^{d2}(r2)` in `S^{2k+1}(1)`.
//!
//! Everything is exact: the Laplacian eigenvalues involved are rational, the
//! shift constants integral, so no floating point appears in this module.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{binomial_int, rat, rat_int, Rat};
use crate::{Error, Result};

/// Totally geodesic `S^{2k}` inside the unit sphere `S^{2k+m}(1)`; the round
/// metric has `lambda = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereCase {
    pub k: u32,
    pub m: u32,
}

impl SphereCase {
    pub fn new(k: u32, m: u32) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::Domain("sphere case requires k >= 1, m >= 1".into()));
        }
        Ok(Self { k, m })
    }

    /// Dimension of the ambient sphere.
    pub fn ambient_dim(&self) -> u32 {
        2 * self.k + self.m
    }
}

/// Minimal product `S^{d1}(r1) x S^{d2}(r2)` in `S^{2k+1}(1)` with
/// `r_i^2 = d_i / (2k)`, `2k = d1 + d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordCase {
    pub d1: u32,
    pub d2: u32,
    pub k: u32,
    pub r1_sq: Rat,
    pub r2_sq: Rat,
}

/// Builds the Clifford case; `d1 + d2` must be even so `k` is an integer.
pub fn clifford_setup(d1: u32, d2: u32) -> Result<CliffordCase> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Domain("factor dimensions must be positive".into()));
    }
    if !(d1 + d2).is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "d1 + d2 = {} is odd: the hypersurface dimension must be even",
            d1 + d2
        )));
    }
    let k = (d1 + d2) / 2;
    let case = CliffordCase {
        d1,
        d2,
        k,
        r1_sq: rat(d1 as i64, 2 * k as i64),
        r2_sq: rat(d2 as i64, 2 * k as i64),
    };
    debug_assert_eq!(&case.r1_sq + &case.r2_sq, Rat::one());
    Ok(case)
}

/// Mode index attached to a spectral line: a single spherical-harmonic degree
/// or a degree pair on a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModeLabel {
    Degree(u32),
    DegreePair(u32, u32),
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Degree(j) => write!(f, "j={j}"),
            ModeLabel::DegreePair(j1, j2) => write!(f, "(j1={j1}, j2={j2})"),
        }
    }
}

/// One `(eigenvalue, multiplicity)` pair of an operator spectrum, with the
/// contributing mode indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralLine {
    pub eigenvalue: Rat,
    pub multiplicity: u64,
    pub labels: Vec<ModeLabel>,
}

/// Multiplicity of degree-`j` spherical harmonics on `S^d`.
fn harmonic_multiplicity(d: u32, j: u32) -> u64 {
    let n = (d + j) as u64;
    let diff = binomial_int(n, d as i64) - binomial_int(n.saturating_sub(2), d as i64);
    diff.to_u64().expect("multiplicity exceeds u64")
}

/// Scalar Laplacian spectral line on `S^d(radius)`: eigenvalue
/// `j(d+j-1)/radius^2` with the spherical-harmonic multiplicity.
pub fn sphere_laplacian_line(d: u32, radius_sq: &Rat, j: u32) -> SpectralLine {
    assert!(d >= 1 && radius_sq.is_positive(), "need d >= 1, radius > 0");
    let eigenvalue = rat_int(j as i64 * (d as i64 + j as i64 - 1)) / radius_sq;
    SpectralLine {
        eigenvalue,
        multiplicity: harmonic_multiplicity(d, j),
        labels: vec![ModeLabel::Degree(j)],
    }
}

/// Second-variation eigenvalue on the degree-`j` harmonics of `S^{2k}(1)`:
/// the product of the `k+1` shifted Laplacian factors.
fn sphere_hessian_eigenvalue(k: u32, j: u32) -> Rat {
    let delta = j as i64 * (2 * k as i64 + j as i64 - 1);
    let mut acc = Rat::one();
    for l in 1..=k as i64 + 1 {
        acc *= rat_int(delta + (k as i64 + l - 1) * (k as i64 - l));
    }
    acc
}

/// Spectrum of the second-variation operator on normal fields of the totally
/// geodesic sphere, one line per harmonic degree `j <= jmax`. Multiplicities
/// carry the factor `m` from the parallel normal frame.
pub fn sphere_hessian_spectrum(case: &SphereCase, jmax: u32) -> Vec<SpectralLine> {
    (0..=jmax)
        .map(|j| SpectralLine {
            eigenvalue: sphere_hessian_eigenvalue(case.k, j),
            multiplicity: case.m as u64 * harmonic_multiplicity(2 * case.k, j),
            labels: vec![ModeLabel::Degree(j)],
        })
        .collect()
}

/// Total multiplicity of the zero eigenvalue, checked against the conformal
/// count `2(k+1)m`. A mismatch is an arithmetic regression and panics.
pub fn sphere_kernel_dimension(case: &SphereCase) -> u64 {
    // Zero modes sit at j = 0 and j = 1; scan a margin beyond to witness it.
    let enumerated: u64 = sphere_hessian_spectrum(case, 2 * case.k + 4)
        .iter()
        .filter(|line| line.eigenvalue.is_zero())
        .map(|line| line.multiplicity)
        .sum();
    let expected = 2 * (case.k as u64 + 1) * case.m as u64;
    assert_eq!(
        enumerated, expected,
        "kernel enumeration disagrees with 2(k+1)m for k={}, m={}",
        case.k, case.m
    );
    enumerated
}

/// Dimensions `(conformal, isometry, constant-projection)` of the vector-field
/// algebras of `S^n(1)`: `(n+1)(n+2)/2 = n(n+1)/2 + (n+1)`.
pub fn conformal_dims(n: u32) -> Result<(u64, u64, u64)> {
    if n < 3 {
        return Err(Error::Domain("conformal count requires n >= 3".into()));
    }
    let n = n as u64;
    Ok(((n + 1) * (n + 2) / 2, n * (n + 1) / 2, n + 1))
}

/// Scalar Laplacian spectrum of the Clifford product up to `cutoff`,
/// enumerated over degree pairs and merged by exact eigenvalue equality.
pub fn clifford_laplacian_spectrum(case: &CliffordCase, cutoff: &Rat) -> Vec<SpectralLine> {
    let factor_eig = |d: u32, r_sq: &Rat, j: u32| -> Rat {
        rat_int(j as i64 * (d as i64 + j as i64 - 1)) / r_sq
    };
    let mut merged: BTreeMap<Rat, (u64, Vec<ModeLabel>)> = BTreeMap::new();
    let mut j1 = 0u32;
    while &factor_eig(case.d1, &case.r1_sq, j1) <= cutoff {
        let e1 = factor_eig(case.d1, &case.r1_sq, j1);
        let m1 = harmonic_multiplicity(case.d1, j1);
        let mut j2 = 0u32;
        loop {
            let total = &e1 + factor_eig(case.d2, &case.r2_sq, j2);
            if &total > cutoff {
                break;
            }
            let mult = m1 * harmonic_multiplicity(case.d2, j2);
            let entry = merged.entry(total).or_insert_with(|| (0, Vec::new()));
            entry.0 += mult;
            entry.1.push(ModeLabel::DegreePair(j1, j2));
            j2 += 1;
        }
        j1 += 1;
    }
    merged
        .into_iter()
        .map(|(eigenvalue, (multiplicity, mut labels))| {
            labels.sort();
            SpectralLine {
                eigenvalue,
                multiplicity,
                labels,
            }
        })
        .collect()
}

/// Eigenvalue of the product operator
/// `L = prod_{l=1}^{k+1} (Delta - 4k + (k+l)(k-l+1))` on a Laplacian
/// eigenfunction with eigenvalue `delta_eig`.
pub fn clifford_l_eigenvalue(k: u32, delta_eig: &Rat) -> Rat {
    assert!(k >= 1, "clifford_l_eigenvalue requires k >= 1");
    let mut acc = Rat::one();
    for l in 1..=k as i64 + 1 {
        acc *= delta_eig + rat_int(-4 * k as i64 + (k as i64 + l) * (k as i64 - l + 1));
    }
    acc
}

/// Sign of a second-variation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "+"),
            Sign::Zero => write!(f, "0"),
            Sign::Negative => write!(f, "-"),
        }
    }
}

/// Sign of the second variation in the radial direction `mu` (the constant
/// mode): the sign of `L` at the zero Laplacian eigenvalue.
///
/// The computed sign must reproduce the closed rule "positive for k = 1,
/// zero for k = 3, negative for k = 2 and k >= 4"; a contradiction panics,
/// serving as a regression tripwire.
pub fn clifford_mu_sign(k: u32) -> Sign {
    assert!(k >= 1, "clifford_mu_sign requires k >= 1");
    let value = clifford_l_eigenvalue(k, &Rat::zero());
    let computed = if value.is_zero() {
        Sign::Zero
    } else if value.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    };
    let rule = match k {
        1 => Sign::Positive,
        3 => Sign::Zero,
        _ => Sign::Negative,
    };
    assert_eq!(
        computed, rule,
        "mu-direction sign {computed} contradicts the k-rule {rule} at k = {k}"
    );
    computed
}

/// Dimension `(d1+d2+2) + (d1+1)(d2+1)` of the conformal-field image,
/// checked against the enumerated multiplicities at Laplacian eigenvalues
/// `2k` and `4k`. A mismatch panics.
pub fn clifford_moduli_dim(case: &CliffordCase) -> u64 {
    let formula =
        (case.d1 as u64 + case.d2 as u64 + 2) + (case.d1 as u64 + 1) * (case.d2 as u64 + 1);
    let four_k = rat_int(4 * case.k as i64);
    let two_k = rat_int(2 * case.k as i64);
    let enumerated: u64 = clifford_laplacian_spectrum(case, &four_k)
        .iter()
        .filter(|line| line.eigenvalue == two_k || line.eigenvalue == four_k)
        .map(|line| line.multiplicity)
        .sum();
    assert_eq!(
        enumerated, formula,
        "conformal-field dimension mismatch for (d1, d2) = ({}, {})",
        case.d1, case.d2
    );
    formula
}

/// Second variation per unit squared L2 norm of an eigenmode with
/// second-variation-operator eigenvalue `hessian_eig`: the `1/(2k)` prefactor
/// of the quadratic form.
pub fn second_variation_value(k: u32, hessian_eig: &Rat) -> Rat {
    assert!(k >= 1, "second_variation_value requires k >= 1");
    hessian_eig / rat_int(2 * k as i64)
}
