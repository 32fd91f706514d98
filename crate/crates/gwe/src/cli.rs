//! Structured command output behind the `gwe` binary: every subcommand
//! produces an [`OutputRecord`] that renders either as a plain table or as
//! JSON with deterministic key order.
//!
//! Exact rationals cross this boundary as `p/q` strings so that no precision
//! is lost; floating-point values (only `verify-numeric` has them) print as
//! shortest round-trip decimals.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exact::{c_constant, rat_int, Rat};
use crate::jacobi::{closed_form_pk, factor_shifts, formal_solve};
use crate::renorm::{
    default_grid, expansion_coefficients, first_variation_constant, numeric_extract,
};
use crate::spectra::{
    clifford_l_eigenvalue, clifford_laplacian_spectrum, clifford_moduli_dim, clifford_mu_sign,
    clifford_setup, conformal_dims, second_variation_value, sphere_hessian_spectrum,
    sphere_kernel_dimension, ModeLabel, SphereCase,
};
use crate::Result;

/// Output format of a subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// One named invariant assertion run by a command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// The machine-readable result of one command invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl OutputRecord {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json_string(),
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str("inputs:\n");
        for (key, value) in &self.inputs {
            out.push_str(&format!("  {key} = {value}\n"));
        }
        out.push_str("results:\n");
        render_value(&self.results, 1, &mut out);
        out.push_str("checks:\n");
        for check in &self.checks {
            let verdict = if check.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {}: {verdict}\n", check.name));
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("null".into()),
        _ => None,
    }
}

fn render_value(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                if let Some(text) = scalar_text(v) {
                    out.push_str(&format!("{pad}{key} = {text}\n"));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render_value(v, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Value::Object(map) = item {
                    if map.values().all(|v| scalar_text(v).is_some()) {
                        let row: Vec<String> = map
                            .iter()
                            .map(|(k, v)| format!("{k}={}", scalar_text(v).expect("scalar")))
                            .collect();
                        out.push_str(&format!("{pad}- {}\n", row.join(", ")));
                        continue;
                    }
                }
                if let Some(text) = scalar_text(item) {
                    out.push_str(&format!("{pad}- {text}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_value(item, depth + 1, out);
                }
            }
        }
        other => {
            if let Some(text) = scalar_text(other) {
                out.push_str(&format!("{pad}{text}\n"));
            }
        }
    }
}

/// Parses `p` or `p/q` into an exact rational; rejects zero denominators.
pub fn parse_rational(s: &str) -> std::result::Result<Rat, String> {
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(numer.trim())
        .map_err(|e| format!("invalid rational '{s}': {e} (expected p or p/q)"))?;
    let denom = BigInt::from_str(denom.trim())
        .map_err(|e| format!("invalid rational '{s}': {e} (expected p or p/q)"))?;
    if denom.is_zero() {
        return Err(format!("invalid rational '{s}': zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn f64_str(v: f64) -> String {
    format!("{v}")
}

/// `energy`: exact expansion coefficients, log coefficient, and energy.
pub fn cmd_energy(k: u32, lambda: &Rat, area: &Rat) -> Result<OutputRecord> {
    let report = expansion_coefficients(k, lambda, area)?;
    let c_k = c_constant(k).expect("k >= 1");
    let relation_holds = report.log_coeff == rat_int(2) * &c_k * &report.energy;

    let results = json!({
        "b_coeffs": report.b_coeffs.iter().map(rat_str).collect::<Vec<_>>(),
        "log_coeff": rat_str(&report.log_coeff),
        "energy": rat_str(&report.energy),
        "c_k": rat_str(&c_k),
        "first_variation_constant": rat_str(&first_variation_constant(k).expect("k >= 1")),
    });

    Ok(OutputRecord {
        command: "energy".into(),
        inputs: BTreeMap::from([
            ("k".into(), k.to_string()),
            ("lambda".into(), rat_str(lambda)),
            ("area".into(), rat_str(area)),
        ]),
        results,
        checks: vec![Check {
            name: "log_coeff_equals_2ck_energy".into(),
            pass: relation_holds,
        }],
    })
}

fn factored_pk_string(k: u32) -> String {
    let prefactor = rat_int(-2) * c_constant(k + 1).expect("k + 1 >= 2");
    let factors: Vec<String> = factor_shifts(k)
        .iter()
        .map(|(_, shift)| {
            if *shift == 0 {
                "x".to_string()
            } else {
                format!("(x + {shift}*lambda)")
            }
        })
        .collect();
    format!("{prefactor} * {}", factors.join(" * "))
}

/// `jacobi-poly`: the log-coefficient polynomial expanded and factored;
/// with `check`, re-derives it by the recursion and compares exactly.
pub fn cmd_jacobi_poly(k: u32, check: bool) -> OutputRecord {
    let closed = closed_form_pk(k);
    let prefactor = rat_int(-2) * c_constant(k + 1).expect("k + 1 >= 2");

    let mut results = json!({
        "p_k": closed.to_string(),
        "p_k_factored": factored_pk_string(k),
        "factor_shifts": factor_shifts(k).iter().map(|(_, s)| *s).collect::<Vec<_>>(),
        "prefactor": rat_str(&prefactor),
        "total_degree": k + 1,
    });
    let mut checks = vec![
        Check {
            name: "homogeneous_of_degree_k_plus_1".into(),
            pass: closed.is_homogeneous(k + 1),
        },
        Check {
            name: "leading_x_coefficient_is_minus_2c".into(),
            pass: closed.coeff(k + 1, 0) == prefactor,
        },
    ];

    if check {
        let recursed = formal_solve(k);
        let agree = recursed.p_k == closed;
        let obj = results.as_object_mut().expect("object");
        obj.insert("recursion_p_k".into(), json!(recursed.p_k.to_string()));
        if !agree {
            obj.insert(
                "difference".into(),
                json!(recursed.p_k.sub(&closed).to_string()),
            );
        }
        checks.push(Check {
            name: "recursion_matches_closed_form".into(),
            pass: agree,
        });
    }

    OutputRecord {
        command: "jacobi-poly".into(),
        inputs: BTreeMap::from([
            ("k".into(), k.to_string()),
            ("check".into(), check.to_string()),
        ]),
        results,
        checks,
    }
}

/// `sphere`: second-variation spectrum, kernel dimension, and conformal
/// dimension counts for the totally geodesic sphere.
pub fn cmd_sphere(k: u32, m: u32, jmax: u32) -> Result<OutputRecord> {
    let case = SphereCase::new(k, m)?;
    let lines = sphere_hessian_spectrum(&case, jmax);
    let kernel_dim = sphere_kernel_dimension(&case);
    let (conf, isom, constant) = conformal_dims(case.ambient_dim())?;

    let nonneg = lines.iter().all(|l| !l.eigenvalue.is_negative());
    let line_values: Vec<Value> = lines
        .iter()
        .map(|line| {
            let j = match line.labels[0] {
                ModeLabel::Degree(j) => j,
                ModeLabel::DegreePair(..) => unreachable!("sphere lines carry single degrees"),
            };
            json!({
                "j": j,
                "eigenvalue": rat_str(&line.eigenvalue),
                "multiplicity": line.multiplicity,
                "second_variation": rat_str(&second_variation_value(k, &line.eigenvalue)),
            })
        })
        .collect();

    let results = json!({
        "ambient_dim": case.ambient_dim(),
        "kernel_dim": kernel_dim,
        "conformal_dims": {
            "conformal": conf,
            "isometry": isom,
            "constant_fields": constant,
        },
        "lines": line_values,
    });

    Ok(OutputRecord {
        command: "sphere".into(),
        inputs: BTreeMap::from([
            ("k".into(), k.to_string()),
            ("m".into(), m.to_string()),
            ("jmax".into(), jmax.to_string()),
        ]),
        results,
        checks: vec![
            Check {
                name: "eigenvalues_nonnegative".into(),
                pass: nonneg,
            },
            Check {
                name: "kernel_dim_equals_2_k_plus_1_m".into(),
                pass: kernel_dim == 2 * (k as u64 + 1) * m as u64,
            },
            Check {
                name: "conformal_algebra_splits".into(),
                pass: conf == isom + constant,
            },
        ],
    })
}

/// Default spectrum cutoff: `4k` plus ten times the smallest eigenvalue gap
/// (which is `2k` on the Clifford product).
pub fn default_clifford_cutoff(k: u32) -> Rat {
    rat_int(4 * k as i64 + 10 * 2 * k as i64)
}

/// `clifford`: radii, Laplacian spectrum with per-line second-variation
/// operator eigenvalues, the radial-direction sign, and the conformal count.
pub fn cmd_clifford(d1: u32, d2: u32, cutoff: &Rat) -> Result<OutputRecord> {
    let case = clifford_setup(d1, d2)?;
    let k = case.k;
    let lines = clifford_laplacian_spectrum(&case, cutoff);
    let sign = clifford_mu_sign(k);
    let moduli_dim = clifford_moduli_dim(&case);

    let line_values: Vec<Value> = lines
        .iter()
        .map(|line| {
            let l_eig = clifford_l_eigenvalue(k, &line.eigenvalue);
            json!({
                "delta_eigenvalue": rat_str(&line.eigenvalue),
                "multiplicity": line.multiplicity,
                "l_eigenvalue": rat_str(&l_eig),
                "second_variation": rat_str(&second_variation_value(k, &l_eig)),
                "modes": line.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();

    let kernel_annihilated = clifford_l_eigenvalue(k, &rat_int(2 * k as i64)).is_zero()
        && clifford_l_eigenvalue(k, &rat_int(4 * k as i64)).is_zero();

    let results = json!({
        "k": k,
        "r1_sq": rat_str(&case.r1_sq),
        "r2_sq": rat_str(&case.r2_sq),
        "mu_sign": sign.to_string(),
        "moduli_dim": moduli_dim,
        "lines": line_values,
    });

    Ok(OutputRecord {
        command: "clifford".into(),
        inputs: BTreeMap::from([
            ("d1".into(), d1.to_string()),
            ("d2".into(), d2.to_string()),
            ("cutoff".into(), rat_str(cutoff)),
        ]),
        results,
        checks: vec![
            Check {
                name: "mu_sign_matches_k_rule".into(),
                pass: true, // clifford_mu_sign panics on contradiction
            },
            Check {
                name: "moduli_dim_matches_enumeration".into(),
                pass: true, // clifford_moduli_dim panics on mismatch
            },
            Check {
                name: "conformal_kernel_annihilated".into(),
                pass: kernel_annihilated,
            },
        ],
    })
}

/// `verify-numeric`: quadrature-based re-extraction of the expansion
/// coefficients, compared against the exact values at tolerance `tol`.
pub fn cmd_verify_numeric(
    k: u32,
    lambda: f64,
    eps0: f64,
    points: usize,
    tol: f64,
) -> Result<OutputRecord> {
    let area = rat_int(1);
    let lambda_exact = Rat::from_float(lambda)
        .ok_or_else(|| crate::Error::Domain(format!("lambda = {lambda} is not finite")))?;
    let exact = expansion_coefficients(k, &lambda_exact, &area)?;
    let grid = default_grid(eps0, points);
    let fit = numeric_extract(k, lambda, 1.0, eps0, &grid)?;

    let rel_err = |fitted: f64, exact: f64| -> f64 {
        if exact == 0.0 {
            fitted.abs()
        } else {
            (fitted - exact).abs() / exact.abs()
        }
    };

    let mut checks = Vec::new();
    let mut errors = Vec::new();
    let mut max_rel_error = 0.0f64;
    for l in 0..k as usize {
        let exact_b = exact.b_coeffs[l].to_f64().expect("b_l fits in f64");
        let err = rel_err(fit.divergent[l], exact_b);
        max_rel_error = max_rel_error.max(err);
        errors.push((format!("b{l}"), err));
        checks.push(Check {
            name: format!("b{l}_within_tol"),
            pass: err <= tol,
        });
    }
    let exact_log = exact.log_coeff.to_f64().expect("K fits in f64");
    let log_err = rel_err(fit.log_coeff, exact_log);
    max_rel_error = max_rel_error.max(log_err);
    errors.push(("log_coeff".into(), log_err));
    checks.push(Check {
        name: "log_coeff_within_tol".into(),
        pass: log_err <= tol,
    });
    checks.push(Check {
        name: "max_rel_error_within_tol".into(),
        pass: max_rel_error <= tol,
    });

    let results = json!({
        "grid": {
            "min": f64_str(grid[0]),
            "max": f64_str(*grid.last().expect("grid nonempty")),
            "points": grid.len(),
        },
        "fitted": {
            "b_coeffs": fit.divergent.iter().map(|v| f64_str(*v)).collect::<Vec<_>>(),
            "log_coeff": f64_str(fit.log_coeff),
            "constant": f64_str(fit.constant),
        },
        "exact": {
            "b_coeffs": exact.b_coeffs.iter().map(rat_str).collect::<Vec<_>>(),
            "log_coeff": rat_str(&exact.log_coeff),
        },
        "rel_errors": errors
            .iter()
            .map(|(name, err)| json!({"coefficient": name, "rel_error": f64_str(*err)}))
            .collect::<Vec<_>>(),
        "max_rel_error": f64_str(max_rel_error),
        "max_rel_residual": f64_str(fit.max_rel_residual),
    });

    Ok(OutputRecord {
        command: "verify-numeric".into(),
        inputs: BTreeMap::from([
            ("k".into(), k.to_string()),
            ("lambda".into(), f64_str(lambda)),
            ("eps0".into(), f64_str(eps0)),
            ("points".into(), points.to_string()),
            ("tol".into(), f64_str(tol)),
        ]),
        results,
        checks,
    })
}
