//! `gwe`: renormalized-area expansions, Graham-Witten energies, and
//! second-variation spectra from the command line.
//!
//! Exit codes: 0 on success with all checks passing, 1 when a mathematical
//! check fails (or a fit cannot be carried out), 2 on usage errors.

use clap::{Parser, Subcommand};

use gwe::cli::{
    cmd_clifford, cmd_energy, cmd_jacobi_poly, cmd_sphere, cmd_verify_numeric,
    default_clifford_cutoff, parse_rational, Format, OutputRecord,
};
use gwe::{Error, Rat};

#[derive(Parser)]
#[command(
    name = "gwe",
    version,
    about = "Exact renormalized-area expansions and second-variation spectra \
             of minimal submanifolds in Einstein manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact energy and area-expansion coefficients of a minimal submanifold
    Energy {
        /// Half the submanifold dimension (the submanifold has dimension 2k)
        #[arg(long)]
        k: u32,
        /// Einstein parameter as p or p/q (ambient Einstein constant 2*lambda*(n-1))
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Rat,
        /// Submanifold area as a positive rational p or p/q
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        area: Rat,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Log-coefficient polynomial p_k of the Jacobi boundary value problem
    /// (practical ceiling around k = 12)
    JacobiPoly {
        #[arg(long)]
        k: u32,
        /// Re-derive p_k by the order-by-order recursion and compare exactly
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Second-variation spectrum on a totally geodesic S^{2k} in S^{2k+m}(1)
    Sphere {
        #[arg(long)]
        k: u32,
        /// Codimension of the sphere
        #[arg(long)]
        m: u32,
        /// Largest spherical-harmonic degree to list
        #[arg(long, default_value_t = 20)]
        jmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Spectrum and stability data of the Clifford hypersurface
    /// S^{d1}(r1) x S^{d2}(r2) in S^{d1+d2+1}(1)
    Clifford {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        /// Laplacian eigenvalue cutoff as p or p/q (default 24k)
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        cutoff: Option<Rat>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Re-extract the expansion coefficients from quadrature and compare
    /// against the exact values
    VerifyNumeric {
        #[arg(long)]
        k: u32,
        /// Einstein parameter (decimal; the only floating-point input)
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Upper integration endpoint
        #[arg(long, default_value_t = 0.5)]
        eps0: f64,
        /// Number of log-spaced grid points (12 per decade over two decades)
        #[arg(long, default_value_t = 24)]
        points: usize,
        /// Largest allowed relative error of any fitted coefficient
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn usage_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(EXIT_USAGE);
}

fn emit(record: OutputRecord, format: Format) -> ! {
    println!("{}", record.render(format));
    let code = if record.all_passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    };
    std::process::exit(code);
}

fn unwrap_or_exit(result: gwe::Result<OutputRecord>) -> OutputRecord {
    match result {
        Ok(record) => record,
        Err(Error::Domain(message)) => usage_error(&message),
        Err(err @ Error::Fit(_)) => {
            eprintln!("error: {err}");
            std::process::exit(EXIT_CHECK_FAILED);
        }
    }
}

fn main() {
    match Cli::parse().command {
        Command::Energy {
            k,
            lambda,
            area,
            format,
        } => {
            if k == 0 {
                usage_error("--k must be at least 1");
            }
            emit(unwrap_or_exit(cmd_energy(k, &lambda, &area)), format);
        }
        Command::JacobiPoly { k, check, format } => {
            if k == 0 {
                usage_error("--k must be at least 1");
            }
            emit(cmd_jacobi_poly(k, check), format);
        }
        Command::Sphere { k, m, jmax, format } => {
            if k == 0 || m == 0 {
                usage_error("--k and --m must be at least 1");
            }
            emit(unwrap_or_exit(cmd_sphere(k, m, jmax)), format);
        }
        Command::Clifford {
            d1,
            d2,
            cutoff,
            format,
        } => {
            if d1 == 0 || d2 == 0 {
                usage_error("--d1 and --d2 must be at least 1");
            }
            if (d1 + d2) % 2 != 0 {
                usage_error("--d1 + --d2 must be even (the hypersurface dimension is 2k)");
            }
            let cutoff = cutoff.unwrap_or_else(|| default_clifford_cutoff((d1 + d2) / 2));
            emit(unwrap_or_exit(cmd_clifford(d1, d2, &cutoff)), format);
        }
        Command::VerifyNumeric {
            k,
            lambda,
            eps0,
            points,
            tol,
            format,
        } => {
            if k == 0 {
                usage_error("--k must be at least 1");
            }
            if tol.is_nan() || tol <= 0.0 {
                usage_error("--tol must be positive");
            }
            emit(
                unwrap_or_exit(cmd_verify_numeric(k, lambda, eps0, points, tol)),
                format,
            );
        }
    }
}
