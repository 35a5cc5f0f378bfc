//! `unihyp`: scripted verification runs over the universal hypersurface
//! toolkit, one subcommand per construction, JSON reports on stdout.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails or
//! the inputs are semantically invalid (with a machine-readable error
//! object), 2 when the command line itself is malformed (argument parsing).
//! Identical (command, seed) pairs produce byte-identical reports.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use unihyp_core::curvature::{
    ahlfors_schwarz_compare, poincare_samples, poincare_volume, section_norm_f, twist_degree,
    witness_map_d1,
};
use unihyp_core::fields::{
    build_basic_field, lift_field, tangency_check, LinearFieldSpec, VectorField,
};
use unihyp_core::generation::{select_wedge_fields, span_check, WedgeSelection};
use unihyp_core::multiindex::dimension_count;
use unihyp_core::parse::parse_poly;
use unihyp_core::sampling::{random_point_nonzero_params, random_tangent_frame, rng_from_seed};
use unihyp_core::universal::{build_universal_equation, ChartPoint};
use unihyp_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "unihyp",
    about = "Verification runs for the universal hypersurface family: tangent fields, generation certificates, and curvature comparisons",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Dims {
    /// Projective dimension of the ambient space (>= 1).
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Degree of the hypersurfaces (>= 1).
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    d: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the parameter space of degree-d hypersurfaces.
    Nd {
        #[command(flatten)]
        dims: Dims,
        /// Fail (exit 1) unless N_d renders to this value.
        #[arg(long)]
        expect: Option<String>,
    },
    /// The chart equation of the family, in the literal grammar.
    Equation {
        #[command(flatten)]
        dims: Dims,
        /// Fail (exit 1) unless the term count equals this value.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Exact tangency of constructed fields, or of a field from a file.
    Tangency {
        #[command(flatten)]
        dims: Dims,
        /// Check every basic field and basis lift (the default).
        #[arg(long)]
        all: bool,
        /// Check a single field from a JSON file instead.
        #[arg(long, conflicts_with = "all")]
        field: Option<PathBuf>,
    },
    /// Lift a degree-one field on the geometric variables to the family.
    Lift {
        #[command(flatten)]
        dims: Dims,
        /// Coefficient literal of d/dz_j, repeated for j = 1..n.
        #[arg(long, required = true)]
        v0: Vec<String>,
    },
    /// Generation certificate: do the fields span the tangent space?
    Span {
        #[command(flatten)]
        dims: Dims,
        /// Certify the point in this JSON file.
        #[arg(long)]
        point: Option<PathBuf>,
        /// Number of random points to certify (batch mode).
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Choose n-2 fields extending a random tangent frame to a nonzero wedge.
    WedgeSelect {
        #[command(flatten)]
        dims: Dims,
        /// Use the point in this JSON file instead of a random one.
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Audit the Poincare volume form on the polydisc of the (n, d) family.
    Poincare {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        delta0: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance for the finite-difference cross-check.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Ahlfors-Schwarz comparison for the extremal Poincare density (m = 1).
    Ahlfors {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        delta0: f64,
        /// Grid resolution per real axis.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Allowed deviation of the sup ratio from the analytic value.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Also write radial plot data (|w|, f, psi_k, ratio) to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Checks on the explicit d = 1 witness map: membership residuals,
    /// Jacobian rank, and reparametrization invariance.
    Witness {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual threshold on the polydisc.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Fiberwise degree of the canonical twist; positive iff d >= 2n.
    Twist {
        /// Projective dimension (>= 2 for the degree arithmetic).
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Fail (exit 1) unless the twist degree equals this value.
        #[arg(long)]
        expect: Option<i64>,
    },
}

/// A completed run: the report plus whether its checks passed.
struct Outcome {
    report: Value,
    pass: bool,
}

/// A run that could not complete; rendered as a structured error, exit 1.
struct Failure {
    kind: &'static str,
    detail: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let kind = match &e {
            CoreError::InvalidDimension(_) => "invalid_dimension",
            CoreError::VariableOutOfRange { .. } => "variable_out_of_range",
            CoreError::DecrementZero { .. } => "decrement_zero",
            CoreError::ContextMismatch => "context_mismatch",
            CoreError::ModeMismatch => "mode_mismatch",
            CoreError::UnknownVariable(_) => "unknown_variable",
            CoreError::MissingAssignment(_) => "missing_assignment",
            CoreError::Parse { .. } => "parse_error",
            CoreError::NotOnHypersurface { .. } => "not_on_hypersurface",
            CoreError::DegreeTooHigh { .. } => "degree_too_high",
            CoreError::DependentFrame { .. } => "dependent_frame",
            CoreError::NotTangent { .. } => "not_tangent",
            CoreError::OutsideDomain => "outside_domain",
            CoreError::HypothesisFailed { .. } => "hypothesis_failed",
            CoreError::DegenerateSelection => "degenerate_selection",
            CoreError::Json(_) => "bad_json",
        };
        Failure {
            kind,
            detail: e.to_string(),
        }
    }
}

fn io_failure(e: std::io::Error, path: &Path) -> Failure {
    Failure {
        kind: "io_error",
        detail: format!("{}: {e}", path.display()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli.command) {
        Ok(outcome) => {
            if !emit(&outcome.report, out.as_deref()) {
                return ExitCode::from(1);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            let report = json!({
                "error": { "kind": failure.kind, "detail": failure.detail }
            });
            emit(&report, out.as_deref());
            ExitCode::from(1)
        }
    }
}

fn emit(report: &Value, out: Option<&Path>) -> bool {
    let text = format!("{:#}\n", report);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return false;
            }
            true
        }
        None => {
            print!("{text}");
            true
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Nd { dims, expect } => cmd_nd(dims, expect),
        Command::Equation { dims, expect } => cmd_equation(dims, expect),
        Command::Tangency { dims, all: _, field } => cmd_tangency(dims, field),
        Command::Lift { dims, v0 } => cmd_lift(dims, v0),
        Command::Span {
            dims,
            point,
            samples,
            seed,
        } => cmd_span(dims, point, samples, seed),
        Command::WedgeSelect { dims, point, seed } => cmd_wedge_select(dims, point, seed),
        Command::Poincare {
            dims,
            k,
            delta0,
            samples,
            seed,
            tol,
        } => cmd_poincare(dims, k, delta0, samples, seed, tol),
        Command::Ahlfors {
            k,
            delta0,
            grid,
            tol,
            csv,
        } => cmd_ahlfors(k, delta0, grid, tol, csv),
        Command::Witness { samples, seed, tol } => cmd_witness(samples, seed, tol),
        Command::Twist { n, d, expect } => cmd_twist(n, d, expect),
    }
}

fn cmd_nd(dims: Dims, expect: Option<String>) -> Result<Outcome, Failure> {
    let nd = dimension_count(dims.n as usize, dims.d as usize)?;
    let rendered = nd.to_string();
    let value = match nd.to_u64() {
        Some(v) => json!(v),
        None => json!(rendered),
    };
    let pass = expect.as_deref().is_none_or(|e| e == rendered);
    let mut report = json!({ "n": dims.n, "d": dims.d, "N_d": value });
    if let Some(e) = expect {
        report["expected"] = json!(e);
        report["match"] = json!(pass);
    }
    Ok(Outcome { report, pass })
}

fn cmd_equation(dims: Dims, expect: Option<usize>) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    let terms = eq.polynomial().num_terms();
    let pass = expect.is_none_or(|e| e == terms);
    let mut report = json!({
        "n": dims.n,
        "d": dims.d,
        "N_d": eq.nd(),
        "terms": terms,
        "equation": eq.polynomial().render(),
    });
    if let Some(e) = expect {
        report["expected"] = json!(e);
        report["match"] = json!(pass);
    }
    Ok(Outcome { report, pass })
}

fn cmd_tangency(dims: Dims, field: Option<PathBuf>) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    if let Some(path) = field {
        let text = std::fs::read_to_string(&path).map_err(|e| io_failure(e, &path))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CoreError::Json(e.to_string()))?;
        let field = VectorField::from_json(&value, eq.context())?;
        let tangent = tangency_check(&field, &eq)?;
        let report = json!({
            "n": dims.n,
            "d": dims.d,
            "tangent": tangent,
            "chart_degree": field.chart_degree(),
        });
        return Ok(Outcome {
            report,
            pass: tangent,
        });
    }

    let mut checked = 0usize;
    let mut failures = 0usize;
    for alpha in eq.context().params() {
        for j in 1..=eq.n() {
            if alpha.entry(j) >= 1 {
                let v = build_basic_field(&eq, alpha, j)?;
                checked += 1;
                if !tangency_check(&v, &eq)? {
                    failures += 1;
                }
            }
        }
    }
    for spec in LinearFieldSpec::basis(eq.n()) {
        let v = lift_field(&spec, &eq)?;
        checked += 1;
        if !tangency_check(&v, &eq)? {
            failures += 1;
        }
    }
    let report = json!({
        "n": dims.n,
        "d": dims.d,
        "fields_checked": checked,
        "failures": failures,
    });
    Ok(Outcome {
        report,
        pass: failures == 0,
    })
}

fn cmd_lift(dims: Dims, v0: Vec<String>) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    if v0.len() != eq.n() {
        return Err(Failure {
            kind: "invalid_dimension",
            detail: format!("need exactly {} --v0 literals, got {}", eq.n(), v0.len()),
        });
    }
    let polys = v0
        .iter()
        .map(|text| parse_poly(text, eq.context()))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = LinearFieldSpec::from_polys(&polys)?;
    let field = lift_field(&spec, &eq)?;
    let tangent = tangency_check(&field, &eq)?;
    let report = json!({
        "n": dims.n,
        "d": dims.d,
        "field": field.to_json(),
        "tangent": tangent,
        "chart_degree": field.chart_degree(),
    });
    Ok(Outcome {
        report,
        pass: tangent,
    })
}

fn load_point(path: &Path, eq: &unihyp_core::universal::UniversalEquation) -> Result<ChartPoint, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(e, path))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CoreError::Json(e.to_string()))?;
    Ok(ChartPoint::from_json(&value, eq)?)
}

fn cmd_span(
    dims: Dims,
    point: Option<PathBuf>,
    samples: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    if let Some(path) = point {
        let p = load_point(&path, &eq)?;
        let cert = span_check(&eq, &p)?;
        let pass = cert.verdict;
        return Ok(Outcome {
            report: cert.to_json(),
            pass,
        });
    }
    let mut rng = rng_from_seed(seed);
    let mut results = Vec::with_capacity(samples);
    let mut failures = 0usize;
    for index in 0..samples {
        let p = random_point_nonzero_params(&eq, &mut rng);
        let cert = span_check(&eq, &p)?;
        if !cert.verdict {
            failures += 1;
        }
        results.push(json!({
            "index": index,
            "rank": cert.rank,
            "verdict": cert.verdict,
        }));
    }
    let report = json!({
        "n": dims.n,
        "d": dims.d,
        "seed": seed,
        "samples": samples,
        "target": eq.n() + eq.nd(),
        "failures": failures,
        "results": results,
    });
    Ok(Outcome {
        report,
        pass: failures == 0,
    })
}

fn cmd_wedge_select(dims: Dims, point: Option<PathBuf>, seed: u64) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    let mut rng = rng_from_seed(seed);
    let p = match point {
        Some(path) => load_point(&path, &eq)?,
        None => random_point_nonzero_params(&eq, &mut rng),
    };
    let jac = random_tangent_frame(&eq, &p, 1 + eq.nd(), &mut rng)?;
    let selection = select_wedge_fields(&eq, &p, jac)?;
    let pass = selection.wedge_nonzero;
    let mut report = selection.to_json();
    report["n"] = json!(dims.n);
    report["d"] = json!(dims.d);
    report["seed"] = json!(seed);
    Ok(Outcome { report, pass })
}

fn cmd_poincare(
    dims: Dims,
    k: u32,
    delta0: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Outcome, Failure> {
    let eq = build_universal_equation(dims.n as usize, dims.d as usize)?;
    let m = 1 + eq.nd();
    let mut rng = rng_from_seed(seed);
    // 0.7 of the radius keeps the finite-difference stencil both inside the
    // polydisc and within its accuracy budget
    let audited = poincare_samples(m, k, delta0, 0.7, samples, &mut rng)?;
    let bound_factor = 8.0 * m as f64 / (delta0 * delta0) / (k as f64 * k as f64);
    let mut trace_bound_failures = 0usize;
    let mut fd_failures = 0usize;
    let mut fd_worst = 0.0f64;
    let mut worst: Option<&unihyp_core::curvature::PoincareSample> = None;
    for sample in &audited {
        if sample.trace_closed > bound_factor * sample.psi * (1.0 + 1e-12) {
            trace_bound_failures += 1;
        }
        let rel = (sample.trace_fd - sample.trace_closed).abs() / sample.trace_closed;
        if rel > tol {
            fd_failures += 1;
        }
        if rel > fd_worst {
            fd_worst = rel;
            worst = Some(sample);
        }
    }
    let report = json!({
        "m": m,
        "k": k,
        "delta0": delta0,
        "seed": seed,
        "samples": samples,
        "trace_bound_failures": trace_bound_failures,
        "fd_tolerance": tol,
        "fd_failures": fd_failures,
        "fd_max_rel_err": fd_worst,
        "worst_sample": worst.map(|s| s.to_json()).unwrap_or(Value::Null),
    });
    Ok(Outcome {
        report,
        pass: trace_bound_failures == 0 && fd_failures == 0,
    })
}

fn cmd_ahlfors(
    k: u32,
    delta0: f64,
    grid: usize,
    tol: f64,
    csv: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    // the extremal density with its exact constant: the equality case
    let r = delta0 * k as f64;
    let f = move |p: &[Complex64]| {
        let u = 1.0 - p[0].norm_sqr() / (r * r);
        1.0 / (u * u)
    };
    let c_exact = 8.0 / (r * r);
    let comparison = ahlfors_schwarz_compare(&f, c_exact, k, delta0, 1, grid)?;

    if let Some(path) = &csv {
        // radial plot data: the density is rotation invariant in each factor
        let mut rows = String::from("abs_w,f,psi,ratio\n");
        for i in 0..grid {
            let abs_w = 0.99 * r * i as f64 / (grid.max(2) - 1) as f64;
            let w = [Complex64::new(abs_w, 0.0)];
            let fx = f(&w);
            let psi = poincare_volume(&w, k, delta0)?;
            rows.push_str(&format!("{abs_w},{fx},{psi},{}\n", fx / psi));
        }
        std::fs::write(path, rows).map_err(|e| io_failure(e, path))?;
    }

    let analytic = 1.0;
    let within = (comparison.sup_ratio - analytic).abs() <= tol * analytic;
    let mut report = comparison.to_json();
    report["k"] = json!(k);
    report["delta0"] = json!(delta0);
    report["analytic_extremal"] = json!(analytic);
    report["within_tol"] = json!(within);
    if let Some(path) = csv {
        report["csv"] = json!(path.to_string_lossy());
    }
    Ok(Outcome {
        report,
        pass: comparison.bound_ok && within,
    })
}

fn cmd_witness(samples: usize, seed: u64, tol: f64) -> Result<Outcome, Failure> {
    let map = witness_map_d1();
    let eq = build_universal_equation(2, 1)?;
    let mut rng = rng_from_seed(seed);

    let mut max_residual = 0.0f64;
    for _ in 0..samples {
        let w = unihyp_core::sampling::random_interior(3, map.delta0(), 1.0, &mut rng);
        max_residual = max_residual.max(map.membership_residual(&eq, &w)?);
    }

    let origin = [Complex64::new(0.0, 0.0); 3];
    let jac_norm = map.jacobian(&origin)?.norm;

    let mut jac_drift = 0.0f64;
    for k in 1..=10 {
        let norm_k = map.reparametrize(k)?.jacobian(&origin)?.norm;
        jac_drift = jac_drift.max((norm_k - jac_norm).abs() / jac_norm);
    }

    let zero = num_rational::BigRational::from_integer(0.into());
    let point = eq.sample_point(&[zero.clone(), zero.clone()], &[zero.clone(), zero])?;
    let selection = WedgeSelection {
        point,
        jac: Vec::new(),
        chosen: Vec::new(),
        wedge_nonzero: true,
    };
    let weight =
        |values: &[Complex64]| (-values.iter().map(|v| v.norm_sqr()).sum::<f64>()).exp();
    let f1 = section_norm_f(&map, &weight, &selection, &origin)?;
    let mut f_drift = 0.0f64;
    for k in [2u32, 3] {
        let fk = section_norm_f(&map.reparametrize(k)?, &weight, &selection, &origin)?;
        f_drift = f_drift.max((fk - f1).abs() / f1);
    }

    let residual_ok = max_residual < tol;
    let jac_ok = jac_norm > 0.0 && jac_drift <= 1e-9;
    let f_ok = f_drift <= 1e-9;
    let report = json!({
        "seed": seed,
        "samples": samples,
        "delta0": map.delta0(),
        "max_residual": max_residual,
        "residual_tolerance": tol,
        "residual_ok": residual_ok,
        "jacobian_norm_at_origin": jac_norm,
        "jacobian_rel_drift": jac_drift,
        "jacobian_ok": jac_ok,
        "f_k_origin": f1,
        "f_k_rel_drift": f_drift,
        "f_k_ok": f_ok,
    });
    Ok(Outcome {
        report,
        pass: residual_ok && jac_ok && f_ok,
    })
}

fn cmd_twist(n: u32, d: u32, expect: Option<i64>) -> Result<Outcome, Failure> {
    let degree = twist_degree(n, d)?;
    let pass = expect.is_none_or(|e| e == degree);
    let mut report = json!({
        "n": n,
        "d": d,
        "twist_degree": degree,
        "positive": degree > 0,
    });
    if let Some(e) = expect {
        report["expected"] = json!(e);
        report["match"] = json!(pass);
    }
    Ok(Outcome { report, pass })
}
