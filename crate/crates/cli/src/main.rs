//! Command-line front end: read coefficient files, run the factorization
//! pipelines, write JSON reports, print fixed-format summaries.
//!
//! Exit codes: 0 success, 2 invalid input or configuration, 3 tolerance
//! failure (wandering gap, residual above --tol, ill-conditioned solve),
//! 4 resource-cap rejection.

mod reports;

use clap::{Parser, Subcommand};
use pickfactor::beurling::{factor_sequence, FactorConfig};
use pickfactor::cnp::{
    factor_sequence_cnp, kernel_eig_range, kernel_matrix, CnpSpace, SampledFunction,
};
use pickfactor::mult::{column_row_ratio, MultTuple};
use pickfactor::symfock::{evaluate_fock, lift_min_norm, SymVector};
use pickfactor::weakprod::{factor_weak_product, verify_factorization, WeakProductRep};
use pickfactor::Error as CoreError;
use reports::*;

#[derive(Parser)]
#[command(
    name = "pickfactor",
    version,
    about = "factorization pipelines for Drury-Arveson and sampled CNP spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, clap::Args)]
struct CommonArgs {
    /// Input JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: std::path::PathBuf,
    /// Output JSON report file (summary always goes to stdout).
    #[arg(long = "out", value_name = "FILE")]
    output: Option<std::path::PathBuf>,
    /// Expected alphabet size; cross-checked against the input file.
    #[arg(long)]
    d: Option<u32>,
    /// Tolerance for pass/fail residual checks.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated word bases.
    #[arg(long, default_value_t = pickfactor::DEFAULT_BASIS_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a polynomial to Fock space and check the round trip.
    Lift {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Factor a sequence (f_n) as f_n = phi_n F.
    FactorSeq {
        #[command(flatten)]
        common: CommonArgs,
        /// Shift depth for the invariant subspace (default: input degree + 2).
        #[arg(long)]
        dm: Option<u32>,
        /// Depth for the cyclicity residual.
        #[arg(long, default_value_t = 6)]
        dc: u32,
    },
    /// Factor a weak-product representation as a single product h = f g.
    FactorWp {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        dm: Option<u32>,
        #[arg(long, default_value_t = 6)]
        dc: u32,
    },
    /// Column and row multiplier norms and their ratio.
    Colrow {
        #[command(flatten)]
        common: CommonArgs,
        /// Truncation degree for the operator norms.
        #[arg(long, default_value_t = 12)]
        degree: u32,
    },
    /// Kernel Gram matrix of a sampled CNP space.
    Kernel {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Factor a sequence of sampled functions over a CNP space.
    CnpFactor {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        dm: Option<u32>,
        /// Extension degree used before factoring.
        #[arg(long, default_value_t = 16)]
        degree: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(dispatch(cli));
}

fn dispatch(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Lift { common } => run_lift(&common),
        Command::FactorSeq { common, dm, dc } => run_factor_seq(&common, dm, dc),
        Command::FactorWp { common, dm, dc } => run_factor_wp(&common, dm, dc),
        Command::Colrow { common, degree } => run_colrow(&common, degree),
        Command::Kernel { common } => run_kernel(&common),
        Command::CnpFactor { common, dm, degree } => run_cnp_factor(&common, dm, degree),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("{}", failure.reason_json());
            failure.code
        }
    }
}

/// A failed run with the exit code its error class maps to.
struct Failure {
    kind: &'static str,
    message: String,
    code: i32,
}

impl Failure {
    fn reason_json(&self) -> String {
        serde_json::json!({ "error": self.message, "kind": self.kind }).to_string()
    }
}

fn classify(err: CoreError) -> Failure {
    let (kind, code) = match &err {
        CoreError::BasisCapExceeded { .. } | CoreError::Overflow(_) => ("resource-cap", 4),
        CoreError::GapBelowTolerance { .. } | CoreError::IllConditioned(_) => ("tolerance", 3),
        _ => ("invalid-input", 2),
    };
    Failure { kind, message: err.to_string(), code }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { kind: "invalid-input", message: message.into(), code: 2 }
}

fn tolerance(message: impl Into<String>) -> Failure {
    Failure { kind: "tolerance", message: message.into(), code: 3 }
}

fn validate_common(common: &CommonArgs) -> Result<(), Failure> {
    if common.tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    if common.cap == 0 {
        return Err(invalid("basis cap must be positive"));
    }
    if let Some(d) = common.d {
        if d < 1 {
            return Err(invalid("d must be at least 1"));
        }
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(common: &CommonArgs) -> Result<T, Failure> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| invalid(format!("cannot read {}: {e}", common.input.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed input: {e}")))
}

fn check_d(common: &CommonArgs, d: u32) -> Result<(), Failure> {
    if let Some(expected) = common.d {
        if expected != d {
            return Err(invalid(format!("--d {expected} does not match input d = {d}")));
        }
    }
    Ok(())
}

fn config_for(common: &CommonArgs, dc: u32) -> FactorConfig {
    FactorConfig { basis_cap: common.cap, cyclic_depth: dc, ..FactorConfig::default() }
}

fn emit(common: &CommonArgs, envelope: &Envelope) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(envelope)
        .map_err(|e| invalid(format!("report serialization failed: {e}")))?;
    if let Some(path) = &common.output {
        std::fs::write(path, &json)
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{}", render(envelope));
    Ok(())
}

fn run_lift(common: &CommonArgs) -> Result<i32, Failure> {
    validate_common(common)?;
    let input: SymVector = read_json(common)?;
    check_d(common, input.d())?;
    let lifted = lift_min_norm(&input, common.cap).map_err(classify)?;
    let back = evaluate_fock(&lifted);
    let roundtrip = back.sub(&input).map_err(classify)?.da_norm();
    let norm_rel = (lifted.norm() - input.da_norm()).abs() / input.da_norm().max(1e-300);
    let report = LiftReport {
        input_norm: input.da_norm(),
        fock_norm: lifted.norm(),
        roundtrip_error: roundtrip,
        norm_rel_error: norm_rel,
        lift: lifted,
    };
    let config = ConfigEcho { d: input.d(), degree: input.actual_degree(), tol: common.tol, ..ConfigEcho::default() };
    let envelope = Envelope::new("lift", config, Report::Lift(report));
    emit(common, &envelope)?;
    Ok(0)
}

fn run_factor_seq(common: &CommonArgs, dm: Option<u32>, dc: u32) -> Result<i32, Failure> {
    validate_common(common)?;
    let input: SequenceInput = read_json(common)?;
    if input.functions.is_empty() {
        return Err(invalid("input contains no functions"));
    }
    let d = input.functions[0].d();
    check_d(common, d)?;
    let degree = input.functions.iter().map(|f| f.actual_degree()).max().unwrap_or(0);
    let dm = dm.unwrap_or(degree + 2);
    if dm < 1 {
        return Err(invalid("Dm must be at least 1"));
    }
    let config = config_for(common, dc);
    let out = factor_sequence(&input.functions, dm, &config).map_err(classify)?;
    let max_residual = out.diagnostics.max_residual;
    let envelope = Envelope::new(
        "factor-seq",
        ConfigEcho { d, degree, dm: Some(dm), dc: Some(dc), tol: common.tol },
        Report::FactorSeq(out),
    );
    emit(common, &envelope)?;
    if max_residual > common.tol {
        return Err(tolerance(format!(
            "reconstruction residual {max_residual:e} above tolerance {:e}",
            common.tol
        )));
    }
    Ok(0)
}

fn run_factor_wp(common: &CommonArgs, dm: Option<u32>, dc: u32) -> Result<i32, Failure> {
    validate_common(common)?;
    let input: PairsInput = read_json(common)?;
    let pairs: Vec<(SymVector, SymVector)> = input.pairs.into_iter().map(|p| (p.f, p.g)).collect();
    let rep = WeakProductRep::new(pairs).map_err(classify)?;
    check_d(common, rep.d())?;
    let degree = rep.max_degree();
    let dm = dm.unwrap_or(degree + 2);
    if dm < 1 {
        return Err(invalid("Dm must be at least 1"));
    }
    let config = config_for(common, dc);
    let out = factor_weak_product(&rep, dm, &config).map_err(classify)?;
    let residual = out.certificates.residual;
    let spot = verify_factorization(&rep, &out.f, &out.g, common.seed, 10).map_err(classify)?;
    let mut envelope = Envelope::new(
        "factor-wp",
        ConfigEcho { d: rep.d(), degree, dm: Some(dm), dc: Some(dc), tol: common.tol },
        Report::FactorWp(out),
    );
    envelope.spot_check = Some(spot);
    emit(common, &envelope)?;
    if residual > common.tol {
        return Err(tolerance(format!(
            "factorization residual {residual:e} above tolerance {:e}",
            common.tol
        )));
    }
    Ok(0)
}

fn run_colrow(common: &CommonArgs, degree: u32) -> Result<i32, Failure> {
    validate_common(common)?;
    let input: SequenceInput = read_json(common)?;
    if input.functions.is_empty() {
        return Err(invalid("input contains no functions"));
    }
    let tuple = MultTuple::new(input.functions).map_err(classify)?;
    check_d(common, tuple.d())?;
    let report = column_row_ratio(&tuple, degree).map_err(classify)?;
    let note = if tuple.d() == 1 {
        "truncated lower bounds; the column-row property holds with constant 1 in one variable"
    } else {
        "truncated lower bounds only; no certified column-row constant for d >= 2"
    };
    let envelope = Envelope::with_note(
        "colrow",
        ConfigEcho { d: tuple.d(), degree, tol: common.tol, ..ConfigEcho::default() },
        Report::Colrow(report),
        note,
    );
    emit(common, &envelope)?;
    Ok(0)
}

fn run_kernel(common: &CommonArgs) -> Result<i32, Failure> {
    validate_common(common)?;
    let space: CnpSpace = read_json(common)?;
    check_d(common, space.d())?;
    let gram = kernel_matrix(&space);
    let (min_eig, max_eig) = kernel_eig_range(&space);
    let trace: f64 = (0..space.len()).map(|i| gram[(i, i)].re).sum();
    let report = KernelReport {
        size: space.len(),
        gram: (0..space.len())
            .map(|i| (0..space.len()).map(|j| [gram[(i, j)].re, gram[(i, j)].im]).collect())
            .collect(),
        min_eigenvalue: min_eig,
        max_eigenvalue: max_eig,
        psd: min_eig >= -1e-10 * trace,
    };
    let envelope = Envelope::new(
        "kernel",
        ConfigEcho { d: space.d(), tol: common.tol, ..ConfigEcho::default() },
        Report::Kernel(report),
    );
    emit(common, &envelope)?;
    Ok(0)
}

fn run_cnp_factor(common: &CommonArgs, dm: Option<u32>, degree: u32) -> Result<i32, Failure> {
    validate_common(common)?;
    let input: CnpFactorInput = read_json(common)?;
    check_d(common, input.space.d())?;
    if input.functions.is_empty() {
        return Err(invalid("input contains no sampled functions"));
    }
    let functions: Vec<SampledFunction> = input
        .functions
        .into_iter()
        .map(|f| {
            SampledFunction::from_coeffs(
                input.space.clone(),
                f.coeffs
                    .into_iter()
                    .map(|[re, im]| num_complex::Complex64::new(re, im))
                    .collect(),
            )
        })
        .collect::<Result<_, _>>()
        .map_err(classify)?;
    let dm = dm.unwrap_or(3);
    if dm < 1 {
        return Err(invalid("Dm must be at least 1"));
    }
    let config = config_for(common, 6);
    let out = factor_sequence_cnp(&input.space, &functions, dm, degree, &config).map_err(classify)?;
    let max_error = out.max_pointwise_error;
    let envelope = Envelope::new(
        "cnp-factor",
        ConfigEcho { d: input.space.d(), degree, dm: Some(dm), tol: common.tol, ..ConfigEcho::default() },
        Report::CnpFactor(CnpFactorReport::from_result(&input.space, out)),
    );
    emit(common, &envelope)?;
    if max_error > common.tol.max(1e-6) {
        return Err(tolerance(format!("pointwise identity error {max_error:e} above tolerance")));
    }
    Ok(0)
}
