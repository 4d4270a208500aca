//! Command line front end: single-point reports, phase and parameter
//! sweeps, optimizer cross-checks, oracle verification, and threshold
//! queries. All numbers come from noon-core; this binary only parses
//! flags, picks a format, and decides the exit code.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use noon_core::analytic::{
    advantage_ratio, coincidence_distribution, fisher_information, fisher_information_max,
    fringe_descriptor, superiority_alpha_interval_lossless, visibility,
};
use noon_core::fock::{fisher_information_fd, simulate, DEFAULT_FD_STEP, DEFAULT_PHOTON_CAP};
use noon_core::metrology::{
    classify_regime, find_advantage_threshold, find_superiority_threshold,
    maximize_fisher_over_alpha, maximize_visibility_over_alpha,
};
use noon_core::scan::{run_scan, write_csv, write_csv_to, write_json, write_json_to};
use noon_core::{
    Axis, AxisParam, OptimumReport, ProbeConfig, Quantity, RegimeLabel, ScanResult, ScanSpec,
    ThresholdReport,
};

/// Absolute tolerance for the finite-difference Fisher cross-check in
/// `verify`. Looser than the probability tolerance because the central
/// difference itself truncates at roughly (N h)^2.
const FD_FISHER_TOL: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "noon",
    version,
    about = "Coincidence fringes, visibility, and Fisher information for lossy N-photon interferometers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operating point and print the full report
    Probe(ProbeArgs),
    /// Sweep the phase at a fixed operating point
    Fringe(FringeArgs),
    /// Sweep the (alpha, loss) unit square at fixed photon number
    Map(MapArgs),
    /// Maximize visibility or Fisher information over alpha
    Optimize(OptimizeArgs),
    /// Check the Fock-space oracle against the closed forms on a grid
    Verify(VerifyArgs),
    /// Report loss thresholds and the lossless alpha window
    Thresholds(ThresholdsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Fisher,
    Visibility,
}

impl Objective {
    fn name(self) -> &'static str {
        match self {
            Objective::Fisher => "fisher",
            Objective::Visibility => "visibility",
        }
    }
}

#[derive(Args)]
struct ProbeArgs {
    /// Photon number
    #[arg(long)]
    n: u32,
    /// Weight of the reference-arm component, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Photon loss probability in the sensing arm, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    loss: f64,
    /// Phase in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase: f64,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct FringeArgs {
    /// Photon number
    #[arg(long)]
    n: u32,
    /// Weight of the reference-arm component, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Photon loss probability in the sensing arm, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    loss: f64,
    /// Start of the phase axis, radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase_min: f64,
    /// End of the phase axis, radians
    #[arg(long, default_value_t = TAU, allow_negative_numbers = true)]
    phase_max: f64,
    /// Number of phase samples, endpoints included
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Comma-separated quantities to evaluate at each phase
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "detection_probs,fisher_phi",
        value_parser = parse_quantity
    )]
    quantities: Vec<Quantity>,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct MapArgs {
    /// Photon number
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Samples per axis, endpoints included
    #[arg(long, default_value_t = 201)]
    steps: usize,
    /// Fixed phase in radians, used by phase-dependent quantities
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase: f64,
    /// Comma-separated quantities to evaluate at each grid point
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "fisher_max,regime",
        value_parser = parse_quantity
    )]
    quantities: Vec<Quantity>,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct OptimizeArgs {
    /// What to maximize over alpha
    #[arg(long, value_enum)]
    objective: Objective,
    /// Photon number
    #[arg(long)]
    n: u32,
    /// Photon loss probability in the sensing arm, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    loss: f64,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest photon number to check
    #[arg(long, default_value_t = 6)]
    max_n: u32,
    /// Tolerance on probability and sum-rule discrepancies
    #[arg(long, default_value_t = 1e-12, allow_negative_numbers = true)]
    tol: f64,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// Photon number, at least 2
    #[arg(long)]
    n: u32,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_quantity(s: &str) -> noon_core::Result<Quantity> {
    s.parse()
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn runtime<E: fmt::Display>(error: E) -> Failure {
    Failure::Runtime(error.to_string())
}

fn check_unit_flag(flag: &str, value: f64) -> Result<(), Failure> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(usage(format!("--{flag} must lie in [0, 1], got {value}")))
    }
}

fn check_finite_flag(flag: &str, value: f64) -> Result<(), Failure> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--{flag} must be finite, got {value}")))
    }
}

fn check_photons_flag(flag: &str, value: u32) -> Result<(), Failure> {
    if value >= 1 {
        Ok(())
    } else {
        Err(usage(format!("--{flag} must be at least 1, got {value}")))
    }
}

fn emit_text(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Runtime(format!("cannot write to standard output: {e}"))),
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
    }
}

fn json_body<T: Serialize>(report: &T) -> Result<String, Failure> {
    let mut body = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::Runtime(format!("cannot serialize report: {e}")))?;
    body.push('\n');
    Ok(body)
}

fn emit_json_report<T: Serialize>(out: Option<&Path>, report: &T) -> Result<(), Failure> {
    emit_text(out, &json_body(report)?)
}

fn emit_scan(result: &ScanResult, out: Option<&Path>, format: OutputFormat) -> Result<(), Failure> {
    match (out, format) {
        (Some(path), OutputFormat::Csv) => write_csv(result, path).map_err(runtime),
        (Some(path), OutputFormat::Json) => write_json(result, path).map_err(runtime),
        (None, OutputFormat::Csv) => write_csv_to(result, &mut io::stdout().lock())
            .map_err(|e| Failure::Runtime(format!("cannot write to standard output: {e}"))),
        (None, OutputFormat::Json) => write_json_to(result, &mut io::stdout().lock())
            .map_err(|e| Failure::Runtime(format!("cannot write to standard output: {e}"))),
    }
}

fn run_and_emit(spec: &ScanSpec, out: Option<&Path>, format: OutputFormat) -> Result<ExitCode, Failure> {
    spec.validate().map_err(|e| usage(e.to_string()))?;
    let result = run_scan(spec).map_err(runtime)?;
    emit_scan(&result, out, format)?;
    Ok(ExitCode::SUCCESS)
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct ProbeReport {
    n: u32,
    alpha: f64,
    loss: f64,
    phase: f64,
    probabilities: Vec<f64>,
    total_probability: f64,
    visibility: f64,
    fisher_information: f64,
    fisher_information_max: f64,
    /// None for single-photon probes and at degenerate points, where the
    /// single-photon comparison is moot.
    advantage_ratio: Option<f64>,
    regime: Option<RegimeLabel>,
}

fn probe_report(args: &ProbeArgs) -> Result<ProbeReport, Failure> {
    check_photons_flag("n", args.n)?;
    check_unit_flag("alpha", args.alpha)?;
    check_unit_flag("loss", args.loss)?;
    check_finite_flag("phase", args.phase)?;
    let cfg =
        ProbeConfig::new(args.n, args.alpha, args.loss, args.phase).map_err(|e| usage(e.to_string()))?;
    let dist = coincidence_distribution(&cfg);
    let fringe = fringe_descriptor(&cfg);
    let degenerate = args.alpha == 0.0 || args.alpha == 1.0 || args.loss == 1.0;
    let (ratio, regime) = if args.n >= 2 && !degenerate {
        (
            Some(advantage_ratio(args.alpha, args.loss, args.n).map_err(runtime)?),
            Some(classify_regime(args.alpha, args.loss, args.n).map_err(runtime)?),
        )
    } else {
        (None, None)
    };
    Ok(ProbeReport {
        n: args.n,
        alpha: args.alpha,
        loss: args.loss,
        phase: args.phase,
        total_probability: dist.total(),
        probabilities: dist.probabilities,
        visibility: fringe.visibility,
        fisher_information: fisher_information(&cfg),
        fisher_information_max: fisher_information_max(args.n, args.alpha, args.loss),
        advantage_ratio: ratio,
        regime,
    })
}

fn probe_csv(report: &ProbeReport) -> String {
    let mut header: Vec<String> = ["n", "alpha", "loss", "phase"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for i in 0..report.probabilities.len() {
        header.push(format!("prob_{i}"));
    }
    header.extend(
        [
            "total_probability",
            "visibility",
            "fisher_information",
            "fisher_information_max",
            "advantage_ratio",
            "regime",
        ]
        .iter()
        .map(|s| s.to_string()),
    );

    let mut row = vec![
        report.n.to_string(),
        sci(report.alpha),
        sci(report.loss),
        sci(report.phase),
    ];
    row.extend(report.probabilities.iter().map(|p| sci(*p)));
    row.push(sci(report.total_probability));
    row.push(sci(report.visibility));
    row.push(sci(report.fisher_information));
    row.push(sci(report.fisher_information_max));
    row.push(report.advantage_ratio.map(sci).unwrap_or_default());
    row.push(report.regime.map(|r| r.to_string()).unwrap_or_default());

    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn cmd_probe(args: ProbeArgs) -> Result<ExitCode, Failure> {
    let report = probe_report(&args)?;
    let body = match args.format {
        OutputFormat::Json => json_body(&report)?,
        OutputFormat::Csv => probe_csv(&report),
    };
    emit_text(args.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fringe(args: FringeArgs) -> Result<ExitCode, Failure> {
    check_photons_flag("n", args.n)?;
    check_unit_flag("alpha", args.alpha)?;
    check_unit_flag("loss", args.loss)?;
    check_finite_flag("phase-min", args.phase_min)?;
    check_finite_flag("phase-max", args.phase_max)?;
    let spec = ScanSpec {
        n_photons: args.n,
        alpha: args.alpha,
        loss: args.loss,
        phase: args.phase_min,
        axes: vec![Axis {
            param: AxisParam::Phase,
            min: args.phase_min,
            max: args.phase_max,
            steps: args.steps,
        }],
        quantities: args.quantities,
    };
    run_and_emit(&spec, args.out.as_deref(), args.format)
}

fn cmd_map(args: MapArgs) -> Result<ExitCode, Failure> {
    check_photons_flag("n", args.n)?;
    check_finite_flag("phase", args.phase)?;
    let spec = ScanSpec {
        n_photons: args.n,
        alpha: 0.0,
        loss: 0.0,
        phase: args.phase,
        axes: vec![
            Axis {
                param: AxisParam::Alpha,
                min: 0.0,
                max: 1.0,
                steps: args.steps,
            },
            Axis {
                param: AxisParam::Loss,
                min: 0.0,
                max: 1.0,
                steps: args.steps,
            },
        ],
        quantities: args.quantities,
    };
    run_and_emit(&spec, args.out.as_deref(), args.format)
}

#[derive(Serialize)]
struct OptimizeReport {
    objective: &'static str,
    n: u32,
    loss: f64,
    optimum: OptimumReport,
}

fn cmd_optimize(args: OptimizeArgs) -> Result<ExitCode, Failure> {
    check_photons_flag("n", args.n)?;
    check_unit_flag("loss", args.loss)?;
    let optimum = match args.objective {
        Objective::Fisher => maximize_fisher_over_alpha(args.loss, args.n),
        Objective::Visibility => maximize_visibility_over_alpha(args.loss, args.n),
    }
    .map_err(runtime)?;
    let report = OptimizeReport {
        objective: args.objective.name(),
        n: args.n,
        loss: args.loss,
        optimum,
    };
    emit_json_report(args.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize, Clone, Copy)]
struct VerifyCase {
    n: u32,
    alpha: f64,
    loss: f64,
    phase: f64,
    probability_discrepancy: f64,
    sum_rule_discrepancy: f64,
    /// None where the fringe is flat: at full contrast on a phase node the
    /// closed form takes its limit value while a finite difference of the
    /// probabilities sees only the vanishing slope, so the two measure
    /// different things and the comparison is skipped.
    fisher_discrepancy: Option<f64>,
}

#[derive(Serialize)]
struct VerifySummary {
    max_n: u32,
    tolerance: f64,
    fisher_tolerance: f64,
    points_checked: usize,
    worst_probability_discrepancy: f64,
    worst_sum_rule_discrepancy: f64,
    worst_fisher_discrepancy: f64,
    worst_point: VerifyCase,
    failures: Vec<VerifyCase>,
    passed: bool,
}

fn verify_case(n: u32, alpha: f64, loss: f64, phase: f64) -> Result<VerifyCase, Failure> {
    let cfg = ProbeConfig::new(n, alpha, loss, phase).map_err(runtime)?;
    let oracle = simulate(&cfg).map_err(runtime)?;
    let closed = coincidence_distribution(&cfg);
    let probability_discrepancy = oracle
        .probabilities
        .iter()
        .zip(&closed.probabilities)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let expected_total = alpha + (1.0 - alpha) * (1.0 - loss).powi(n as i32);
    let sum_rule_discrepancy = (oracle.total() - expected_total).abs();
    let flat_fringe = visibility(alpha, loss, n) > 1.0 - 1e-9
        && (f64::from(n) * phase).sin().abs() < 1e-9;
    let fisher_discrepancy = if flat_fringe {
        None
    } else {
        let fd = fisher_information_fd(&cfg, DEFAULT_FD_STEP).map_err(runtime)?;
        Some((fd - fisher_information(&cfg)).abs())
    };
    Ok(VerifyCase {
        n,
        alpha,
        loss,
        phase,
        probability_discrepancy,
        sum_rule_discrepancy,
        fisher_discrepancy,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    check_photons_flag("max-n", args.max_n)?;
    if args.max_n > DEFAULT_PHOTON_CAP {
        return Err(usage(format!(
            "--max-n must be at most {DEFAULT_PHOTON_CAP} (the oracle photon cap), got {}",
            args.max_n
        )));
    }
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(usage(format!(
            "--tol must be finite and nonnegative, got {}",
            args.tol
        )));
    }

    let alphas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let losses = [0.0, 0.1, 0.3, 0.7, 1.0];
    let mut cases = Vec::new();
    for n in 1..=args.max_n {
        let phases = [0.0, PI / 7.0, PI / (2.0 * f64::from(n)), 1.0];
        for &alpha in &alphas {
            for &loss in &losses {
                for &phase in &phases {
                    cases.push(verify_case(n, alpha, loss, phase)?);
                }
            }
        }
    }

    let model_gap = |c: &VerifyCase| c.probability_discrepancy.max(c.sum_rule_discrepancy);
    let worst_point = *cases
        .iter()
        .max_by(|a, b| model_gap(a).total_cmp(&model_gap(b)))
        .expect("grid is never empty");
    let failures: Vec<VerifyCase> = cases
        .iter()
        .copied()
        .filter(|c| {
            c.probability_discrepancy > args.tol
                || c.sum_rule_discrepancy > args.tol
                || c.fisher_discrepancy.is_some_and(|d| d > FD_FISHER_TOL)
        })
        .collect();
    let passed = failures.is_empty();

    let summary = VerifySummary {
        max_n: args.max_n,
        tolerance: args.tol,
        fisher_tolerance: FD_FISHER_TOL,
        points_checked: cases.len(),
        worst_probability_discrepancy: cases
            .iter()
            .map(|c| c.probability_discrepancy)
            .fold(0.0, f64::max),
        worst_sum_rule_discrepancy: cases
            .iter()
            .map(|c| c.sum_rule_discrepancy)
            .fold(0.0, f64::max),
        worst_fisher_discrepancy: cases
            .iter()
            .filter_map(|c| c.fisher_discrepancy)
            .fold(0.0, f64::max),
        worst_point,
        failures,
        passed,
    };
    emit_json_report(args.out.as_deref(), &summary)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct ThresholdsReport {
    n: u32,
    lossless_alpha_interval: [f64; 2],
    superiority: ThresholdReport,
    advantage: ThresholdReport,
}

fn cmd_thresholds(args: ThresholdsArgs) -> Result<ExitCode, Failure> {
    if args.n < 2 {
        return Err(usage(format!(
            "--n must be at least 2, got {}: thresholds compare an N-photon probe \
             against the single-photon benchmark, which needs N >= 2",
            args.n
        )));
    }
    let (lo, hi) =
        superiority_alpha_interval_lossless(args.n).expect("interval exists for n >= 2");
    let report = ThresholdsReport {
        n: args.n,
        lossless_alpha_interval: [lo, hi],
        superiority: find_superiority_threshold(args.n).map_err(runtime)?,
        advantage: find_advantage_threshold(args.n).map_err(runtime)?,
    };
    emit_json_report(args.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Probe(args) => cmd_probe(args),
        Command::Fringe(args) => cmd_fringe(args),
        Command::Map(args) => cmd_map(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Thresholds(args) => cmd_thresholds(args),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
