//! Command-line surface: reproducible evaluation, sweeps, bounds, readout
//! simulation and scenario export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error. The
//! environment variable `CONTEXTLAB_SEED` overrides the default seed.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::graphbounds::{bounds_report, build_graph};
use crate::hilbert::DensityOperator;
use crate::nmrsim::{
    builtin_mappings, measure_inequality, pps_state, PseudopureModel, ReadoutOptions, Shots,
};
use crate::pauli::aggregate_observable;
use crate::scenario::{
    evaluate, evaluate_via_pauli, from_json, fully_contextual_c_scenario, kcbs_twin_scenario,
    rotation_sweep, to_json, validate_exclusivity, ContextualityScenario,
};
use crate::tables;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed:\n{0}")]
    VerificationFailed(String),
    #[error("{0}")]
    Runtime(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::VerificationFailed(_) => 1,
            CliError::Runtime(_) | CliError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Dat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotSpec {
    Exact,
    Count(u64),
}

impl FromStr for ShotSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(ShotSpec::Exact);
        }
        match s.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(ShotSpec::Count(n)),
            _ => Err(format!("expected 'exact' or a positive shot count, got '{s}'")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "contextlab",
    about = "Contextuality inequalities: verification, sweeps, graph bounds and readout simulation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full identity suite and report any failures.
    Verify {
        /// Additional scenario (built-in name or JSON file) to validate.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Evaluate an inequality at one or more rotation angles.
    Eval {
        #[arg(long, default_value = "kcbs-twin")]
        scenario: String,
        /// Rotation angle in degrees, repeatable.
        #[arg(long = "theta", value_name = "DEG", default_values_t = vec![0.0])]
        theta_list: Vec<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<String>,
    },
    /// Sweep the rotation angle over the default or a custom grid.
    Sweep {
        #[arg(long, default_value = "kcbs-twin")]
        scenario: String,
        /// Rotation angle in degrees, repeatable; omit for the default grid.
        #[arg(long = "theta", value_name = "DEG")]
        theta_list: Vec<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<String>,
    },
    /// Orthogonality-graph bounds: independence and fractional packing numbers.
    Bounds {
        #[arg(long, default_value = "kcbs-twin")]
        scenario: String,
        /// Orthogonality tolerance for edge detection.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<String>,
    },
    /// Simulate the sigma_z readout protocol with pseudopure polarization
    /// and optional shot noise.
    Nmr {
        #[arg(long, default_value = "kcbs-twin")]
        scenario: String,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Pseudopure polarization in (0, 1].
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// 'exact' or a positive sample count per term.
        #[arg(long, default_value = "exact")]
        shots: ShotSpec,
        /// Overrides CONTEXTLAB_SEED.
        #[arg(long)]
        seed: Option<u64>,
        /// Independent repetitions of the whole readout.
        #[arg(long, default_value_t = 3)]
        repeats: u32,
        /// Report raw expectations instead of epsilon-normalized ones.
        #[arg(long, default_value_t = false)]
        raw: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<String>,
    },
    /// Write a scenario definition as JSON.
    ExportScenario {
        #[arg(long, default_value = "kcbs-twin")]
        scenario: String,
        #[arg(long)]
        output: Option<String>,
    },
}

fn default_seed() -> u64 {
    std::env::var("CONTEXTLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn load_scenario(spec: &str) -> Result<ContextualityScenario, CliError> {
    match spec {
        "kcbs-twin" => Ok(kcbs_twin_scenario()),
        "c4" => Ok(fully_contextual_c_scenario()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(CliError::runtime)?;
            from_json(&value).map_err(CliError::runtime)
        }
    }
}

fn default_grid(s: &ContextualityScenario) -> Vec<f64> {
    match s.name.as_str() {
        "c4" => vec![180.0, 120.0, 90.0, 69.23, 60.0, 45.0, 30.0, 0.0],
        _ => vec![180.0, 120.0, 90.0, 60.0, 45.0, 36.0, 0.0],
    }
}

fn check_thetas(thetas: &[f64]) -> Result<(), CliError> {
    for &t in thetas {
        if !(0.0..360.0).contains(&t) {
            return Err(CliError::Usage(format!(
                "theta {t} outside [0, 360) degrees"
            )));
        }
    }
    Ok(())
}

fn render_sweep(
    s: &ContextualityScenario,
    thetas: &[f64],
    format: OutputFormat,
) -> Result<String, CliError> {
    let records = rotation_sweep(s, thetas).map_err(CliError::runtime)?;
    match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "theta_deg": r.theta_deg,
                        "value": r.value,
                        "closed_form": r.closed_form_value,
                        "nchv_bound": s.bound_nchv,
                        "gp_bound": s.bound_gp,
                    })
                })
                .collect();
            let doc = serde_json::json!({"scenario": s.name, "rows": rows});
            Ok(format!("{:#}\n", doc))
        }
        OutputFormat::Csv => {
            let mut out = String::from("theta_deg,value,closed_form,nchv_bound,gp_bound\n");
            for r in &records {
                let cf = r
                    .closed_form_value
                    .map(|v| format!("{v:.3}"))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{:.3},{:.3},{},{:.3},{:.3}",
                    r.theta_deg, r.value, cf, s.bound_nchv, s.bound_gp
                )
                .expect("string write");
            }
            Ok(out)
        }
        OutputFormat::Dat => {
            let mut out = String::new();
            writeln!(out, "# scenario: {}", s.name).unwrap();
            writeln!(out, "# columns: theta_deg value closed_form nchv_bound gp_bound").unwrap();
            for r in &records {
                let cf = r.closed_form_value.unwrap_or(f64::NAN);
                writeln!(
                    out,
                    "{:10.4} {:10.6} {:10.6} {:6.3} {:6.3}",
                    r.theta_deg, r.value, cf, s.bound_nchv, s.bound_gp
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn render_bounds(
    s: &ContextualityScenario,
    tol: f64,
    format: OutputFormat,
) -> Result<String, CliError> {
    let g = build_graph(&s.vectors, tol).map_err(CliError::runtime)?;
    let report = bounds_report(&g).map_err(CliError::runtime)?;
    match format {
        OutputFormat::Json => {
            let mut doc = serde_json::to_value(&report).map_err(CliError::runtime)?;
            doc["scenario"] = serde_json::Value::String(s.name.clone());
            Ok(format!("{:#}\n", doc))
        }
        OutputFormat::Csv => Ok(format!(
            "scenario,alpha,alpha_star,n_cliques\n{},{},{:.3},{}\n",
            s.name,
            report.independence_number,
            report.fractional_packing,
            report.maximal_cliques.len()
        )),
        OutputFormat::Dat => {
            let mut out = String::new();
            writeln!(out, "# scenario: {}", s.name).unwrap();
            writeln!(out, "# columns: alpha alpha_star n_cliques").unwrap();
            writeln!(
                out,
                "{} {:.6} {}",
                report.independence_number,
                report.fractional_packing,
                report.maximal_cliques.len()
            )
            .unwrap();
            Ok(out)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn render_nmr(
    s: &ContextualityScenario,
    theta_deg: f64,
    epsilon: f64,
    shots: ShotSpec,
    seed: u64,
    repeats: u32,
    raw: bool,
    format: OutputFormat,
) -> Result<String, CliError> {
    let projectors = s.projectors().map_err(CliError::runtime)?;
    let weight = s.dim as f64;
    let agg = aggregate_observable(&projectors, weight).map_err(CliError::runtime)?;
    let mappings = builtin_mappings(s.n_qubits()).map_err(CliError::runtime)?;
    let pure = s
        .rotated_reference(theta_deg.to_radians())
        .map_err(CliError::runtime)?;
    let model = PseudopureModel::new(epsilon, s.n_qubits()).map_err(CliError::runtime)?;
    let state = pps_state(&pure, &model).map_err(CliError::runtime)?;
    let mut runs = Vec::new();
    for r in 0..repeats.max(1) {
        let options = ReadoutOptions {
            shots: match shots {
                ShotSpec::Exact => Shots::Exact,
                ShotSpec::Count(n) => Shots::Count(n),
            },
            seed: seed.wrapping_add(r as u64),
            epsilon,
            normalize: !raw,
            strict: false,
        };
        runs.push(
            measure_inequality(&state, &agg, &mappings, weight, &options)
                .map_err(CliError::runtime)?,
        );
    }
    let mean = runs.iter().map(|e| e.value).sum::<f64>() / runs.len() as f64;
    let spread = if runs.len() > 1 {
        (runs.iter().map(|e| (e.value - mean).powi(2)).sum::<f64>() / (runs.len() - 1) as f64)
            .sqrt()
    } else {
        0.0
    };
    match format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "scenario": s.name,
                "theta_deg": theta_deg,
                "mean": mean,
                "spread": spread,
                "runs": runs,
            });
            Ok(format!("{:#}\n", doc))
        }
        OutputFormat::Csv => {
            let mut out = String::from("run,value,stderr\n");
            for (i, e) in runs.iter().enumerate() {
                writeln!(out, "{},{:.3},{:.3}", i, e.value, e.stderr).unwrap();
            }
            writeln!(out, "mean,{mean:.3},{spread:.3}").unwrap();
            Ok(out)
        }
        OutputFormat::Dat => {
            let mut out = String::new();
            writeln!(out, "# scenario: {} theta: {}", s.name, theta_deg).unwrap();
            writeln!(out, "# columns: run value stderr").unwrap();
            for (i, e) in runs.iter().enumerate() {
                writeln!(out, "{} {:12.6} {:12.6}", i, e.value, e.stderr).unwrap();
            }
            Ok(out)
        }
    }
}

struct VerifyOutcome {
    report: String,
    failures: usize,
}

fn run_verify(extra_scenario: Option<&str>) -> Result<VerifyOutcome, CliError> {
    let mut report = String::new();
    let mut failures = 0usize;
    let mut check = |report: &mut String, name: &str, ok: bool, detail: String| {
        if ok {
            writeln!(report, "ok   {name}{detail}").unwrap();
        } else {
            writeln!(report, "FAIL {name}{detail}").unwrap();
            failures += 1;
        }
    };

    let scenarios = [kcbs_twin_scenario(), fully_contextual_c_scenario()];

    // projector decompositions round-trip through the Pauli basis
    let mut verified = 0usize;
    let mut total = 0usize;
    for s in &scenarios {
        let projectors = s.projectors().map_err(CliError::runtime)?;
        for (i, p) in projectors.iter().enumerate() {
            total += 1;
            let poly = crate::pauli::decompose(p).map_err(CliError::runtime)?;
            let back = crate::pauli::reconstruct(&poly);
            let defect = back.max_abs_diff(p);
            let id_coeff = poly.coefficient(&"I".repeat(s.n_qubits()));
            let ok = defect < 1e-10 && (id_coeff - 1.0 / s.dim as f64).abs() < 1e-12;
            if ok {
                verified += 1;
            } else {
                check(
                    &mut report,
                    &format!("decomposition {}#{i}", s.name),
                    false,
                    format!(": defect {defect}"),
                );
            }
        }
    }
    check(
        &mut report,
        "projector decompositions",
        verified == total,
        format!(": {verified}/{total} verified"),
    );

    // aggregate observables against the published coefficient dictionaries
    for (s, published) in scenarios
        .iter()
        .zip([tables::published_k_aggregate(), tables::published_c_aggregate()])
    {
        let agg = aggregate_observable(&s.projectors().map_err(CliError::runtime)?, s.dim as f64)
            .map_err(CliError::runtime)?;
        let mismatches = tables::compare_expansion(&agg, &published, 1e-10);
        check(
            &mut report,
            &format!("aggregate observable ({})", s.name),
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!(": {} terms match", published.len())
            } else {
                format!(": {mismatches:?}")
            },
        );
    }

    // exclusivity structure
    for s in &scenarios {
        let r = validate_exclusivity(s).map_err(CliError::runtime)?;
        check(
            &mut report,
            &format!("exclusivity ({})", s.name),
            r.all_orthogonal,
            format!(
                ": total reference probability {:.6}",
                r.total_projector_probability
            ),
        );
        if s.name == "kcbs-twin" {
            check(
                &mut report,
                "context probability sums (kcbs-twin)",
                r.all_context_sums_unit,
                String::new(),
            );
        }
    }

    // aggregate route equals direct route on the reference states
    for s in &scenarios {
        let rho = DensityOperator::from_pure(&s.reference_state).map_err(CliError::runtime)?;
        let direct = evaluate(s, &rho).map_err(CliError::runtime)?;
        let agg = aggregate_observable(&s.projectors().map_err(CliError::runtime)?, s.dim as f64)
            .map_err(CliError::runtime)?;
        let via = evaluate_via_pauli(s, &rho, &agg, s.dim as f64).map_err(CliError::runtime)?;
        check(
            &mut report,
            &format!("evaluation routes agree ({})", s.name),
            (direct - via).abs() < 1e-10,
            format!(": {direct:.6} vs {via:.6}"),
        );
    }

    // readout mapping contracts
    for (n, label) in [(3usize, "kcbs-twin"), (2, "c4")] {
        let mappings = builtin_mappings(n).map_err(CliError::runtime)?;
        let worst = mappings
            .iter()
            .enumerate()
            .map(|(i, m)| m.contract_defect(100, 9000 + i as u64).map_err(CliError::runtime))
            .collect::<Result<Vec<f64>, _>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        check(
            &mut report,
            &format!("readout mapping contracts ({label})"),
            worst < 1e-10,
            format!(": worst defect {worst:.2e}"),
        );
    }

    // informational: diff derived expansions against the printed source text
    let mut notes = Vec::new();
    let k = &scenarios[0];
    for (i, p) in k.projectors().map_err(CliError::runtime)?.iter().enumerate() {
        let derived = crate::pauli::decompose(p).map_err(CliError::runtime)?;
        let printed = tables::printed_k_expansion(i);
        let mismatches = tables::compare_expansion(&derived, &printed, 1e-9);
        if !mismatches.is_empty() {
            notes.push(format!(
                "note projector {i} ({}): {} printed terms differ from the derived expansion ({})",
                k.name,
                mismatches.len(),
                mismatches
                    .iter()
                    .map(|m| m.label.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
    }
    let c = &scenarios[1];
    for (i, p) in c.projectors().map_err(CliError::runtime)?.iter().enumerate() {
        let derived = crate::pauli::decompose(p).map_err(CliError::runtime)?;
        let mismatches =
            tables::compare_expansion(&derived, &tables::printed_c_expansion(i), 1e-9);
        if !mismatches.is_empty() {
            notes.push(format!(
                "note projector {i} ({}): {} printed terms differ",
                c.name,
                mismatches.len()
            ));
        }
    }
    for n in &notes {
        writeln!(report, "{n}").unwrap();
    }

    // custom scenario, when requested
    if let Some(spec) = extra_scenario {
        match load_scenario(spec) {
            Ok(s) => {
                let r = validate_exclusivity(&s).map_err(CliError::runtime)?;
                check(
                    &mut report,
                    &format!("custom scenario '{}'", s.name),
                    r.all_orthogonal,
                    String::new(),
                );
            }
            Err(e) => {
                check(
                    &mut report,
                    &format!("custom scenario '{spec}'"),
                    false,
                    format!(": {e}"),
                );
            }
        }
    }

    writeln!(
        report,
        "{}",
        if failures == 0 {
            format!("verify: all checks passed ({verified}/{total} projector decompositions verified)")
        } else {
            format!("verify: {failures} check(s) failed")
        }
    )
    .unwrap();
    Ok(VerifyOutcome { report, failures })
}

/// Render the artifact for a parsed command. Pure given (command, env seed):
/// identical inputs yield byte-identical output.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Verify { scenario } => {
            let outcome = run_verify(scenario.as_deref())?;
            if outcome.failures > 0 {
                Err(CliError::VerificationFailed(outcome.report))
            } else {
                Ok(outcome.report)
            }
        }
        Command::Eval { scenario, theta_list, format, .. }
        | Command::Sweep { scenario, theta_list, format, .. } => {
            let s = load_scenario(scenario)?;
            let thetas = if theta_list.is_empty() {
                default_grid(&s)
            } else {
                theta_list.clone()
            };
            check_thetas(&thetas)?;
            render_sweep(&s, &thetas, *format)
        }
        Command::Bounds { scenario, tol, format, .. } => {
            let s = load_scenario(scenario)?;
            render_bounds(&s, *tol, *format)
        }
        Command::Nmr {
            scenario,
            theta,
            epsilon,
            shots,
            seed,
            repeats,
            raw,
            format,
            ..
        } => {
            check_thetas(&[*theta])?;
            let s = load_scenario(scenario)?;
            render_nmr(
                &s,
                *theta,
                *epsilon,
                *shots,
                seed.unwrap_or_else(default_seed),
                *repeats,
                *raw,
                *format,
            )
        }
        Command::ExportScenario { scenario, .. } => {
            let s = load_scenario(scenario)?;
            Ok(format!("{:#}\n", to_json(&s)))
        }
    }
}

fn output_path(command: &Command) -> Option<&str> {
    match command {
        Command::Eval { output, .. }
        | Command::Sweep { output, .. }
        | Command::Bounds { output, .. }
        | Command::Nmr { output, .. }
        | Command::ExportScenario { output, .. } => output.as_deref(),
        Command::Verify { .. } => None,
    }
}

/// Parse argv, run, print or write the artifact, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through this path too
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(artifact) => {
            if let Some(path) = output_path(&cli.command) {
                if let Err(e) = std::fs::write(path, &artifact) {
                    eprintln!("cannot write {path}: {e}");
                    return 1;
                }
            } else {
                print!("{artifact}");
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_passes_and_reports_printed_mismatches() {
        let outcome = run_verify(None).unwrap();
        assert_eq!(outcome.failures, 0, "{}", outcome.report);
        assert!(outcome.report.contains("20/20 projector decompositions verified"));
        // the printed eight-dimensional expansions carry transcription
        // defects; the four-dimensional ones do not
        assert!(outcome.report.contains("note projector 1 (kcbs-twin)"));
        assert!(outcome.report.contains("note projector 5 (kcbs-twin)"));
        assert!(outcome.report.contains("note projector 6 (kcbs-twin)"));
        for line in outcome.report.lines() {
            if line.starts_with("note projector") {
                assert!(!line.contains("(c4)"), "{line}");
            }
        }
    }

    #[test]
    fn eval_theta_45_rounds_to_table_value() {
        let cmd = Command::Eval {
            scenario: "kcbs-twin".into(),
            theta_list: vec![45.0],
            format: OutputFormat::Csv,
            output: None,
        };
        let out = execute(&cmd).unwrap();
        assert!(out.contains("45.000,2.354"), "{out}");
    }

    #[test]
    fn sweep_default_grid_matches_published_tables() {
        let out = execute(&Command::Sweep {
            scenario: "kcbs-twin".into(),
            theta_list: vec![],
            format: OutputFormat::Csv,
            output: None,
        })
        .unwrap();
        for row in [
            "180.000,1.500", "120.000,1.750", "90.000,2.000", "60.000,2.250",
            "45.000,2.354", "36.000,2.405", "0.000,2.500",
        ] {
            assert!(out.contains(row), "missing {row} in:\n{out}");
        }
        let out = execute(&Command::Sweep {
            scenario: "c4".into(),
            theta_list: vec![],
            format: OutputFormat::Csv,
            output: None,
        })
        .unwrap();
        for row in [
            "180.000,2.000", "120.000,2.375", "90.000,2.750", "69.230,3.016",
            "60.000,3.125", "45.000,3.280", "30.000,3.400", "0.000,3.500",
        ] {
            assert!(out.contains(row), "missing {row} in:\n{out}");
        }
    }

    #[test]
    fn bounds_for_c4() {
        let out = execute(&Command::Bounds {
            scenario: "c4".into(),
            tol: 1e-9,
            format: OutputFormat::Json,
            output: None,
        })
        .unwrap();
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["alpha"], 3);
        assert!((doc["alpha_star"].as_f64().unwrap() - 3.5).abs() < 1e-9);
    }

    #[test]
    fn nmr_exact_matches_table_head() {
        let out = execute(&Command::Nmr {
            scenario: "kcbs-twin".into(),
            theta: 0.0,
            epsilon: 1.0,
            shots: ShotSpec::Exact,
            seed: Some(7),
            repeats: 1,
            raw: false,
            format: OutputFormat::Json,
            output: None,
        })
        .unwrap();
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((doc["mean"].as_f64().unwrap() - 2.5).abs() < 1e-10);
        assert_eq!(doc["runs"][0]["stderr"], 0.0);
    }

    #[test]
    fn identical_config_is_byte_identical() {
        let cmd = Command::Nmr {
            scenario: "c4".into(),
            theta: 30.0,
            epsilon: 0.8,
            shots: ShotSpec::Count(10_000),
            seed: Some(99),
            repeats: 3,
            raw: false,
            format: OutputFormat::Json,
            output: None,
        };
        assert_eq!(execute(&cmd).unwrap(), execute(&cmd).unwrap());
    }

    #[test]
    fn bad_theta_is_usage_error() {
        let cmd = Command::Eval {
            scenario: "kcbs-twin".into(),
            theta_list: vec![720.0],
            format: OutputFormat::Csv,
            output: None,
        };
        let err = execute(&cmd).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn export_round_trips_through_load() {
        let out = execute(&Command::ExportScenario { scenario: "c4".into(), output: None }).unwrap();
        let tmp = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(tmp.path(), &out).unwrap();
        let cmd = Command::Eval {
            scenario: tmp.path().to_str().unwrap().into(),
            theta_list: vec![0.0],
            format: OutputFormat::Csv,
            output: None,
        };
        let row = execute(&cmd).unwrap();
        assert!(row.contains("0.000,3.500"), "{row}");
    }

    #[test]
    fn corrupted_scenario_fails_verify() {
        let mut json = to_json(&kcbs_twin_scenario());
        json["vectors"][0][0] = serde_json::json!([9.0, 0.0]);
        let tmp = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(tmp.path(), serde_json::to_string(&json).unwrap()).unwrap();
        let err = execute(&Command::Verify {
            scenario: Some(tmp.path().to_str().unwrap().into()),
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("not normalized"), "{err}");
    }
}
