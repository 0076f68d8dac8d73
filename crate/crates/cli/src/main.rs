//! `merofact`: evaluate the function family, extract principal parts and
//! residues, run the verification suites, solve Euler equations and compute
//! Casimir energies. Output is JSON on stdout unless `--format table`.

mod complex_arg;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use merofact_core::dirichlet::{self, SpectralModel};
use merofact_core::eulerops;
use merofact_core::registry::{AnalysisMethod, EvalMethod, Quantity, Registry};
use merofact_core::verify::{self, Suite, DEFAULT_SEED};
use merofact_core::{EvalConfig, Result};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use complex_arg::parse_complex;
use report::{complex, number, Report};

/// Residual bound reported for `euler` basis verification.
const EULER_TOLERANCE: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "merofact", version, about = "Gamma/Kurepa/zeta principal parts and Euler equations")]
struct Cli {
    /// Relative tolerance for series and quadrature
    #[arg(long, global = true, env = "MEROFACT_PREC", allow_hyphen_values = true)]
    prec: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a registered function at a point
    Eval(EvalArgs),
    /// Principal part (c₀ Laurent coefficient) at a point
    Pp(AnalyzeArgs),
    /// Residue (c₋₁ Laurent coefficient) at a point
    Res(AnalyzeArgs),
    /// Run the identity-verification suites
    Verify(VerifyArgs),
    /// Solve an Euler (equidimensional) equation
    Euler(EulerArgs),
    /// Casimir energy of a built-in spectral model
    Casimir(CasimirArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    at: Complex64,
    #[arg(long, value_enum, default_value_t = EvalMethodArg::Production)]
    method: EvalMethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EvalMethodArg {
    Production,
    Oracle,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    at: Complex64,
    #[arg(long, value_enum, default_value_t = AnalysisMethodArg::Contour)]
    method: AnalysisMethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AnalysisMethodArg {
    Closed,
    Contour,
    Symmetric,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    grid_seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Gamma,
    Kurepa,
    Dirichlet,
    Euler,
}

#[derive(Args, Debug)]
struct EulerArgs {
    #[arg(long, allow_hyphen_values = true)]
    equation: String,
    /// Write complex-conjugate root pairs as cos/sin terms
    #[arg(long)]
    real_form: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0])]
    points: Vec<f64>,
}

#[derive(Args, Debug)]
struct CasimirArgs {
    #[arg(long)]
    model: String,
}

fn config(prec: Option<f64>) -> Result<EvalConfig> {
    match prec {
        Some(p) => EvalConfig::default().with_rel_tol(p),
        None => Ok(EvalConfig::default()),
    }
}

fn choice_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn base_inputs(prec: Option<f64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("prec".into(), prec.map_or(Value::Null, number));
    m
}

fn eval_cmd(args: &EvalArgs, cfg: &EvalConfig, report: &mut Report) -> Result<()> {
    let method = match args.method {
        EvalMethodArg::Production => EvalMethod::Production,
        EvalMethodArg::Oracle => EvalMethod::Oracle,
    };
    let registry = Registry::standard(cfg);
    let value = registry.eval(&args.function, args.at, method)?;
    report.value = complex(value);
    report.method = Some(match method {
        EvalMethod::Production => "production".to_string(),
        EvalMethod::Oracle => format!("oracle:{}", registry.get(&args.function)?.oracle_name().unwrap_or("none")),
    });
    Ok(())
}

fn analyze_cmd(quantity: Quantity, args: &AnalyzeArgs, cfg: &EvalConfig, report: &mut Report) -> Result<()> {
    let method = match args.method {
        AnalysisMethodArg::Closed => AnalysisMethod::Closed,
        AnalysisMethodArg::Contour => AnalysisMethod::Contour,
        AnalysisMethodArg::Symmetric => AnalysisMethod::Symmetric,
        AnalysisMethodArg::All => AnalysisMethod::All,
    };
    let analysis = Registry::standard(cfg).analyze(quantity, &args.function, args.at, method)?;
    report.method = Some(method.name().to_string());
    report.value = match analysis.discrepancy {
        None => complex(analysis.value),
        Some(d) => {
            let methods: Vec<Value> = analysis
                .results
                .iter()
                .map(|(m, r)| match r {
                    Ok(v) => json!({ "method": m.name(), "value": complex(*v) }),
                    Err(e) => json!({ "method": m.name(), "error": { "kind": e.kind(), "message": e.to_string() } }),
                })
                .collect();
            json!({ "value": complex(analysis.value), "methods": methods, "discrepancy": number(d) })
        }
    };
    Ok(())
}

fn verify_cmd(args: &VerifyArgs, cfg: &EvalConfig, report: &mut Report) {
    let suite = match args.suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Gamma => Suite::Gamma,
        SuiteArg::Kurepa => Suite::Kurepa,
        SuiteArg::Dirichlet => Suite::Dirichlet,
        SuiteArg::Euler => Suite::Euler,
    };
    let rows = verify::run(suite, args.grid_seed, cfg);
    let failed = rows.iter().filter(|r| !r.pass).count();
    report.value = json!({ "suite": suite.name(), "checks": rows.len(), "failed": failed });
    report.method = Some("seeded-grid".into());
    report.residual_table = Some(rows);
}

fn euler_cmd(args: &EulerArgs, report: &mut Report) -> Result<()> {
    let eq = eulerops::parse_equation(&args.equation)?;
    let sol = eulerops::solve(&eq, args.real_form, eulerops::DEFAULT_CLUSTER_TOL)?;
    let residual = eulerops::verify_basis(&eq, &sol.basis, &args.points)?;
    let roots: Vec<Value> = sol
        .roots
        .entries
        .iter()
        .map(|e| json!({ "value": complex(e.root), "multiplicity": e.multiplicity, "snapped": e.snapped }))
        .collect();
    report.value = json!({
        "equation": eq.render(),
        "delta_poly": sol.delta.coeffs_f64().into_iter().map(number).collect::<Vec<_>>(),
        "delta_poly_exact": sol.delta.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "delta_rendered": sol.delta.render(),
        "roots": roots,
        "solution": sol.basis.rendered,
        "residual": number(residual),
    });
    report.method = Some("delta-operator".into());
    report.residual_table = Some(vec![verify::check("verify_basis", EULER_TOLERANCE, || Ok((residual, None)))]);
    Ok(())
}

fn casimir_cmd(args: &CasimirArgs, cfg: &EvalConfig, report: &mut Report) -> Result<()> {
    let model = SpectralModel::builtin(&args.model)?;
    let (value, method) = dirichlet::casimir_energy_with_method(&model, cfg)?;
    report.value = complex(value);
    report.method = Some(method.name().to_string());
    Ok(())
}

fn run(cli: &Cli) -> Report {
    let mut inputs = base_inputs(cli.prec);
    let command = match &cli.command {
        Command::Eval(a) => {
            inputs.insert("fn".into(), json!(a.function));
            inputs.insert("at".into(), complex(a.at));
            inputs.insert("method".into(), json!(choice_name(a.method)));
            "eval"
        }
        Command::Pp(a) | Command::Res(a) => {
            inputs.insert("fn".into(), json!(a.function));
            inputs.insert("at".into(), complex(a.at));
            inputs.insert("method".into(), json!(choice_name(a.method)));
            if matches!(cli.command, Command::Pp(_)) {
                "pp"
            } else {
                "res"
            }
        }
        Command::Verify(a) => {
            inputs.insert("suite".into(), json!(choice_name(a.suite)));
            inputs.insert("grid_seed".into(), json!(a.grid_seed));
            "verify"
        }
        Command::Euler(a) => {
            inputs.insert("equation".into(), json!(a.equation));
            inputs.insert("real_form".into(), json!(a.real_form));
            inputs.insert("points".into(), Value::Array(a.points.iter().copied().map(number).collect()));
            "euler"
        }
        Command::Casimir(a) => {
            inputs.insert("model".into(), json!(a.model));
            "casimir"
        }
    };
    let cfg = match config(cli.prec) {
        Ok(cfg) => cfg,
        Err(e) => return Report::failed(command, inputs, &e),
    };
    let mut report = Report::new(command, inputs.clone());
    let outcome: Result<()> = match &cli.command {
        Command::Eval(a) => eval_cmd(a, &cfg, &mut report),
        Command::Pp(a) => analyze_cmd(Quantity::PrincipalPart, a, &cfg, &mut report),
        Command::Res(a) => analyze_cmd(Quantity::Residue, a, &cfg, &mut report),
        Command::Verify(a) => {
            verify_cmd(a, &cfg, &mut report);
            Ok(())
        }
        Command::Euler(a) => euler_cmd(a, &mut report),
        Command::Casimir(a) => casimir_cmd(a, &cfg, &mut report),
    };
    match outcome {
        Ok(()) => report,
        Err(e) => Report::failed(command, inputs, &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n",
        Format::Table => report.to_table(),
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if report.error.is_some() {
        ExitCode::from(2)
    } else if !report.all_rows_pass() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
