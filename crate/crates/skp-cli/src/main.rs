use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use skp_cli::checks::{Config, Suite};
use skp_cli::eval;
use skp_cli::report::{build_report, render_text};

#[derive(Parser)]
#[command(name = "skp", version, about = "Verify and evaluate the K3 period map and its Shimura curve")]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "SKP_PRECISION", default_value_t = skp::DEFAULT_PRECISION)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and write a JSON report.
    Verify {
        /// `all` or one of lattice, quaternion, fuchsian, theta, embedding, period, family.
        #[arg(default_value = "all")]
        suite: String,
        /// Tolerance for comparisons with published algebraic values.
        #[arg(long, default_value_t = 1e-50)]
        tolerance: f64,
        /// Tolerance for end-to-end residuals.
        #[arg(long, default_value_t = 1e-35)]
        e2e_tolerance: f64,
        /// Write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0: one per core).
        #[arg(long, env = "SKP_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a single quantity and print it as JSON.
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Genus-2 theta constant with characteristic entries in {0, 1/2}.
    ThetaG2 {
        #[arg(num_args = 4, required = true)]
        characteristic: Vec<String>,
        /// `t11,t12,t22` as radical expressions or decimals, or `cm:k`.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Inverse period map at `x1 x2 x3`, `cm:k` or `xi:nu`.
    InvertPeriod {
        #[arg(required = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Modular embedding at `x1 x2 x3` or `cm:k`.
    PhiDom {
        #[arg(required = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
}

fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Vec::new());
    }
    match Suite::parse(name) {
        Some(s) => Ok(vec![s]),
        None => bail!("unknown suite {name:?}; expected all, lattice, quaternion, fuchsian, theta, embedding, period or family"),
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if cli.precision < skp::bigc::MIN_PRECISION {
        bail!("precision must be at least {} bits", skp::bigc::MIN_PRECISION);
    }
    let prec = cli.precision;
    match cli.command {
        Command::Verify { suite, tolerance, e2e_tolerance, out, jobs, json } => {
            let suites = parse_suites(&suite)?;
            let cfg = Config { precision_bits: prec, tolerance, e2e_tolerance };
            let report = build_report(cfg, &suites, jobs)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report)?;
                std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                print_json(&report)?;
            } else {
                print!("{}", render_text(&report));
            }
            Ok(report.all_passed())
        }
        Command::Eval { what } => {
            match what {
                EvalCommand::ThetaG2 { characteristic, tau } => print_json(&eval::theta(&characteristic, &tau, prec)?)?,
                EvalCommand::InvertPeriod { point } => print_json(&eval::inverse(&point, prec)?)?,
                EvalCommand::PhiDom { point } => print_json(&eval::phi(&point, prec)?)?,
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
