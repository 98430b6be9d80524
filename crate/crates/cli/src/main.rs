mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jetinv::frontend::{parse_problem, Problem};
use jetinv::symexpr::ZeroTestConfig;

use commands::{CliError, Ctx};
use report::Report;

#[derive(Parser)]
#[command(name = "jetinv", version, about = "Differential invariants of ODEs and orthopath geometries")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of the randomized zero test (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    seed: u64,
    /// Random evaluations per zero test.
    #[arg(long, global = true, default_value_t = 24)]
    trials: u32,
    /// Include symbolic values in the report.
    #[arg(long, global = true)]
    show_expr: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant table for the problem kind.
    Invariants { file: PathBuf },
    /// Variationality verdict with witness.
    Variational { file: PathBuf },
    /// Cartan quartic coefficients and sampled root multiplicities.
    Quartic { file: PathBuf },
    /// Euler-Lagrange equation(s) with the closure check.
    El { file: PathBuf },
    /// Monge metric component and the c0 cross-check.
    Monge { file: PathBuf },
    /// Orthopath invariants A, T, N, q and flags.
    Orthopath { file: PathBuf },
    /// Run the built-in golden examples.
    Selftest,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn load(path: &PathBuf) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(rep: &Report, json: bool) {
    if json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.to_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let ctx = Ctx {
        cfg: ZeroTestConfig::with_seed(g.seed).with_trials(g.trials),
        show_expr: g.show_expr,
    };
    let outcome = match &cli.cmd {
        Cmd::Selftest => {
            let (rep, err) = commands::selftest(&ctx);
            emit(&rep, g.json);
            err.map_or(Ok(()), Err)
        }
        Cmd::Invariants { file }
        | Cmd::Variational { file }
        | Cmd::Quartic { file }
        | Cmd::El { file }
        | Cmd::Monge { file }
        | Cmd::Orthopath { file } => load(file).and_then(|p| {
            let rep = match &cli.cmd {
                Cmd::Invariants { .. } => commands::invariants(&p, &ctx),
                Cmd::Variational { .. } => commands::variational(&p, &ctx),
                Cmd::Quartic { .. } => commands::quartic(&p, &ctx),
                Cmd::El { .. } => commands::el(&p, &ctx),
                Cmd::Monge { .. } => commands::monge(&p, &ctx),
                _ => commands::orthopath(&p, &ctx),
            }?;
            emit(&rep, g.json);
            Ok(())
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
