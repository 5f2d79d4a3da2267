use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hurzeta::cli_io::{
    exit_code_for_error, render, run, Command, OutputFormat, RunConfig, DEFAULT_SEED,
};
use hurzeta::exec::configure_threads_from_env;
use hurzeta::HurzetaError;

/// Hurwitz zeta at integer order, its generating function, and the checks behind them.
///
/// Complex values: `1.25`, `1,0.5`, `1+0.5i`, `-2i`. Grids: `start:stop:count`.
/// Set HURZETA_MAX_THREADS to cap the worker pool.
#[derive(Parser, Debug)]
#[command(name = "hurzeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output encoding: json, csv or human.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Bisection budget of the adaptive quadrature.
    #[arg(long, global = true)]
    max_subdivisions: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// zeta(k, b) by the closed form, with the series oracle alongside.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Generating function f(x, b) at a point or along a real grid of x.
    Genfun {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// zeta(2j + 1) from its integral representation; j as `3`, `1:5` or `1,4`.
    Oddzeta {
        #[arg(long)]
        j: String,
    },
    /// Run a check suite: theorem1, zero-integral, log-asymptotic, oracle-grid,
    /// endpoint-identity or all.
    Validate {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// zeta over k range x b list; b entries separated by `;`.
    Sweep {
        #[arg(long)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

fn config_from(cli: Cli) -> Result<RunConfig, HurzetaError> {
    let (command, params, seed): (Command, Vec<(&str, String)>, u64) = match cli.command {
        Cmd::Eval { k, b } => (Command::Eval, vec![("k", k), ("b", b)], DEFAULT_SEED),
        Cmd::Genfun { x, b } => (Command::Genfun, vec![("x", x), ("b", b)], DEFAULT_SEED),
        Cmd::Oddzeta { j } => (Command::Oddzeta, vec![("j", j)], DEFAULT_SEED),
        Cmd::Validate { suite, seed } => (Command::Validate, vec![("suite", suite)], seed),
        Cmd::Sweep { k, b } => (Command::Sweep, vec![("k", k), ("b", b)], DEFAULT_SEED),
    };
    let mut config = RunConfig::new(command);
    for (key, value) in params {
        config = config.with_param(key, value);
    }
    config.seed = seed;
    config.output_format = cli.common.format.parse::<OutputFormat>()?;
    config.output_path = cli.common.output;
    config.tolerances.rel_tol = cli.common.rel_tol;
    config.tolerances.abs_tol = cli.common.abs_tol;
    config.tolerances.max_subdivisions = cli.common.max_subdivisions;
    Ok(config)
}

fn fail(e: &HurzetaError) -> ExitCode {
    let kind = if e.is_usage() { "usage" } else { "numeric" };
    let record = serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } });
    eprintln!("{record}");
    ExitCode::from(exit_code_for_error(e) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads_from_env() {
        return fail(&e);
    }
    let config = match config_from(cli) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let envelope = match run(&config) {
        Ok(env) => env,
        Err(e) => return fail(&e),
    };
    let text = match render(&envelope, config.output_format) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(&HurzetaError::Output(e.to_string()));
    }
    ExitCode::from(envelope.exit_code() as u8)
}
