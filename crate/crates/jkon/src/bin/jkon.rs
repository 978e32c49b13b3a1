//! Thin command-line front end over the library's batch driver.

use clap::{Parser, Subcommand};
use jkon::cli::{run_eval, run_verify, JobConfig, EXIT_USAGE};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jkon",
    version,
    about = "Evaluate bivariate Jacobi-Konhauser functions and run the verification suites"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an operation over a point grid and emit a table
    Eval {
        /// Operation name (see `jkon eval --target help`)
        #[arg(long)]
        target: Option<String>,
        /// Flat key=value config file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: csv or json
        #[arg(long)]
        format: Option<String>,
        /// Extra key=value overrides, repeatable; flags win over the file
        #[arg(long = "set", value_name = "KEY=VALUE")]
        sets: Vec<String>,
    },
    /// Run the numerical certification suites
    Verify {
        /// Run a single suite by name
        #[arg(long)]
        suite: Option<String>,
        /// Seed for the randomized batteries
        #[arg(long)]
        seed: Option<u64>,
        /// Optional config file (tolerance overrides etc.)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write a JSON report here as well
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra key=value overrides, repeatable
        #[arg(long = "set", value_name = "KEY=VALUE")]
        sets: Vec<String>,
    },
    /// Alias of eval for matrix/table targets
    Table {
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        sets: Vec<String>,
    },
}

fn load_config(
    config: Option<PathBuf>,
    target: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
    seed: Option<u64>,
    sets: &[String],
) -> Result<JobConfig, i32> {
    let mut cfg = match config {
        Some(path) => JobConfig::from_file(&path).map_err(|e| {
            eprintln!("config error: {e}");
            EXIT_USAGE
        })?,
        None => JobConfig::default(),
    };
    if let Some(t) = target {
        cfg.target = t;
    }
    if let Some(o) = out {
        cfg.output_path = Some(o.to_string_lossy().into_owned());
    }
    if let Some(f) = format {
        cfg.set("format", &f).map_err(|e| {
            eprintln!("{e}");
            EXIT_USAGE
        })?;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    for kv in sets {
        let Some((k, v)) = kv.split_once('=') else {
            eprintln!("--set expects KEY=VALUE, got '{kv}'");
            return Err(EXIT_USAGE);
        };
        cfg.set(k.trim(), v.trim()).map_err(|e| {
            eprintln!("{e}");
            EXIT_USAGE
        })?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Eval {
            target,
            config,
            out,
            format,
            sets,
        } => match load_config(config, target, out, format, None, &sets) {
            Ok(cfg) => run_eval(&cfg, "eval"),
            Err(code) => code,
        },
        Command::Table {
            target,
            config,
            out,
            format,
            sets,
        } => match load_config(config, target, out, format, None, &sets) {
            Ok(cfg) => run_eval(&cfg, "table"),
            Err(code) => code,
        },
        Command::Verify {
            suite,
            seed,
            config,
            out,
            sets,
        } => match load_config(config, None, out, None, seed, &sets) {
            Ok(cfg) => run_verify(&cfg, suite.as_deref()),
            Err(code) => code,
        },
    };
    ExitCode::from(code as u8)
}
