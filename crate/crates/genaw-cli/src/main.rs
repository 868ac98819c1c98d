//! `genaw`: evaluate the mass-modified Askey-Wilson family and check its identities.
//!
//! Exit codes: 0 pass, 1 tolerance failure, 2 invalid input, 3 numerical non-convergence.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use crate::commands::RacahArgs;
use crate::config::{parse_complex, OutputFormat, RunConfig};

/// Input the program refuses to run with (exit code 2).
#[derive(Debug)]
pub struct InvalidInput(pub String);

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

#[derive(Debug, Parser)]
#[command(name = "genaw", version, about = "Askey-Wilson polynomials with point masses at x = -1 and x = +1")]
struct Cli {
    /// TOML run configuration; the built-in stock configuration when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    param_a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    param_b: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    param_c: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    param_d: Option<String>,
    #[arg(long, global = true)]
    param_q: Option<f64>,
    /// Mass at x = -1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mass_neg: Option<f64>,
    /// Mass at x = +1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mass_pos: Option<f64>,
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the resolved configuration (file plus flags) to this path.
    #[arg(long, global = true)]
    save_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate P_n and every representation of the modified polynomial.
    Eval {
        /// Degrees, comma separated; 0..=nmax when omitted.
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
        /// Real abscissae, comma separated; seeded random points when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<f64>,
    },
    /// Gram matrix of the modified family under the modified inner product.
    Gram,
    /// Worst residual of every identity over a seeded grid.
    Residuals,
    /// Compare the Askey-Wilson family with its q-Racah reduction.
    RacahCheck {
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        a_tilde: f64,
        #[arg(long, default_value_t = 1.7, allow_hyphen_values = true)]
        b_tilde: f64,
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        t: f64,
    },
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::stock(),
    };
    for (i, (name, v)) in [("a", &cli.param_a), ("b", &cli.param_b), ("c", &cli.param_c), ("d", &cli.param_d)]
        .into_iter()
        .enumerate()
    {
        if let Some(s) = v {
            cfg.abcd[i] = parse_complex(name, s)?;
        }
    }
    if let Some(v) = cli.param_q {
        cfg.q = v;
    }
    if let Some(v) = cli.mass_neg {
        cfg.mass_neg = v;
    }
    if let Some(v) = cli.mass_pos {
        cfg.mass_pos = v;
    }
    if let Some(v) = cli.nmax {
        cfg.n_max = v;
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.format {
        cfg.format = v;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = resolve(cli)?;
    if let Some(path) = &cli.save_config {
        std::fs::write(path, cfg.to_toml())?;
    }
    let outcome = match &cli.command {
        Command::Eval { degrees, points } => {
            let degrees = if degrees.is_empty() { (0..=cfg.n_max).collect() } else { degrees.clone() };
            let points = if points.is_empty() { commands::default_points(cfg.seed) } else { points.clone() };
            commands::eval(&cfg, &degrees, &points)?
        }
        Command::Gram => commands::gram_cmd(&cfg)?,
        Command::Residuals => commands::residuals(&cfg)?,
        Command::RacahCheck { alpha, beta, a_tilde, b_tilde, t } => commands::racah_check(
            &cfg,
            &RacahArgs { alpha: *alpha, beta: *beta, a_tilde: *a_tilde, b_tilde: *b_tilde, t: *t },
        )?,
    };
    let text = output::render(outcome.table.as_ref(), cfg.format)?;
    output::emit(&text, cli.out.as_deref())?;
    Ok(outcome.pass)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InvalidInput>().is_some() {
        return 2;
    }
    match err.downcast_ref::<genaw::Error>() {
        Some(e) if e.is_invalid_input() => 2,
        Some(e) if e.is_non_convergence() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
