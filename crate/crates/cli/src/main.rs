//! Command-line front end: evaluate points, sweep grids, reproduce figure
//! data, and verify the closed forms against the numeric engine.
//!
//! Exit codes: 0 success, 1 configuration error, 2 verification FAIL
//! present, 3 internal numeric failure.

mod config;
mod figures;
mod sweep;
mod verify;

use clap::{Parser, Subcommand};
use config::{ConfigError, SweepConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use sweep::RowStatus;

#[derive(Parser)]
#[command(
    name = "qfi",
    about = "Quantum Fisher information of a damped tripartite state near a Schwarzschild horizon",
    long_about = "Evaluates and sweeps the quantum Fisher information of the \
horizon-dilated GHZ-like state under the AD / GAD / SGAD noise families, and \
verifies the analytic closed forms against an independent SLD oracle.\n\n\
Parameters (defaults in parentheses): theta (pi/4), phi (0), T_C (1), T_H (1), \
r (0), Phi (0), Q (0.5), gamma0 (1), omega (1), lambda (0, direct damping for \
channel ad only). The closed forms consume the ratio w/T = omega/T_H.\n\n\
Channels: sgad binds (lambda, mu, v) from (Q, r, Phi, gamma0, omega, T_C); \
gad does the same with r = Phi = 0; ad takes lambda directly and pins Q = 1. \
Grid points whose bath coefficients leave [0, 1] are recorded with status \
rejected_unphysical."
)]
struct Cli {
    /// Channel family: ad, gad or sgad.
    #[arg(long, global = true)]
    channel: Option<String>,

    /// Fix a parameter: NAME=VALUE (repeatable).
    #[arg(long = "set", value_name = "NAME=VALUE", global = true)]
    set: Vec<String>,

    /// Sweep a parameter: NAME=START:STOP:COUNT (repeatable).
    #[arg(long = "vary", value_name = "NAME=START:STOP:COUNT", global = true)]
    vary: Vec<String>,

    /// Finite-difference step for the numeric engine.
    #[arg(long, global = true)]
    fd_step: Option<f64>,

    /// Eigenvalue support threshold for the numeric engine.
    #[arg(long, global = true)]
    support_eps: Option<f64>,

    /// Output path (CSV).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Plain-text config file (key = value); flags override file entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Grouping variant for the squeezed-channel theta expression:
    /// printed or regrouped.
    #[arg(long, value_name = "VARIANT", global = true)]
    expression_variant: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single fully-fixed parameter point.
    Eval,
    /// Sweep one or more parameters and write a CSV.
    Sweep,
    /// Compare every closed-form expression against the SLD numerics.
    Verify,
    /// Run a canned figure sweep (3..=9).
    Figure {
        /// Figure index.
        which: u8,
    },
}

fn resolve_config(cli: &Cli, base: Option<SweepConfig>) -> Result<SweepConfig, ConfigError> {
    let mut cfg = match (&cli.config, base) {
        (Some(path), _) => config::load_config_file(path)?,
        (None, Some(b)) => b,
        (None, None) => SweepConfig::default(),
    };
    if let Some(channel) = &cli.channel {
        cfg.channel = config::parse_channel(channel)?;
    }
    if let Some(v) = &cli.expression_variant {
        cfg.variant = config::parse_variant(v)?;
    }
    if let Some(h) = cli.fd_step {
        cfg.fd_step = h;
    }
    if let Some(eps) = cli.support_eps {
        cfg.support_eps = eps;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if !cli.vary.is_empty() {
        cfg.vary = cli
            .vary
            .iter()
            .map(|v| config::parse_vary(v))
            .collect::<Result<_, _>>()?;
    }
    for s in &cli.set {
        let (param, value) = config::parse_set(s)?;
        cfg.fixed.insert(param, value);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_output(path: &PathBuf, contents: &[u8]) -> Result<(), String> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| format!("cannot write output {}: {e}", path.display()))?;
    file.write_all(contents)
        .map_err(|e| format!("cannot write output {}: {e}", path.display()))
}

fn cmd_eval(cfg: &SweepConfig) -> Result<u8, String> {
    if !cfg.vary.is_empty() {
        return Err("eval expects a fully fixed parameter set (no --vary); use sweep".into());
    }
    let point = cfg.grid_points().into_iter().next().expect("one point");
    let row = sweep::evaluate_point(cfg.channel, &point, cfg.fd_step, cfg.support_eps, cfg.variant);
    print!("{}", row.aligned_text());
    println!("{}", sweep::CSV_HEADER);
    println!("{}", row.csv_line());
    if let Some(out) = &cfg.out {
        let mut buf = Vec::new();
        sweep::write_csv(&mut buf, std::slice::from_ref(&row)).expect("write to memory");
        write_output(out, &buf)?;
    }
    Ok(match row.status {
        RowStatus::Ok | RowStatus::RejectedUnphysical => 0,
        RowStatus::DegenerateSkipped => 3,
    })
}

fn cmd_sweep(cfg: &SweepConfig) -> Result<u8, String> {
    if cfg.vary.is_empty() {
        return Err("sweep expects at least one --vary axis".into());
    }
    let rows = sweep::run_sweep(cfg);
    let mut buf = Vec::new();
    sweep::write_csv(&mut buf, &rows).expect("write to memory");
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("sweep.csv"));
    write_output(&out, &buf)?;
    let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
    let rejected = rows
        .iter()
        .filter(|r| r.status == RowStatus::RejectedUnphysical)
        .count();
    let skipped = rows.len() - ok - rejected;
    println!(
        "wrote {} rows to {} (ok {}, rejected_unphysical {}, degenerate_skipped {})",
        rows.len(),
        out.display(),
        ok,
        rejected,
        skipped
    );
    Ok(0)
}

fn cmd_figure(cli: &Cli, which: u8) -> Result<u8, String> {
    let recipe = figures::figure_recipe(which)
        .ok_or_else(|| format!("no recipe for figure {which}; expected 3..=9"))?;
    let cfg = resolve_config(cli, Some(recipe)).map_err(|e| e.to_string())?;
    let rows = sweep::run_sweep(&cfg);
    let comments = if matches!(which, 6 | 8) {
        figures::spike_report(&cfg, &rows)
    } else {
        Vec::new()
    };
    let mut buf = Vec::new();
    sweep::write_csv(&mut buf, &rows).expect("write to memory");
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("figure{which}.csv")));
    write_output(&out, &buf)?;
    let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
    println!(
        "figure {which}: wrote {} rows to {} ({} physical)",
        rows.len(),
        out.display(),
        ok
    );
    for line in &comments {
        println!("{line}");
    }
    Ok(0)
}

fn cmd_verify(cfg: &SweepConfig) -> Result<u8, String> {
    let report = verify::run_verify(cfg.fd_step, cfg.support_eps);
    print!("{}", report.render_text());
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("verify_report.csv"));
    write_output(&out, report.render_csv().as_bytes())?;
    println!("# machine-readable report: {}", out.display());
    Ok(if report.any_fail() { 2 } else { 0 })
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    match &cli.command {
        Command::Figure { which } => cmd_figure(cli, *which).map_err(|e| (1, e)),
        other => {
            let cfg = resolve_config(cli, None).map_err(|e| (1, e.to_string()))?;
            match other {
                Command::Eval => cmd_eval(&cfg).map_err(|e| (1, e)),
                Command::Sweep => cmd_sweep(&cfg).map_err(|e| (1, e)),
                Command::Verify => cmd_verify(&cfg).map_err(|e| (1, e)),
                Command::Figure { .. } => unreachable!(),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
