use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gregory::commands;
use gregory::config::{Format, RunConfig};
use gregory::verify;
use gregory::Error;
use gregory_core::stieltjes::StieltjesMethod;

/// Exact and high-precision checks of identities for the Gregory
/// coefficients, logarithmic integrals and Stieltjes constants.
#[derive(Parser)]
#[command(name = "gregory", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Working precision in decimal digits (at least 20).
    #[arg(long, short = 'P', global = true, default_value_t = 50)]
    precision: u32,
    /// Term cap of the slowly converging series (at least 100).
    #[arg(long, short = 'N', global = true, default_value_t = 10_000)]
    terms: usize,
    /// Identity id prefix; empty selects every identity.
    #[arg(long, global = true, default_value = "")]
    filter: String,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Seed of the Monte Carlo smoke checks.
    #[arg(long, global = true, default_value_t = 0x5eed_2016)]
    seed: u64,
    /// JSON file caching the constant catalog between runs.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of p_n = |G_{n-1}| for n = 2..=N.
    Pn {
        /// Last index.
        n: usize,
        /// Add the difference between Knessl's integral and p_n.
        #[arg(long)]
        knessl: bool,
    },
    /// Run the identity registry; exits nonzero when a selected identity fails.
    Verify {
        /// Parameters for a single identity, e.g. `n=2,s=2`.
        #[arg(long)]
        params: Option<String>,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Include per-job wall time (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Stieltjes constant gamma_k(a) by each method.
    Stieltjes {
        k: usize,
        /// Shift, a rational such as `1/2`.
        #[arg(long, default_value = "1")]
        a: String,
        /// Comma-separated methods: limit_formula, p_series, polylog_integral.
        #[arg(long, value_delimiter = ',', default_values_t = StieltjesMethod::all().map(|m| m.name().to_string()))]
        methods: Vec<String>,
    },
    /// Hurwitz zeta value, optionally with the increasing series from below.
    Zeta {
        s: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long)]
        from_below: bool,
    },
    /// Integral of (1/ln x + 1/(1-x))^k x^sigma over (0,1).
    Integral {
        k: u32,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        sigma: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e @ Error::Config(_)) => {
            eprintln!("gregory: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("gregory: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> gregory::Result<ExitCode> {
    let g = cli.global;
    let default_format = match cli.cmd {
        Cmd::Verify { .. } => Format::Jsonl,
        _ => Format::Table,
    };
    let cfg = RunConfig {
        precision: g.precision,
        terms: g.terms,
        filter: g.filter,
        format: g.format.unwrap_or(default_format),
        cache: g.cache,
        seed: g.seed,
    };
    cfg.validate()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let table = match cli.cmd {
        Cmd::Pn { n, knessl } => commands::pn(n, knessl, cfg.precision)?,
        Cmd::Verify { params, threads, timings } => {
            let jobs = verify::plan(&cfg.filter, params.as_deref())?;
            let consts = commands::catalog(&cfg)?;
            let outcomes = verify::collect(verify::run_jobs(&jobs, &cfg.options(), &consts, threads)?);
            verify::table(&outcomes, cfg.precision as usize, timings).write(cfg.format, &mut out)?;
            out.flush()?;
            if verify::all_pass(&outcomes) {
                return Ok(ExitCode::SUCCESS);
            }
            eprintln!("gregory: failing: {}", verify::failing_ids(&outcomes).join(", "));
            return Ok(ExitCode::from(1));
        }
        Cmd::Stieltjes { k, a, methods } => {
            let methods = methods.iter().map(|m| m.parse()).collect::<gregory_core::Result<Vec<StieltjesMethod>>>()?;
            commands::stieltjes_table(k, &a, &methods, cfg.precision)?
        }
        Cmd::Zeta { s, a, from_below } => commands::zeta_table(&s, &a, from_below, cfg.terms, cfg.precision)?,
        Cmd::Integral { k, sigma } => commands::integral_table(k, &sigma, &cfg)?,
    };
    table.write(cfg.format, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
