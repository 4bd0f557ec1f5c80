use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use quadtarget::commands::{self, FactorOptions};
use quadtarget::modspec::ModulusSpec;
use quadtarget::record::{inputs, int, OutputRecord};
use quadtarget::selftest;
use quadtarget_core::FactorizationConfig;

#[derive(Parser)]
#[command(
    name = "quadtarget",
    version,
    about = "Modular hyperbolas, targets and target-guided Fermat factoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count the targets of n modulo an odd modulus.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Odd integer (direct count) or factorization such as `3^2*7` (closed form).
        #[arg(long = "mod")]
        modulus: String,
        /// Compute both ways and fail on disagreement.
        #[arg(long)]
        check: bool,
    },
    /// List the targets of n modulo c.
    Targets {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Distance set, closed-form size and fundamental region modulo a prime.
    Distances {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        p: u64,
    },
    /// Points of the modular hyperbola xy ≡ n (mod c).
    Hyperbola {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Factor n with the target-guided Fermat search.
    Factor {
        #[arg(long)]
        n: String,
        /// Allow a split over only two odd primes.
        #[arg(long)]
        relaxed_split: bool,
        /// Split index r (default ⌊m/2⌋).
        #[arg(long)]
        r: Option<usize>,
        /// Override the window bound ⌈√n/(c·c′)⌉.
        #[arg(long)]
        k_window: Option<u64>,
        #[arg(long)]
        batch_gcd: bool,
        #[arg(long, default_value_t = 64)]
        batch_size: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        candidate_limit: Option<u64>,
        /// Also run plain Fermat and report its step count.
        #[arg(long)]
        baseline: bool,
        #[arg(long, default_value_t = 10_000_000)]
        baseline_limit: u64,
    },
    /// τ(n, c)/c along odd primorials c = 3·5·⋯·B for every odd prime B ≤ Bmax.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long = "Bmax")]
        b_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the oracle checks at reduced bounds.
    Selftest,
}

fn emit(out: &mut impl Write, records: &[OutputRecord]) -> anyhow::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Tau { n, modulus, check } => {
            let spec: ModulusSpec = modulus.parse()?;
            emit(
                &mut out,
                &[commands::tau_cmd(&commands::parse_int(&n)?, &spec, check)?],
            )?;
        }
        Command::Targets { n, modulus, limit } => {
            emit(
                &mut out,
                &[commands::targets_cmd(
                    &commands::parse_int(&n)?,
                    modulus,
                    limit,
                )?],
            )?;
        }
        Command::Distances { n, p } => {
            emit(
                &mut out,
                &[commands::distances_cmd(&commands::parse_int(&n)?, p)?],
            )?;
        }
        Command::Hyperbola { n, modulus } => {
            emit(
                &mut out,
                &[commands::hyperbola_cmd(&commands::parse_int(&n)?, modulus)?],
            )?;
        }
        Command::Factor {
            n,
            relaxed_split,
            r,
            k_window,
            batch_gcd,
            batch_size,
            threads,
            candidate_limit,
            baseline,
            baseline_limit,
        } => {
            let opts = FactorOptions {
                config: FactorizationConfig {
                    r_override: r,
                    k_window,
                    batch_gcd,
                    batch_size,
                    candidate_limit: candidate_limit.unwrap_or(u64::MAX),
                    relaxed_split,
                },
                threads,
                baseline,
                baseline_limit,
            };
            let (record, code) = commands::factor_cmd(&commands::parse_natural(&n)?, &opts)?;
            emit(&mut out, &[record])?;
            return Ok(code);
        }
        Command::Density { n, b_max, format } => {
            let n = commands::parse_int(&n)?;
            let rows = commands::density_rows(&n, b_max)?;
            match format {
                Format::Json => emit(&mut out, &commands::density_records(&n, b_max, &rows))?,
                Format::Csv => commands::write_density_csv(&rows, &mut out)?,
            }
        }
        Command::Selftest => {
            let outcomes = selftest::run();
            let all = outcomes.iter().all(|o| o.passed);
            let records: Vec<OutputRecord> = outcomes
                .iter()
                .map(|o| {
                    OutputRecord::new(
                        "selftest",
                        inputs([("check", o.name.into())]),
                        serde_json::json!({
                            "passed": o.passed,
                            "cases": int(o.cases),
                            "detail": o.detail,
                        }),
                    )
                })
                .collect();
            emit(&mut out, &records)?;
            return Ok(if all { 0 } else { 1 });
        }
    }
    out.flush().context("flushing stdout")?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
