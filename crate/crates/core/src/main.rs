use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use imac_ia::harness::{self, Scheme, SweepSpec};
use imac_ia::{selftest, Error, SystemConfig};

#[derive(Parser)]
#[command(
    name = "imac-ia",
    version,
    about = "Limited-feedback interference alignment simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sum-rate sweep over SNR for the selected schemes.
    Simulate(SimulateArgs),
    /// Wishart loss bound and the resulting sum-rate lower bound.
    Bound(CommonArgs),
    /// Run the built-in invariant checks.
    Selftest,
}

#[derive(Args)]
struct CommonArgs {
    /// Antennas per user.
    #[arg(long)]
    nt: usize,
    /// Antennas per base station.
    #[arg(long)]
    nr: usize,
    /// Users per cell.
    #[arg(long)]
    k: usize,
    /// Feedback bits per user.
    #[arg(long)]
    b: u32,
    /// Comma-separated SNR points in dB.
    #[arg(
        long = "snr-db",
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    snr_db: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path, `-` for stdout.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated list of proposed, baseline-chordal, perfect-feedback, lower-bound.
    #[arg(long, value_delimiter = ',', default_value = "proposed")]
    schemes: Vec<String>,
    /// Cap on the total joint-search flop estimate.
    #[arg(long = "flop-cap")]
    flop_cap: Option<u64>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig(_) | Error::IndexOutOfRange { .. } => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::DegenerateRun { .. } => 4,
        _ => 1,
    }
}

fn build_spec(common: &CommonArgs, schemes: Vec<Scheme>) -> Result<SweepSpec, Error> {
    let cfg = SystemConfig::new(common.nt, common.nr, common.k, common.b)?;
    let spec = SweepSpec::new(
        cfg,
        common.snr_db.clone(),
        common.trials,
        common.seed,
        schemes,
    );
    spec.validate()?;
    Ok(spec)
}

fn write_output(path: &PathBuf, records: &[harness::SweepRecord]) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        let stdout = std::io::stdout();
        harness::write_csv(records, stdout.lock())
    } else {
        let mut w = BufWriter::new(File::create(path)?);
        harness::write_csv(records, &mut w)?;
        w.flush()
    }
}

fn run_sweep_cmd(common: &CommonArgs, spec: &SweepSpec, bound: bool) -> Result<(), (u8, String)> {
    for w in spec.warnings() {
        eprintln!("warning: {w}");
    }
    let started = Instant::now();
    let run = || {
        if bound {
            harness::bound_curves(spec)
        } else {
            harness::run_sweep(spec)
        }
    };
    let records = match common.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| (1, e.to_string()))?
            .install(run),
        None => run(),
    }
    .map_err(|e| (exit_code(&e), e.to_string()))?;
    write_output(&common.out, &records)
        .map_err(|e| (1, format!("writing {}: {e}", common.out.display())))?;
    let redraws = records.first().map(|r| r.redraws).unwrap_or(0);
    eprintln!(
        "{} records, {} trials, {} redraws, {:.1}s",
        records.len(),
        spec.trials,
        redraws,
        started.elapsed().as_secs_f64()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.command {
        Command::Simulate(args) => {
            let schemes = args
                .schemes
                .iter()
                .map(|s| s.parse::<Scheme>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| (2, e.to_string()))?;
            let mut spec =
                build_spec(&args.common, schemes).map_err(|e| (exit_code(&e), e.to_string()))?;
            if let Some(cap) = args.flop_cap {
                spec.flop_cap = cap;
            }
            run_sweep_cmd(&args.common, &spec, false)
        }
        Command::Bound(common) => {
            let spec = build_spec(&common, vec![Scheme::PerfectFeedback, Scheme::LowerBound])
                .map_err(|e| (exit_code(&e), e.to_string()))?;
            run_sweep_cmd(&common, &spec, true)
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let mut failed = 0;
            for r in &results {
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                if !r.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                Err((1, format!("{failed} of {} checks failed", results.len())))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
