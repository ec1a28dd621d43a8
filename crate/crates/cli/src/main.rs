//! Command-line front-end: run the named experiments with deterministic
//! seeding, emit CSV or JSON to stdout or a file, and run the built-in
//! verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use tribit::analysis::{run_experiment, ExperimentName, ExperimentSpec};
use tribit::sampling::SampleConfig;
use tribit::scalar::ScalarKind;
use tribit::verify;

#[derive(Parser)]
#[command(
    name = "tribit",
    version,
    about = "Monte Carlo statistics of entanglement for two-level pairs under real, complex, and quaternionic quantum mechanics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Participation-ratio density of mixed states with separability annotations
    Fig1(KindRequiredArgs),
    /// Entanglement-of-formation density of mixed states with a pure-state overlay
    Fig2(KindRequiredArgs),
    /// Squared-concurrence density of pure states next to the closed-form curve
    Fig3(KindRequiredArgs),
    /// Entanglement surface of pure quaternionic Schmidt pairs
    Fig4(Fig4Args),
    /// Scatter of (R, C^2) for rebit mixtures with the ceiling curve and its extremal trace
    Boundary(BoundaryArgs),
    /// Run the verification suite; one line per criterion
    Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Rebit,
    Qubit,
    Quaterbit,
}

impl KindArg {
    fn scalar_kind(self) -> ScalarKind {
        match self {
            KindArg::Rebit => ScalarKind::Real,
            KindArg::Qubit => ScalarKind::Complex,
            KindArg::Quaterbit => ScalarKind::Quaternion,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Sample count
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Base seed; substreams derive from it per worker
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker substreams (the partition shapes the stream, not the machine)
    #[arg(long, default_value_t = 1)]
    workers: u64,
    /// Histogram bins (default: 60 for fig1, 50 otherwise)
    #[arg(long)]
    bins: Option<usize>,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct KindRequiredArgs {
    /// State kind
    #[arg(long, value_enum)]
    kind: KindArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct Fig4Args {
    /// State kind (the surface is quaternionic)
    #[arg(long, value_enum, default_value = "quaterbit")]
    kind: KindArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BoundaryArgs {
    /// State kind (the ceiling is a real-kind statement)
    #[arg(long, value_enum, default_value = "rebit")]
    kind: KindArg,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            // One-line diagnostic plus usage synopsis on stderr.
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };

    let code = match cli.command {
        Command::Fig1(args) => emit(ExperimentName::Fig1RDist, args.kind, &args.common),
        Command::Fig2(args) => emit(ExperimentName::Fig2EDist, args.kind, &args.common),
        Command::Fig3(args) => emit(ExperimentName::Fig3C2Pure, args.kind, &args.common),
        Command::Fig4(args) => emit(ExperimentName::Fig4QuaterbitSurface, args.kind, &args.common),
        Command::Boundary(args) => emit(ExperimentName::BoundaryScan, args.kind, &args.common),
        Command::Verify => run_verify(),
    };
    ExitCode::from(code)
}

fn usage_error(message: &str) -> u8 {
    use clap::CommandFactory;
    eprintln!("error: {message}");
    eprintln!("{}", Cli::command().render_usage());
    1
}

// A closed stdout (e.g. piping into `head`) is normal termination for a
// table writer, not a crash.
fn write_stdout(content: &str) -> u8 {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    match out.write_all(content.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => 0,
        Err(err) if err.kind() == ErrorKind::BrokenPipe => 0,
        Err(err) => {
            eprintln!("error: cannot write to stdout: {err}");
            1
        }
    }
}

fn subcommand_label(name: ExperimentName) -> &'static str {
    match name {
        ExperimentName::Fig1RDist => "fig1",
        ExperimentName::Fig2EDist => "fig2",
        ExperimentName::Fig3C2Pure => "fig3",
        ExperimentName::Fig4QuaterbitSurface => "fig4",
        ExperimentName::BoundaryScan => "boundary",
    }
}

fn emit(name: ExperimentName, kind: KindArg, common: &CommonArgs) -> u8 {
    if !name.compatible_kinds().contains(&kind.scalar_kind()) {
        return usage_error(&format!(
            "--kind {} is not valid for {}",
            kind.scalar_kind().bit_name(),
            subcommand_label(name)
        ));
    }
    let config = match SampleConfig::new(
        kind.scalar_kind(),
        common.seed,
        common.samples,
        common.workers,
    ) {
        Ok(config) => config,
        Err(err) => return usage_error(&err.to_string()),
    };
    let bins = common.bins.unwrap_or_else(|| name.default_bins());
    let spec = match ExperimentSpec::new(name, config, bins) {
        Ok(spec) => spec,
        Err(err) => return usage_error(&err.to_string()),
    };
    let table = match run_experiment(&spec) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let content = match common.format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => {
            let mut json = table.to_json();
            json.push('\n');
            json
        }
    };
    match &common.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, content) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return 1;
            }
            0
        }
        None => write_stdout(&content),
    }
}

fn run_verify() -> u8 {
    let outcomes = verify::run_all();
    let report: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    let write_code = write_stdout(&report);
    let failures = outcomes.iter().filter(|o| !o.passed).count();
    if failures > 0 {
        eprintln!("{failures} of {} criteria failed", outcomes.len());
        2
    } else {
        write_code
    }
}
