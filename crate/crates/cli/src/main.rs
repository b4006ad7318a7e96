use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use contextuality_cli::scenario::Mode;
use contextuality_cli::{load, run_report, RunOptions, Section};

#[derive(Parser)]
#[command(name = "contextuality", version, about = "Cohomological contextuality witnesses for Weyl-operator scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a scenario file.
    Validate(Common),
    /// Edges, faces and volumes of the chain complex.
    Complex(Common),
    /// [β] and [β_χ] with certificates.
    Cohomology(Common),
    /// Compatible assignment sets and Hamming distances.
    Assignments(Common),
    /// Witness probabilities, thresholds and verdicts.
    Witness(Common),
    /// Noncontextual fraction by exact LP.
    Fraction(Common),
    /// Symmetry verification and the group class.
    Symmetry(Common),
    /// Classical memory and operation bounds.
    ClassicalCost(Common),
    /// Everything.
    Report(Common),
}

#[derive(Args)]
struct Common {
    scenario: PathBuf,
    /// Exact rational arithmetic (default unless the scenario says otherwise).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Double-precision arithmetic.
    #[arg(long)]
    float: bool,
    /// Node cap for the kernel searches.
    #[arg(long)]
    cap_kernel: Option<u64>,
    /// Cap on the number of global assignments in the LP.
    #[arg(long)]
    cap_assignments: Option<u128>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, sections): (&Common, Vec<Section>) = match &cli.command {
        Command::Validate(c) => (c, vec![Section::Validate]),
        Command::Complex(c) => (c, vec![Section::Complex]),
        Command::Cohomology(c) => (c, vec![Section::Cohomology]),
        Command::Assignments(c) => (c, vec![Section::Assignments]),
        Command::Witness(c) => (c, vec![Section::Witness]),
        Command::Fraction(c) => (c, vec![Section::Fraction]),
        Command::Symmetry(c) => (c, vec![Section::Symmetry]),
        Command::ClassicalCost(c) => (c, vec![Section::ClassicalCost]),
        Command::Report(c) => (c, Section::ALL.to_vec()),
    };
    let scenario = match load(&common.scenario) {
        Ok(s) => s,
        Err(violations) => {
            for v in violations {
                eprintln!("{}: {v}", common.scenario.display());
            }
            return ExitCode::from(2);
        }
    };
    let mut opts = RunOptions::from_scenario(&scenario);
    if common.exact {
        opts.mode = Mode::Exact;
    }
    if common.float {
        opts.mode = Mode::Float;
    }
    if let Some(cap) = common.cap_kernel {
        opts.limits.node_cap = cap;
        opts.limits.exhaustive_cap = opts.limits.exhaustive_cap.min(cap);
    }
    if let Some(cap) = common.cap_assignments {
        opts.cap_assignments = cap;
    }
    let report = run_report(&scenario, &sections, &opts);
    let json = report.to_pretty();
    match &common.output {
        Some(path) => {
            for line in &report.summary {
                println!("{line}");
            }
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{json}"),
    }
    for p in &report.problems {
        eprintln!("{}: {}", p.module, p.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
