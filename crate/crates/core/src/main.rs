use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bernvand::experiments::{run_and_write, solve_command, Experiment, ExperimentConfig, NodeSpec};
use bernvand::vandermonde::SolveMethod;
use bernvand::Error;

#[derive(Parser, Debug)]
#[command(
    name = "bernvand",
    version,
    about = "Bernstein-Vandermonde solvers and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Largest degree in the sweep.
    #[arg(long = "nmax", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random draws averaged per degree.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// M-to-2 condition number, its upper bound and the 2-norm condition number.
    Conditioning(Common),
    /// Solver accuracy at equispaced nodes.
    Equispaced(Common),
    /// Solver accuracy at stratified random nodes.
    Random(Common),
    /// Block LU solver accuracy on the triangle and tetrahedron.
    Blocklu(Common),
    /// Solve one interpolation system and print the Bernstein coefficients.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = ["lu", "bezout", "dft", "dft-eq"])]
        method: String,
        /// `equispaced`, `stratified`, or a file of n+1 nodes.
        #[arg(long)]
        nodes: String,
        /// File of n+1 right-hand side values.
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code(err: &Error) -> ExitCode {
    match err {
        Error::Singular { .. } | Error::SpectralCheck { .. } | Error::Size { .. } | Error::Io { .. } => {
            ExitCode::from(1)
        }
        _ => ExitCode::from(2),
    }
}

fn run(command: Command) -> Result<(), Error> {
    let (experiment, common) = match command {
        Command::Solve {
            n,
            method,
            nodes,
            rhs,
            seed,
        } => {
            let method: SolveMethod = method.parse()?;
            let out = solve_command(n, method, &NodeSpec::parse(&nodes, seed), &rhs)?;
            print!("{out}");
            return Ok(());
        }
        Command::Conditioning(c) => (Experiment::Conditioning, c),
        Command::Equispaced(c) => (Experiment::Equispaced, c),
        Command::Random(c) => (Experiment::RandomNodes, c),
        Command::Blocklu(c) => (Experiment::BlockLu, c),
    };
    let cfg = ExperimentConfig {
        experiment,
        n_max: common.n_max as usize,
        seed: common.seed,
        trials: common.trials as usize,
        output_path: common.out.clone(),
    };
    let csv = run_and_write(&cfg)?;
    if common.out.is_none() {
        print!("{csv}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
