use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use amalgams::interface::{run, Command, JobSpec};
use amalgams::Budgets;

/// Classify simplicial amalgams of finite groups up to isomorphism.
#[derive(Parser, Debug)]
#[command(name = "amalgams", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Amalgam file (JSON); repeat for commands taking two amalgams
    #[arg(short, long = "input", global = true)]
    input: Vec<PathBuf>,

    /// Emit a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,

    /// Largest group materialized from permutation generators
    #[arg(long, global = true, default_value_t = Budgets::DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Node budget for each automorphism or isomorphism search
    #[arg(long, global = true, default_value_t = Budgets::DEFAULT_AUT_NODES)]
    aut_budget: u64,

    /// Most cocycles enumerated (also caps the amalgams listed by the oracle)
    #[arg(long, global = true, default_value_t = Budgets::DEFAULT_COCYCLES)]
    cocycle_budget: usize,

    /// Most generator moves in one orbit computation
    #[arg(long, global = true, default_value_t = Budgets::DEFAULT_ORBIT_MOVES)]
    orbit_budget: u64,

    /// Worker threads (0: one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Seed for the randomized cochain identity checks of `h1`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Parse and validate an amalgam file
    Validate,
    /// Coefficient system: |A_σ| and the maps α
    Coeffs,
    /// H⁰ of the coefficient system
    H0,
    /// H¹ classes with representative cocycles
    H1,
    /// H¹ classes with representative amalgams
    Classify,
    /// Normalize the first amalgam against the second
    Normalize,
    /// Decide whether two amalgams of one type are isomorphic
    IsoCheck,
    /// Double cosets of the vertex images in A₁₂ (single edge only)
    Goldschmidt,
    /// Brute-force isomorphism classes of all amalgams of the type
    Oracle,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Coeffs => Command::Coeffs,
            Cmd::H0 => Command::H0,
            Cmd::H1 => Command::H1,
            Cmd::Classify => Command::Classify,
            Cmd::Normalize => Command::Normalize,
            Cmd::IsoCheck => Command::IsoCheck,
            Cmd::Goldschmidt => Command::Goldschmidt,
            Cmd::Oracle => Command::Oracle,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let job = JobSpec {
        command: cli.command.into(),
        inputs: cli.input,
        budgets: Budgets {
            max_order: cli.max_order,
            aut_nodes: cli.aut_budget,
            cocycles: cli.cocycle_budget,
            orbit_moves: cli.orbit_budget,
        },
        workers: cli.workers,
        json: cli.json,
        seed: cli.seed,
    };
    let out = run(&job);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.status as u8)
}
