mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "cagroup", version, about = "Cellular automata on Z^d and free groups")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact decision procedures for rules on Z.
    Decide {
        /// Rule file, or a builtin: ruleNNN, xor102, majority-f2.
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum)]
        property: Property,
        /// Largest level counted for `balanced`.
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Bounded probes that work on any group.
    Probe(ProbeArgs),
    /// Finite approximations of Cayley graphs.
    #[command(subcommand)]
    Sofic(SoficCommand),
    /// Worked examples with their assertions and plot data.
    Demo {
        #[arg(long)]
        example: String,
        /// Directory for the tab-separated plot-data files.
        #[arg(long)]
        plot_dir: Option<PathBuf>,
    },
    /// Runs the acceptance criteria.
    Suite {
        #[arg(long, required = true)]
        acceptance: bool,
    },
    /// Re-verifies every certificate in a report against a rule.
    Recheck {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Surjective,
    Preinjective,
    Injective,
    Reversible,
    Postsurjective,
    Balanced,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Balanced,
    Erasable,
    Postsurjective,
    Inverse,
    Bijection,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Every uniform configuration.
    Uniform,
    /// Every configuration equal to --witness-state outside D_(--witness-radius).
    Patched,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[arg(long)]
    rule: String,
    #[arg(long, value_enum)]
    check: Check,
    /// Search bound: n_max, m_max, correction radius, preimage search
    /// radius or pattern disk radius, by check.
    #[arg(long, default_value_t = 2)]
    bound: usize,
    #[arg(long, value_enum, default_value_t = Witness::Uniform)]
    witness: Witness,
    #[arg(long, default_value_t = 0)]
    witness_state: u8,
    #[arg(long, default_value_t = 1)]
    witness_radius: usize,
    /// Seed for sampled verification and random pattern pairs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Pattern pairs for `bijection`.
    #[arg(long, default_value_t = 10)]
    pairs: usize,
}

#[derive(Subcommand, Debug)]
pub enum SoficCommand {
    /// The torus (Z/n)^d, optionally saved as a graph file.
    Torus {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        side: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Random permutations for the generators of F_k.
    Permutation {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Checks members' balls and the size bound.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        eps: f64,
        /// Comma-separated vertices; default: every passing vertex.
        #[arg(long)]
        members: Option<String>,
    },
    /// Greedy packing of disjoint balls.
    Pack {
        #[arg(long)]
        group: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        members: Option<String>,
    },
    /// Size of the image of a rule run on a graph.
    Phicount {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        members: Option<String>,
        /// Sample this many configurations instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The counting inequality for given disk sizes.
    Feasibility {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        dr: u64,
        #[arg(long)]
        d2r: u64,
        #[arg(long)]
        eps: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = cagroup::limits::Limits::from_env()
        .map_err(CliError::from)
        .and_then(|limits| commands::run(&cli.command, &limits));
    let (mut report, failure) = match result {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error[E{:02}]: {e}", e.code());
            return ExitCode::from(e.code());
        }
    };
    report.entries.insert(0, ("command".into(), std::env::args().skip(1).collect::<Vec<_>>().join(" ")));
    if cli.timing {
        report.push("timing.ms", start.elapsed().as_millis());
    }
    let text = report.to_text();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let e = CliError::Io(path.display().to_string(), e);
                eprintln!("error[E{:02}]: {e}", e.code());
                return ExitCode::from(e.code());
            }
        }
        None => print!("{text}"),
    }
    match failure {
        Some(message) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
