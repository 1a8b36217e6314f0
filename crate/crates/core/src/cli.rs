//! The `bobrvass` command line. Exit codes: 0 for a positive answer, 1 for a
//! negative one, 2 for usage, parse and validation errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::gadgets::{self, GadgetError, GadgetHandle};
use crate::io::{self, DocError, ParseError};
use crate::model::{validate_run_tree, Natural, System};
use crate::reductions::{self, Player, ReductionError};
use crate::solver::{ComputeCounterexample, SolveError, Solver};

/// Environment variable capping the number of configurations a solver may
/// index. Unset means unlimited.
pub const MAX_CONFIGS_VAR: &str = "BOBRVASS_MAX_CONFIGS";

#[derive(Parser, Debug)]
#[command(name = "bobrvass", version, about = "Reachability for bounded and branching VASS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a system document
    Check { file: PathBuf },
    /// Decide whether one configuration reaches another
    Reach {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Write a witness run tree here when reachable
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Decide whether a configuration has a full run
    Accepts {
        file: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check that a system computes the function in a table
    Computes {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        max: Natural,
    },
    /// Build a gadget or apply a gadget pass
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Remove doubling or halving from a 1-dimensional system
    Compile {
        pass: Pass,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Countdown games
    #[command(subcommand)]
    Game(GameCommand),
    /// Reductions between models
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Validate a witness document against a system
    VerifyRun { system: PathBuf, witness: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// 2-dimensional copy gadget
    Copy2 {
        #[arg(long = "M", alias = "m")]
        m: Natural,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// x + Mx gadget (M a power of two)
    Xmx {
        #[arg(long = "M", alias = "m")]
        m: Natural,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Branching copy gadget (M a power of two)
    BranchCopy {
        #[arg(long = "M", alias = "m")]
        m: Natural,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Replace test transitions by plain updates
    Desugar {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Move to a larger bound, keeping the old one with tests
    RaiseBound {
        file: PathBuf,
        #[arg(long)]
        bound: Natural,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pass {
    #[value(name = "to-2d")]
    To2d,
    DoublingOnly,
    HalvingOnly,
}

#[derive(Subcommand, Debug)]
enum GameCommand {
    /// Print the winner of a game
    Solve { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Countdown game to a 1-dimensional branching system
    Countdown {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Bounded 1-dimensional branching system to an unbounded 2-dimensional one
    #[command(name = "to-2brvass")]
    To2brvass {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Give the output this bound instead of none
        #[arg(long)]
        aux_bound: Option<Natural>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Doc { path: PathBuf, source: DocError },
    #[error("{0}")]
    Literal(#[from] ParseError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("{MAX_CONFIGS_VAR} must be a positive integer, found `{0}`")]
    Limit(String),
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn load_system(path: &Path) -> Result<System, CliError> {
    io::parse_system(&read(path)?).map_err(|source| CliError::Doc {
        path: path.to_path_buf(),
        source,
    })
}

fn limit() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_CONFIGS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Limit(v)),
        },
    }
}

fn solver(sys: &System) -> Result<Solver<'_>, CliError> {
    Ok(Solver::with_limit(sys, limit()?)?)
}

fn answer(positive: bool) -> i32 {
    if positive {
        0
    } else {
        1
    }
}

fn write_gadget(g: &GadgetHandle, output: &Path) -> Result<i32, CliError> {
    write(output, &io::serialize_system(&g.system))?;
    println!(
        "entry {}, exits {}, bound {}",
        g.entry,
        g.exits.join(" "),
        g.declared_bound
    );
    Ok(0)
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Check { file } => {
            let text = read(&file)?;
            let sys = io::parse_system_unchecked(&text).map_err(|e| CliError::Doc {
                path: file.clone(),
                source: e.into(),
            })?;
            let report = crate::model::validate_system(&sys);
            if !report.is_ok() {
                return Err(CliError::Doc {
                    path: file,
                    source: io::DocError::Invalid(report),
                });
            }
            println!("{report}");
            Ok(0)
        }
        Command::Reach { file, from, to, witness } => {
            let sys = load_system(&file)?;
            let src = io::parse_configuration(&from, sys.dimension)?;
            let dst = io::parse_configuration(&to, sys.dimension)?;
            let ans = solver(&sys)?.reach_context(&src, &dst)?;
            println!("{}", if ans.reachable { "reachable" } else { "unreachable" });
            if let (Some(path), Some(tree)) = (witness, &ans.witness) {
                write(&path, &io::serialize_witness(tree))?;
            }
            Ok(answer(ans.reachable))
        }
        Command::Accepts { file, root, witness } => {
            let sys = load_system(&file)?;
            let root = io::parse_configuration(&root, sys.dimension)?;
            let run = solver(&sys)?.full_run(&root)?;
            println!("{}", if run.is_some() { "accepts" } else { "rejects" });
            if let (Some(path), Some(tree)) = (witness, &run) {
                write(&path, &io::serialize_witness(tree))?;
            }
            Ok(answer(run.is_some()))
        }
        Command::Computes {
            file,
            from,
            to,
            table,
            max,
        } => {
            let sys = load_system(&file)?;
            let table = io::parse_table(&read(&table)?, sys.dimension, max)?;
            let report = solver(&sys)?.check_computes(&from, &to, &table)?;
            let show = |v: &[Natural]| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                parts.join(",")
            };
            match &report.counterexample {
                None => println!("computes the table on {} points", report.points),
                Some(ComputeCounterexample::Missing { input, expected }) => {
                    println!("counterexample: {from}({}) does not reach {to}({})", show(input), show(expected))
                }
                Some(ComputeCounterexample::Spurious { input, output, .. }) => {
                    println!("counterexample: {from}({}) reaches {to}({})", show(input), show(output))
                }
            }
            Ok(answer(report.passed()))
        }
        Command::Gadget(g) => match g {
            GadgetCommand::Copy2 { m, output } => write_gadget(&gadgets::gadget_copy2(m), &output),
            GadgetCommand::Xmx { m, output } => write_gadget(&gadgets::gadget_xmx(m)?, &output),
            GadgetCommand::BranchCopy { m, output } => write_gadget(&gadgets::gadget_branch_copy(m)?, &output),
            GadgetCommand::Desugar { file, output } => {
                let sys = gadgets::desugar_tests(&load_system(&file)?)?;
                write(&output, &io::serialize_system(&sys))?;
                Ok(0)
            }
            GadgetCommand::RaiseBound { file, bound, output } => {
                let sys = gadgets::raise_bound(&load_system(&file)?, bound)?;
                write(&output, &io::serialize_system(&sys))?;
                Ok(0)
            }
        },
        Command::Compile { pass, file, output } => {
            let sys = load_system(&file)?;
            let out = match pass {
                Pass::To2d => gadgets::compile_to_2d(&sys)?,
                Pass::DoublingOnly => gadgets::compile_doubling_only(&sys)?,
                Pass::HalvingOnly => gadgets::compile_halving_only(&sys)?,
            };
            write(&output, &io::serialize_system(&out))?;
            Ok(0)
        }
        Command::Game(GameCommand::Solve { file }) => {
            let (game, start) = io::parse_game(&read(&file)?).map_err(|source| CliError::Doc { path: file, source })?;
            let solution = reductions::solve_countdown(&game, &start)?;
            println!("{}", solution.winner);
            Ok(answer(solution.winner == Player::Exists))
        }
        Command::Reduce(ReduceCommand::Countdown { file, output }) => {
            let (game, start) = io::parse_game(&read(&file)?).map_err(|source| CliError::Doc { path: file, source })?;
            let (game, start) = reductions::normalize_game(&game, &start)?;
            let red = reductions::reduce_countdown(&game, &start)?;
            write(&output, &io::serialize_system(&red.system))?;
            println!("{}", red.root);
            Ok(0)
        }
        Command::Reduce(ReduceCommand::To2brvass { file, output, aux_bound }) => {
            let red = reductions::reduce_to_2brvass(&load_system(&file)?)?;
            let sys = red.system.with_bound(aux_bound.or(red.system.bound));
            write(&output, &io::serialize_system(&sys))?;
            println!("initial {}", sys.initial.as_deref().unwrap_or(""));
            Ok(0)
        }
        Command::VerifyRun { system, witness } => {
            let sys = load_system(&system)?;
            let tree = io::parse_witness(&read(&witness)?, &sys).map_err(|source| CliError::Doc { path: witness, source })?;
            let report = validate_run_tree(&sys, &tree);
            println!("{report}");
            Ok(answer(report.is_ok()))
        }
    }
}
