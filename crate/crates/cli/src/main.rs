//! Command-line front end. Results go to stdout as `key=value` lines (report
//! lines for `verify`, a graph file for `gen`); messages go to stderr.
//!
//! Exit codes: 0 success, 1 verification failure or other error, 2 unreadable
//! or malformed input (including oracle size guards), 3 input has a K5-e
//! minor, 4 input is disconnected.

use bondpoly::decompose::{decompose, render_decomposition, DecomposeError};
use bondpoly::gen::{generate, GenConfig};
use bondpoly::graph::{parse_graph, GraphError};
use bondpoly::lp::verify_ef;
use bondpoly::maxbond::{maxbond, MaxBondError};
use bondpoly::oracle::{enumerate_bonds, OracleError};
use bondpoly::polytope::{bond_ef, render_ef, EfError};
use bondpoly::{Graph, Rational};
use clap::{Parser, Subcommand};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bondpoly", version, about = "Maximum bonds and bond polytope formulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the clique-sum decomposition as an s-expression.
    Decompose { file: PathBuf },
    /// Solve the maximum-weight bond problem.
    Maxbond { file: PathBuf },
    /// Write an extended formulation of the bond polytope.
    BuildEf {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Build the formulation and check it against the brute-force oracle.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a random (K5-e)-minor-free graph built from clique sums.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        pieces: usize,
        #[arg(long = "max-vertices", default_value_t = 14)]
        max_vertices: usize,
    },
    /// List every bond and the optimum by enumeration.
    Oracle { file: PathBuf },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        let code = match e {
            DecomposeError::NotMinorFree(_) => 3,
            DecomposeError::Disconnected => 4,
            DecomposeError::TooSmall | DecomposeError::Graph(_) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Disconnected => 4,
            OracleError::TooLarge { .. } => 2,
            OracleError::Precondition(_) => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<MaxBondError> for Failure {
    fn from(e: MaxBondError) -> Self {
        match e {
            MaxBondError::Decompose(d) => d.into(),
            other => Failure::new(1, other.to_string()),
        }
    }
}

impl From<EfError> for Failure {
    fn from(e: EfError) -> Self {
        match e {
            EfError::Decompose(d) => d.into(),
            EfError::Oracle(o) => o.into(),
            EfError::Disconnected => Failure::new(4, e.to_string()),
            other => Failure::new(1, other.to_string()),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::new(2, e.to_string())
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn list(side: &BTreeSet<usize>) -> String {
    side.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Decompose { file } => {
            let d = decompose(&load(&file)?)?;
            println!("pieces={}", d.leaves().len());
            println!("sexpr={}", render_decomposition(&d));
        }
        Command::Maxbond { file } => {
            let res = maxbond(&load(&file)?)?;
            println!("value={}", res.value);
            println!("side={}", list(&res.bond.side));
        }
        Command::BuildEf { file, out } => {
            let ef = bond_ef(&load(&file)?)?;
            std::fs::write(&out, render_ef(&ef)).map_err(|e| Failure::new(1, format!("{}: {e}", out.display())))?;
            println!("rows={} lifted={}", ef.row_count(), ef.lifted_dim());
            eprintln!("wrote {}", out.display());
        }
        Command::Verify { file, trials, seed } => {
            let g = load(&file)?;
            let ef = bond_ef(&g)?;
            let rep = verify_ef(&g, &ef, trials, seed);
            print!("{rep}");
            if !rep.passed() {
                return Err(Failure::new(1, format!("{} checks failed", rep.failures)));
            }
        }
        Command::Gen { seed, pieces, max_vertices } => {
            if pieces == 0 || max_vertices < 2 {
                return Err(Failure::new(2, "need at least one piece and two vertices"));
            }
            let cfg = GenConfig { pieces, max_vertices, ..GenConfig::default() };
            print!("{}", generate::<Rational>(seed, &cfg).to_file());
        }
        Command::Oracle { file } => {
            let bonds = enumerate_bonds(&load(&file)?)?;
            for b in &bonds {
                println!("bond side={} weight={}", list(&b.side), b.weight);
            }
            println!("bonds={}", bonds.len());
            if let Some(best) = bonds.iter().map(|b| &b.weight).max() {
                println!("optimum={best}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
