//! Command line front end: enumeration, complex assembly, polytope queries,
//! symmetric subcomplexes, DOT export.
//!
//! Output is deterministic for identical arguments: objects serialize with
//! sorted keys and rationals as "p/q" in lowest terms. Module errors exit
//! with status 1 and a single-line diagnostic; usage errors exit with 2.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Signed;
use serde_json::Value;

use ribbon_moduli::enumeration::{collapse_poset, EnumOptions};
use ribbon_moduli::moduli::assemble_complex;
use ribbon_moduli::polytope::{nestohedron, permutohedron};
use ribbon_moduli::real::{symmetric_subcomplex, BorderedType};
use ribbon_moduli::ribbon::TopologicalType;
use ribbon_moduli::{json, parse_rat, Rat};

#[derive(Parser)]
#[command(name = "ribbon-moduli", version, about = "Exact combinatorics of metric ribbon graphs")]
struct Cli {
    /// Worker threads for enumeration (output is identical for any count)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the labeled graph classes of a surface type with collapse arrows
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        cycles: usize,
        /// Half-edge search budget
        #[arg(long)]
        max_half_edges: Option<usize>,
        /// Write JSON to this file instead of stdout
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Moduli cell complexes
    Complex {
        #[command(subcommand)]
        command: ComplexCommand,
    },
    /// Exact polytopes
    Polytope {
        #[command(subcommand)]
        command: PolytopeCommand,
    },
    /// Fixed cells of the boundary-reversing symmetry of a bordered type
    Symmetric {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        boundaries: usize,
        /// Interior marked points
        #[arg(long)]
        interior: usize,
        /// Marked points on the boundary
        #[arg(long)]
        boundary_marks: usize,
        /// Use the compactified complex of the double
        #[arg(long)]
        compact: bool,
        /// Truncation depth scale, a positive rational "p/q"
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Convert a graph JSON file to DOT (stdin when no file is given)
    ExportDot {
        input: Option<PathBuf>,
        /// Write DOT to this file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Assemble the open or compactified complex of a surface type
    Build {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        cycles: usize,
        /// Truncate cells and include attachment identifications
        #[arg(long)]
        compact: bool,
        /// Truncation depth scale, a positive rational "p/q"
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        max_half_edges: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PolytopeCommand {
    /// Permutohedron on n elements, realized by truncating the simplex
    Permutohedron {
        #[arg(long)]
        n: usize,
        /// Truncation depth scale, a positive rational "p/q"
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Truncate the simplex on {1..s} along a building set
    Nestohedron {
        #[arg(long)]
        s: usize,
        /// Sets to blow up: elements comma-separated, sets semicolon-separated
        #[arg(long)]
        cuts: String,
        /// Truncation depth scale, a positive rational "p/q"
        #[arg(long)]
        alpha: Option<String>,
    },
}

enum CliError {
    Usage(String),
    Module(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Module(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_alpha(s: Option<&str>) -> Result<Option<Rat>, CliError> {
    let Some(s) = s else { return Ok(None) };
    match parse_rat(s) {
        Some(a) if a.is_positive() => Ok(Some(a)),
        _ => Err(usage(format!("alpha must be a positive rational \"p/q\", got {s:?}"))),
    }
}

/// The half-edge budget: an explicit flag wins, then RIBBON_MODULI_BUDGET,
/// then the library default.
fn budget(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("RIBBON_MODULI_BUDGET") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(b) if b > 0 => Ok(Some(b)),
            _ => Err(usage(format!("RIBBON_MODULI_BUDGET must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn options(threads: usize, flag: Option<usize>) -> Result<EnumOptions, CliError> {
    if threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    Ok(EnumOptions { max_half_edges: budget(flag)?, threads })
}

fn parse_cuts(text: &str, s: usize) -> Result<Vec<BTreeSet<usize>>, CliError> {
    let mut cuts = Vec::new();
    for part in text.split(';') {
        let mut set = BTreeSet::new();
        for item in part.split(',') {
            let i: usize = item
                .trim()
                .parse()
                .map_err(|_| usage(format!("cut element {:?} is not an integer", item.trim())))?;
            if i < 1 || i > s {
                return Err(usage(format!("cut element {i} is outside 1..={s}")));
            }
            set.insert(i - 1);
        }
        cuts.push(set);
    }
    Ok(cuts)
}

fn emit_json(value: &Value, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    emit_text(&text, path)
}

fn emit_text(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Module(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate { genus, cycles, max_half_edges, json: out } => {
            let opts = options(cli.threads, max_half_edges)?;
            let poset = collapse_poset(TopologicalType::new(genus, cycles), &opts)?;
            emit_json(&json::catalog_to_json(&poset), out.as_ref())
        }
        Command::Complex { command } => match command {
            ComplexCommand::Build { genus, cycles, compact, alpha, max_half_edges, json: out } => {
                let opts = options(cli.threads, max_half_edges)?;
                let alpha = parse_alpha(alpha.as_deref())?;
                let complex =
                    assemble_complex(TopologicalType::new(genus, cycles), compact, alpha, &opts)?;
                emit_json(&json::complex_to_json(&complex), out.as_ref())
            }
        },
        Command::Polytope { command } => match command {
            PolytopeCommand::Permutohedron { n, alpha } => {
                let p = permutohedron(n, parse_alpha(alpha.as_deref())?)?;
                emit_json(&json::polytope_to_json(&p), None)
            }
            PolytopeCommand::Nestohedron { s, cuts, alpha } => {
                let cuts = parse_cuts(&cuts, s)?;
                let p = nestohedron(s, &cuts, parse_alpha(alpha.as_deref())?)?;
                emit_json(&json::polytope_to_json(&p), None)
            }
        },
        Command::Symmetric {
            genus,
            boundaries,
            interior,
            boundary_marks,
            compact,
            alpha,
            json: out,
        } => {
            if boundaries == 0 {
                return Err(usage("--boundaries must be at least 1"));
            }
            let opts = options(cli.threads, None)?;
            let alpha = parse_alpha(alpha.as_deref())?;
            let bordered = BorderedType {
                genus,
                boundary_components: boundaries,
                interior_points: interior,
                boundary_points: boundary_marks,
            };
            let s = symmetric_subcomplex(bordered, compact, alpha, &opts)?;
            emit_json(&json::symmetric_to_json(&s), out.as_ref())
        }
        Command::ExportDot { input, output } => {
            let text = match &input {
                Some(p) => std::fs::read_to_string(p)
                    .map_err(|e| CliError::Module(format!("cannot read {}: {e}", p.display())))?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| CliError::Module(format!("cannot read stdin: {e}")))?;
                    buf
                }
            };
            let graph = json::graph_from_str(&text)?;
            emit_text(&json::graph_to_dot(&graph), output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Module(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
