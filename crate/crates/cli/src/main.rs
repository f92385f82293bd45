use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmod_core::engine::{run_suite, Report, RunConfig};
use dmod_core::linalg::ScalarDomain;
use dmod_core::poly_model::{kernel_slice, PolyFragment};
use dmod_core::rel_model::{Mutation, StructureMap};
use dmod_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Exact verification of differential modalities on finite fragments.
#[derive(Parser, Debug)]
#[command(name = "dmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full identity suite on a model fragment.
    Check(CheckArgs),
    /// Print the monomials of the degree-bounded slice of the kernel of the
    /// (r+1)-st derivative.
    Basis(BasisArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    Rel,
    Poly,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    model: Model,
    /// Base-set size (rel) or number of variables (poly).
    #[arg(long = "size", visible_alias = "vars", value_name = "N")]
    size: Option<u32>,
    /// Field characteristic for poly: 0 or a prime.
    #[arg(long = "char", value_name = "C", default_value_t = 0)]
    characteristic: u64,
    /// Degree bound D of the fragment.
    #[arg(long, value_name = "D")]
    max_degree: Option<usize>,
    /// Largest grade index instantiated.
    #[arg(long, value_name = "K", default_value_t = 2)]
    max_n: usize,
    /// Write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Flip one stored entry of m, delta or d before checking (rel only),
    /// given as MAP:ROW:COL.
    #[arg(long, value_name = "MAP:ROW:COL", hide = true, value_parser = parse_mutation)]
    mutate: Option<Mutation>,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long, value_name = "V", default_value_t = 1)]
    vars: u32,
    #[arg(long = "char", value_name = "C", default_value_t = 0)]
    characteristic: u64,
    /// Derivative order: the slice is the kernel of the (r+1)-st derivative.
    #[arg(long, value_name = "R")]
    r: usize,
    #[arg(long, value_name = "D")]
    max_degree: usize,
    /// Write the exponent vectors as a JSON array to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [map, row, col] = parts.as_slice() else {
        return Err("expected MAP:ROW:COL".into());
    };
    let map = match *map {
        "m" => StructureMap::M,
        "u" => StructureMap::U,
        "delta" => StructureMap::Delta,
        "eps" => StructureMap::Eps,
        "d" => StructureMap::D,
        other => return Err(format!("unknown structure map {other}")),
    };
    let row = row.parse().map_err(|e| format!("bad row: {e}"))?;
    let col = col.parse().map_err(|e| format!("bad column: {e}"))?;
    Ok(Mutation { map, row, col })
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn print_report(report: &Report) {
    for c in &report.checks {
        println!("{c}");
        if let Some(cx) = &c.counterexample {
            print!("    at {} -> {}: lhs={} rhs={}", cx.domain, cx.codomain, cx.lhs, cx.rhs);
            match &cx.note {
                Some(note) => println!(" ({note})"),
                None => println!(),
            }
        }
    }
    let failed = report.failures().count();
    println!("{}: {} checks, {} failed", report.status, report.checks.len(), failed);
}

fn error_code(err: &Error) -> u8 {
    match err {
        Error::Usage(_) | Error::UnsupportedDomain(_) | Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let mut config = match args.model {
        Model::Rel => RunConfig::rel(args.size.unwrap_or(2), args.max_degree.unwrap_or(3), args.max_n),
        Model::Poly => {
            RunConfig::poly(args.size.unwrap_or(1), args.characteristic, args.max_degree.unwrap_or(8), args.max_n)
        }
    };
    config.mutation = args.mutate;
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    print_report(&report);
    if let Some(path) = &args.json {
        if let Err(e) = write_json(path, &report) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_basis(args: BasisArgs) -> ExitCode {
    let field = match ScalarDomain::field_of_characteristic(args.characteristic) {
        Ok(f) => f,
        Err(_) => {
            eprintln!("error: characteristic {} is neither 0 nor prime", args.characteristic);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let slice = PolyFragment::new(args.vars, field, args.max_degree).and_then(|frag| kernel_slice(&frag, args.r));
    let monomials = match slice {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let words: Vec<String> = monomials.iter().map(|m| m.render(args.vars)).collect();
    println!("{}", words.join(" "));
    if let Some(path) = &args.json {
        let vectors: Vec<Vec<usize>> = monomials.iter().map(|m| m.exponents(args.vars)).collect();
        if let Err(e) = write_json(path, &vectors) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Basis(args) => cmd_basis(args),
    }
}
