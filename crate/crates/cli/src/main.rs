//! Command-line front end: group ingestion, analysis orchestration, report
//! emission.
//!
//! Exit codes: 0 = verdict produced, 2 = verdict undecided, 3 = input error,
//! 4 = resource limit exceeded.

mod groupfile;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use excq::bounds::{nagura_bound, thomas_bound};
use excq::brieskorn::{construct_inductive, construct_sylvester, BpTuple};
use excq::catalog;
use excq::classify::Trilean;
use excq::dixon::character_table;
use excq::error::Error;
use excq::matgroup::{MatrixGroup, DEFAULT_CLOSURE_LIMIT};
use groupfile::GroupFile;
use num_bigint::BigUint;

#[derive(Parser)]
#[command(
    name = "excq",
    about = "Exact classification of exceptional quotient singularities for finite matrix groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close a group file, analyze it, and print the classification report
    Analyze(AnalyzeArgs),
    /// List or materialize catalog groups
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
    /// Brieskorn-Pham exponent procedures
    Bp {
        #[command(subcommand)]
        sub: BpCmd,
    },
    /// Prime-interval threshold bound calculators
    Bound {
        #[command(subcommand)]
        sub: BoundCmd,
    },
    /// Invariant dimensions by the Molien series
    Molien(SourceArgs),
    /// Irreducible character table
    Chartable(SourceArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// group file (JSON) or catalog:<name>
    source: String,
    /// invariant-dimension table depth; defaults to the dimension
    #[arg(long)]
    max_degree: Option<u64>,
    /// closure element limit
    #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
    limit: usize,
    /// emit the report as JSON (deterministic across runs)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SourceArgs {
    /// group file (JSON) or catalog:<name>
    source: String,
    /// maximum degree for dimension tables
    #[arg(long, default_value_t = 8)]
    max_degree: u64,
    /// closure element limit
    #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
    limit: usize,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List every catalog entry with its declared data
    List,
    /// Build an entry and write it in the group file format
    Build {
        name: String,
        /// output path; stdout when omitted
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum BpCmd {
    /// Check the exceptionality condition for an exponent tuple
    Check { exponents: Vec<String> },
    /// Construct a valid tuple for dimension parameter n
    Construct {
        n: usize,
        /// use the Sylvester-sequence construction
        #[arg(long)]
        sylvester: bool,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Smallest prime in (2n+3, 2(2n+3)) and the bound p-1
    Thomas { n: u64 },
    /// Prime in the Nagura interval and the bound p-1 <= 12(n+1)/5 (n >= 23)
    Nagura { n: u64 },
}

fn load_group(source: &str, limit: usize) -> Result<(Option<String>, MatrixGroup), Error> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let built = catalog::build(name)?;
        let g = built.group()?;
        // materialize an owned copy closed from the same generators
        let g = excq::group::FiniteGroup::close(g.generators(), limit)?;
        return Ok((Some(name.to_string()), g));
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Parse {
        msg: format!("cannot read {source}: {e}"),
        pos: None,
    })?;
    let gf = GroupFile::from_json(&text)?;
    let g = gf.close(limit)?;
    Ok((gf.name.clone(), g))
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e {
        Error::LimitExceeded { .. } => ExitCode::from(4),
        Error::Internal(_) => ExitCode::from(1),
        _ => ExitCode::from(3),
    }
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => {
            let t0 = std::time::Instant::now();
            let (name, g) = load_group(&args.source, args.limit)?;
            let max_degree = args.max_degree.unwrap_or(g.dim() as u64);
            let rep = report::build_report(&args.source, name, &g, max_degree)?;
            if args.json {
                println!("{}", rep.to_json());
            } else {
                report::print_text(&rep, t0.elapsed());
            }
            let undecided = rep.verdict.exceptional == Trilean::Undecided
                || rep.verdict.weakly_exceptional == Trilean::Undecided;
            Ok(if undecided {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Catalog { sub } => match sub {
            CatalogCmd::List => {
                for name in catalog::NAMES {
                    let b = catalog::build(name)?;
                    let d = &b.declared;
                    let kind = match &b.model {
                        catalog::Model::Matrix(_) => "matrix",
                        catalog::Model::Fixture(_) => "fixture",
                        catalog::Model::DeclaredOnly => "declared",
                    };
                    println!(
                        "{:<16} dim {}  {:<8} order {:<7} exceptional: {}",
                        b.name,
                        d.dim,
                        kind,
                        d.order.map(|o| o.to_string()).unwrap_or_else(|| "?".into()),
                        match d.exceptional {
                            Some(true) => "yes",
                            Some(false) => "no",
                            None => "-",
                        }
                    );
                }
                Ok(ExitCode::SUCCESS)
            }
            CatalogCmd::Build { name, output } => {
                let built = catalog::build(&name)?;
                let g = built.group()?;
                let gf = GroupFile::from_group(Some(built.name.to_string()), &g);
                let json = gf.to_json();
                match output {
                    Some(path) => std::fs::write(&path, json).map_err(|e| Error::Parse {
                        msg: format!("cannot write {path}: {e}"),
                        pos: None,
                    })?,
                    None => println!("{json}"),
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Bp { sub } => match sub {
            BpCmd::Check { exponents } => {
                let exps: Result<Vec<BigUint>, Error> = exponents
                    .iter()
                    .map(|s| {
                        s.parse::<BigUint>().map_err(|_| Error::Parse {
                            msg: format!("invalid exponent {s:?}"),
                            pos: None,
                        })
                    })
                    .collect();
                let t = BpTuple::new(exps?)?;
                let cert = t.is_exceptional();
                let out = serde_json::json!({
                    "exponents": t.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "pairwise_coprime": cert.pairwise_coprime,
                    "reciprocal_sum": cert.reciprocal_sum.to_string(),
                    "above_one": cert.above_one,
                    "below_one_plus_min": cert.below_one_plus_min,
                    "restricted_check": t.restricted_check(),
                    "exceptional": cert.exceptional,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
                Ok(ExitCode::SUCCESS)
            }
            BpCmd::Construct { n, sylvester } => {
                let t = if sylvester {
                    construct_sylvester(n)?
                } else {
                    construct_inductive(n)?
                };
                let cert = t.is_exceptional();
                let out = serde_json::json!({
                    "n": n,
                    "construction": if sylvester { "sylvester" } else { "inductive" },
                    "exponents": t.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "reciprocal_sum": cert.reciprocal_sum.to_string(),
                    "exceptional": cert.exceptional,
                    "restricted_check": t.restricted_check(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Bound { sub } => match sub {
            BoundCmd::Thomas { n } => {
                let (p, bound) = thomas_bound(n)?;
                println!("n = {n}: prime {p} in (2n+3, 2(2n+3)), lct bound {bound}");
                Ok(ExitCode::SUCCESS)
            }
            BoundCmd::Nagura { n } => {
                let (p, bound) = nagura_bound(n)?;
                println!(
                    "n = {n}: prime {p} in the Nagura interval, lct bound {bound} <= 12(n+1)/5"
                );
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Molien(args) => {
            let (_, g) = load_group(&args.source, args.limit)?;
            let dims = excq::chars::molien_dimensions(&g, args.max_degree)?;
            for (d, v) in dims.iter().enumerate() {
                println!("degree {d}: {v}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chartable(args) => {
            let (_, g) = load_group(&args.source, args.limit)?;
            let table = character_table(&g)?;
            let cls = g.classes();
            println!("classes: {}", cls.reps.len());
            print!("sizes:  ");
            for s in &cls.sizes {
                print!(" {s:>8}");
            }
            println!();
            print!("orders: ");
            for o in &cls.rep_orders {
                print!(" {o:>8}");
            }
            println!();
            for (row, deg) in table.rows.iter().zip(table.degrees.iter()) {
                print!("chi_{deg:<3}");
                for v in row {
                    print!(" {:>8}", v.to_string());
                }
                println!();
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
