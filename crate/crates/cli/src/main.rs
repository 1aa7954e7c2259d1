//! `massforge`: masses of orders from JSON problem files.
//!
//! Exit codes: 0 success, 1 formula and enumeration disagree, 2 malformed
//! input, 3 mathematical domain errors (non-definite algebra, unsupported
//! characteristic, search bounds).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use massforge::par::{self, Strategy};
use massforge::problem::Problem;
use massforge::table::{self, TableOptions};
use massforge::Error;

#[derive(Parser)]
#[command(name = "massforge", version, about = "Exact masses of orders in definite division algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mass report for the order in a problem file.
    Mass {
        /// Problem file; stdin when omitted or `-`.
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Local invariants of the order at one place.
    Local {
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Place label such as `2` or `t^2+1`.
        #[arg(short, long)]
        place: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare the mass formula with ideal class enumeration.
    Verify {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(long)]
        neighbor_prime: Option<u64>,
        /// Also enumerate types and compare type masses.
        #[arg(long)]
        types: bool,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Masses over a parameter family.
    Table {
        #[arg(long)]
        family: String,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: String,
        /// Output path; `.json` selects JSON, anything else TSV. Stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Ramified prime for the Eichler family.
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Degree for the function-field family.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long)]
        sequential: bool,
    },
    /// A maximal order containing the given order.
    Maximalize {
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(path: &Option<PathBuf>) -> Result<Problem, Failure> {
    Ok(Problem::from_json_str(&read_input(path)?)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn strategy(sequential: bool) -> Strategy {
    if sequential {
        Strategy::Sequential
    } else {
        Strategy::default_for_build()
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Mass { input, json } => {
            let p = load(&input)?;
            let r = p.report()?;
            if json || p.options.format.as_deref() == Some("json") {
                println!("{}", to_json(&r));
            } else {
                print!("{}", r.to_text());
            }
        }
        Cmd::Local { input, place, json } => {
            let l = load(&input)?.local(&place)?;
            if json {
                println!("{}", to_json(&l));
            } else {
                let pr = &l.profile;
                println!("place            {}", pr.place);
                println!("q                {}", pr.q);
                println!("local index d    {}", pr.d);
                println!("disc             {} (= q^{})", pr.disc_abs, l.disc_valuation);
                println!("maximal          {}", l.maximal);
                println!("|kappa|          {}", pr.kappa_size);
                println!("|kappa^x|        {}", pr.kappa_units);
                if let Some(c) = &pr.kappa_class {
                    println!("kappa            {c:?}");
                }
                match pr.eichler_symbol {
                    Some(e) => println!("Eichler symbol   {e}"),
                    None => println!("Eichler symbol   undefined"),
                }
                println!("lambda           {}", l.lambda);
                println!("norm index       {}", pr.norm_index);
                if let Some(n) = &pr.normalizer_index {
                    println!("normalizer index {n}");
                }
            }
        }
        Cmd::Verify { input, neighbor_prime, types, sequential } => {
            let v = load(&input)?.verify(neighbor_prime, types, strategy(sequential))?;
            println!("{}", to_json(&v));
            if !v.matches {
                return Err(Failure::Mismatch(format!(
                    "enumerated mass {} differs from the formula {}",
                    v.mass_enumerated, v.mass_formula
                )));
            }
        }
        Cmd::Table { family, range, output, p, degree, sequential } => {
            let (lo, hi) = table::parse_range(&range)?;
            let opts = TableOptions { p, degree, strategy: strategy(sequential), ..TableOptions::default() };
            let rows = table::table(&family, lo, hi, &opts)?;
            let as_json = output.as_ref().is_some_and(|o| o.extension().is_some_and(|e| e == "json"));
            let text = if as_json { to_json(&rows) + "\n" } else { table::to_tsv(&rows) };
            match output {
                Some(o) => std::fs::write(&o, text).map_err(|e| Failure::Io(format!("{}: {e}", o.display())))?,
                None => print!("{text}"),
            }
        }
        Cmd::Maximalize { input } => {
            println!("{}", to_json(&load(&input)?.maximalize()?));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = par::init_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
