use std::fmt::Display;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use parastat::fock::parse_word;
use parastat::matrix::{self, RankBound};
use parastat::oracle::{creation_words, Oracle};
use parastat::stability::{InfiniteFock, InfiniteState};
use parastat::{cgc, gz, verify, Error, FockSpace, Sign, State};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "parastat",
    version,
    about = "Exact parastatistics Fock spaces in the odd Gelfand-Zetlin basis"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Rank `n`, or `inf` for the infinite-rank algebra.
#[derive(Clone, Copy, Debug)]
enum Rank {
    Finite(usize),
    Infinite,
}

impl FromStr for Rank {
    type Err = String;

    fn from_str(s: &str) -> Result<Rank, String> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Rank::Infinite),
            _ => match s.parse::<usize>() {
                Ok(0) => Err("rank must be at least 1".into()),
                Ok(n) => Ok(Rank::Finite(n)),
                Err(_) => Err(format!("expected a positive integer or `inf`, got {s:?}")),
            },
        }
    }
}

fn order(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("p must be at least 1".into()),
        Ok(p) => Ok(p),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the gl(n|n) top rows of V(p,n) up to a degree, with pattern counts.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = order)]
        p: u32,
        #[arg(long)]
        degree: u32,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
        /// Also list every pattern.
        #[arg(long)]
        patterns: bool,
    },
    /// Apply a word such as "c+(-3),c+(-2)" (rightmost first) to the vacuum.
    Act {
        #[arg(long)]
        n: Rank,
        #[arg(long, value_parser = order)]
        p: u32,
        #[arg(long)]
        word: String,
        /// Deepest degree for which reduced matrix elements may be derived.
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = order)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Word length for the oracle, stability and infinite suites.
        #[arg(long, default_value_t = 3)]
        len: usize,
    },
    /// Nonzero Clebsch-Gordan coefficients out of the module with partition λ.
    CgcTable {
        #[arg(long)]
        n: usize,
        /// Comma-separated partition, e.g. "2,1"; empty for the trivial module.
        #[arg(long, default_value = "")]
        partition: String,
        /// Restrict targets to the p-bound.
        #[arg(long, value_parser = order)]
        p: Option<u32>,
    },
    /// Derived reduced matrix elements for top rows below a degree.
    ReducedMe {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = order)]
        p: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Vacuum-expectation computations from the defining relations alone.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Matrix realization of the generators.
    Matrix {
        #[command(subcommand)]
        command: MatrixCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Gram matrix of all creation words up to a length.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = order)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum MatrixCommand {
    /// Nonzero entries of c_i^±.
    Dump {
        /// `+` or `-`.
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long, allow_hyphen_values = true)]
        index: i32,
        #[arg(long)]
        n: Rank,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TableDepth(_) | Error::Consistency(_) | Error::Radical(_) => {
                Failure::Internal(e.to_string())
            }
            Error::Shape(_) | Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_state<K: Display + Ord>(terms: impl Iterator<Item = (K, String)>) {
    let mut empty = true;
    for (pattern, coef) in terms {
        empty = false;
        println!("{coef} ×");
        println!("{pattern}");
    }
    if empty {
        println!("0");
    }
}

fn parse_partition(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<u32>()
                .map_err(|e| Failure::Usage(format!("bad partition part {x:?}: {e}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Enumerate {
            n,
            p,
            degree,
            json,
            patterns,
        } => {
            if n == 0 {
                return Err(Failure::Usage("rank must be at least 1".into()));
            }
            let mut rows = Vec::new();
            for top in gz::enumerate_top_rows(n, p, degree) {
                let pats = gz::enumerate_patterns(&top, n)?;
                rows.push((top, pats));
            }
            if json || fmt == Format::Json {
                let list: Vec<_> = rows
                    .iter()
                    .map(|(top, pats)| {
                        let mut v = json!({
                            "top_row": top,
                            "partition": gz::partition_from_top(top),
                            "count": pats.len(),
                        });
                        if patterns {
                            v["patterns"] = json!(pats);
                        }
                        v
                    })
                    .collect();
                print_json(&json!(list));
            } else {
                println!("{:<24} {:<16} {:>8}", "top row", "partition", "count");
                for (top, pats) in &rows {
                    let label = format!("{:?} ¦ {:?}", top.neg, top.pos);
                    println!(
                        "{:<24} {:<16} {:>8}",
                        label,
                        format!("{:?}", gz::partition_from_top(top)),
                        pats.len()
                    );
                    if patterns {
                        for m in pats {
                            println!("{m}");
                        }
                    }
                }
                println!("total {}", rows.iter().map(|(_, p)| p.len()).sum::<usize>());
            }
        }
        Command::Act {
            n,
            p,
            word,
            max_degree,
        } => {
            let word = parse_word(&word)?;
            match n {
                Rank::Finite(n) => {
                    let space = match max_degree {
                        Some(cap) => FockSpace::with_max_degree(n, p, cap),
                        None => FockSpace::new(n, p),
                    };
                    let out: State = space.apply_word(&word, &space.vacuum())?;
                    if fmt == Format::Json {
                        print_json(&json!(out));
                    } else {
                        print_state(out.iter().map(|(m, c)| (m.clone(), c.to_string())));
                    }
                }
                Rank::Infinite => {
                    let f = InfiniteFock::new(p);
                    let out: InfiniteState = f.apply_word(&word, &f.vacuum())?;
                    if fmt == Format::Json {
                        print_json(&json!(out));
                    } else {
                        print_state(out.iter().map(|(m, c)| (m.clone(), c.to_string())));
                    }
                }
            }
        }
        Command::Verify {
            suite,
            n,
            p,
            degree,
            len,
        } => {
            let report = verify::run(&suite, n, p, degree, len)?;
            if fmt == Format::Json {
                print_json(&json!(report));
            } else {
                let status = if report.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{status} {}: {} checks, {} failed",
                    report.suite, report.checked, report.failed
                );
                for f in &report.failures {
                    println!("  {f}");
                }
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::CgcTable { n, partition, p } => {
            let lambda = parse_partition(&partition)?;
            let top = gz::top_from_partition(&lambda, n)?;
            let table = cgc::cgc_table(&top, n, p)?;
            if fmt == Format::Json {
                print_json(&json!(table));
            } else {
                for rec in &table {
                    println!("j = {}, k = {}: {}", rec.j, rec.k, rec.value);
                    println!("{}→\n{}", rec.src, rec.dst);
                }
                println!("{} coefficients", table.len());
            }
        }
        Command::ReducedMe { n, p, degree } => {
            let table = FockSpace::new(n, p).reduced_table(degree)?;
            if fmt == Format::Json {
                print_json(&json!(table));
            } else {
                println!("{:<28} {:>4} {:>12} {:>5}", "top row", "k", "G²", "sign");
                for e in &table {
                    let label = format!("{:?} ¦ {:?}", e.top_row.neg, e.top_row.pos);
                    println!(
                        "{:<28} {:>4} {:>12} {:>5}",
                        label,
                        e.k,
                        e.g_squared,
                        if e.sign > 0 { "+" } else { "-" }
                    );
                }
            }
        }
        Command::Oracle {
            command: OracleCommand::Gram { n, p, max_len },
        } => {
            let words: Vec<_> = (0..=max_len).flat_map(|l| creation_words(n, l)).collect();
            let gram = Oracle::new(p).gram_matrix(&words);
            let labels: Vec<String> = words
                .iter()
                .map(|w| parastat::fock::format_word(w))
                .collect();
            if fmt == Format::Json {
                let rows: Vec<Vec<String>> = gram
                    .iter()
                    .map(|r| r.iter().map(|v| v.to_string()).collect())
                    .collect();
                print_json(&json!({ "words": labels, "gram": rows }));
            } else {
                for (label, row) in labels.iter().zip(&gram) {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                    println!(
                        "{:<28} {}",
                        if label.is_empty() { "1" } else { label },
                        cells.join(" ")
                    );
                }
            }
        }
        Command::Matrix {
            command: MatrixCommand::Dump { sign, index, n },
        } => {
            let sign = match sign.as_str() {
                "+" | "plus" => Sign::Plus,
                "-" | "minus" => Sign::Minus,
                other => {
                    return Err(Failure::Usage(format!(
                        "sign must be + or -, got {other:?}"
                    )))
                }
            };
            let bound = match n {
                Rank::Finite(n) => RankBound::Finite(n),
                Rank::Infinite => RankBound::Infinite,
            };
            let m = matrix::build_generator(sign, index, bound)?;
            if fmt == Format::Json {
                print_json(&json!(m.entries()));
            } else {
                for e in m.entries() {
                    println!("({:>3},{:>3})  {}", e.row, e.col, e.value);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
