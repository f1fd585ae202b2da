//! `menon` — exact calculator for character-twisted Menon gcd sums.
//!
//! For a Dirichlet character χ mod n with conductor d,
//!
//! ```text
//! S_χ(n, k) = Σ_{a ∈ Z_n^*} Σ_{b₁,…,b_k ∈ Z_n} gcd(a−1, b₁, …, b_k, n)·χ(a)
//!           = φ(n)·σ_k(n/d),
//! ```
//!
//! and this tool lists character groups, evaluates S by any of four
//! independent methods, and cross-checks the methods against each other
//! over whole ranges. Everything is exact integer arithmetic; values are
//! serialized as decimal strings so arbitrary precision survives any
//! consumer.

mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use menon_core::{evaluate_with_mode, CharacterGroup, Error, EvalMode};
use output::{csv_line, render_table, OutputFormat};
use verify::{render_report, run_verification};

const INDEX_CONVENTION: &str = "\
Character indexing: the unit group mod n splits into prime-power parts, and \
each part gets fixed generators — the smallest primitive root for odd p^m, \
the residue 3 for modulus 4, and the pair -1, 5 for 2^m with m >= 3 (the -1 \
digit more significant). A character is the list of exponent digits over \
those generators, parts ordered by ascending prime, and its index is the \
big-endian mixed-radix encoding of the digits. Index 0 is always the \
trivial character. Exit codes: 0 success, 1 verification mismatch, 2 usage \
error, 3 resource cap exceeded.";

#[derive(Parser)]
#[command(
    name = "menon",
    version,
    about = "Exact calculator for character-twisted Menon gcd sums",
    long_about = None,
    after_long_help = INDEX_CONVENTION
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every character mod n: index, digits, order, conductor.
    #[command(after_long_help = INDEX_CONVENTION)]
    Characters {
        /// Modulus n >= 1.
        #[arg(long)]
        modulus: u64,
        /// Output shape.
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Evaluate S for one character; prints a single JSON object.
    #[command(after_long_help = INDEX_CONVENTION)]
    Eval {
        /// Modulus n >= 1.
        #[arg(long)]
        modulus: u64,
        /// Character index in 0..phi(n).
        #[arg(long, default_value_t = 0)]
        char_index: u64,
        /// Number of auxiliary gcd variables.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Evaluation method.
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
        /// Elementary-step budget for naive mode (default 10^8).
        #[arg(long)]
        work_cap: Option<u128>,
    },
    /// Cross-check pairs of evaluation modes for every character of every
    /// n <= max-n; nonzero exit on any disagreement.
    Verify {
        /// Largest modulus to check.
        #[arg(long)]
        max_n: u64,
        /// Comma-separated k values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0u32, 1, 2])]
        k_list: Vec<u32>,
        /// Comma-separated mode:mode pairs, or "all" for every pair of
        /// distinct modes (naive pairs are slow beyond max-n ~ 30).
        #[arg(
            long,
            value_delimiter = ',',
            default_values_t = vec!["grouped:closed".to_string(), "local:closed".to_string()]
        )]
        mode_pairs: Vec<String>,
        /// Fan moduli out across threads; the report is identical either
        /// way apart from elapsed time.
        #[arg(long)]
        parallel: bool,
        /// Elementary-step budget for naive mode (default 10^8).
        #[arg(long)]
        work_cap: Option<u128>,
        /// table or json (a nested report has no csv shape).
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// S values for every character of each listed modulus.
    Table {
        /// Comma-separated moduli.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        /// Number of auxiliary gcd variables.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Evaluation method.
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
        /// Elementary-step budget for naive mode (default 10^8).
        #[arg(long)]
        work_cap: Option<u128>,
        /// Output shape.
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
}

/// Clap-facing mirror of [`EvalMode`] so help text lists the choices.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Naive,
    Grouped,
    Local,
    Closed,
}

impl From<ModeArg> for EvalMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Naive => EvalMode::Naive,
            ModeArg::Grouped => EvalMode::Grouped,
            ModeArg::Local => EvalMode::Local,
            ModeArg::Closed => EvalMode::Closed,
        }
    }
}

enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Characters { modulus, format } => cmd_characters(modulus, format),
        Command::Eval {
            modulus,
            char_index,
            k,
            mode,
            work_cap,
        } => cmd_eval(modulus, char_index, k, mode.into(), work_cap),
        Command::Verify {
            max_n,
            k_list,
            mode_pairs,
            parallel,
            work_cap,
            format,
        } => cmd_verify(max_n, &k_list, &mode_pairs, parallel, work_cap, format),
        Command::Table {
            n_list,
            k,
            mode,
            work_cap,
            format,
        } => cmd_table(&n_list, k, mode.into(), work_cap, format),
    }
}

#[derive(Serialize)]
struct CharacterRow {
    index: u64,
    digits: Vec<u64>,
    order: u64,
    conductor: u64,
}

fn cmd_characters(modulus: u64, format: OutputFormat) -> Result<ExitCode, CliError> {
    let group = CharacterGroup::new(modulus)?;
    let rows: Vec<CharacterRow> = group
        .characters()?
        .iter()
        .map(|chi| CharacterRow {
            index: chi.index(),
            digits: chi.digits(),
            order: chi.order(),
            conductor: chi.conductor(),
        })
        .collect();
    match format {
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        digits_human(&r.digits),
                        r.order.to_string(),
                        r.conductor.to_string(),
                    ]
                })
                .collect();
            print!(
                "{}",
                render_table(&["index", "digits", "order", "conductor"], &cells)
            );
        }
        OutputFormat::Json => {
            for row in &rows {
                println!("{}", serde_json::to_string(row).expect("row serializes"));
            }
        }
        OutputFormat::Csv => {
            println!("index,digits,order,conductor");
            for r in &rows {
                println!(
                    "{}",
                    csv_line(&[
                        r.index.to_string(),
                        digits_csv(&r.digits),
                        r.order.to_string(),
                        r.conductor.to_string(),
                    ])
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EvalRow {
    n: u64,
    char_index: u64,
    conductor: u64,
    k: u32,
    mode: String,
    value: String,
}

fn cmd_eval(
    modulus: u64,
    char_index: u64,
    k: u32,
    mode: EvalMode,
    work_cap: Option<u128>,
) -> Result<ExitCode, CliError> {
    let group = CharacterGroup::new(modulus)?;
    let chi = group.character(char_index)?;
    let eval = evaluate_with_mode(&chi, k, mode, work_cap)?;
    let row = EvalRow {
        n: eval.modulus,
        char_index: eval.char_index,
        conductor: eval.conductor,
        k: eval.k,
        mode: eval.mode.to_string(),
        value: eval.value.to_string(),
    };
    println!("{}", serde_json::to_string(&row).expect("row serializes"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    max_n: u64,
    k_list: &[u32],
    mode_pairs: &[String],
    parallel: bool,
    work_cap: Option<u128>,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("max-n must be at least 1".into()));
    }
    if k_list.is_empty() {
        return Err(CliError::Usage("k-list must not be empty".into()));
    }
    if format == OutputFormat::Csv {
        return Err(CliError::Usage(
            "verify reports have no csv shape; use --format table or json".into(),
        ));
    }
    let pairs = parse_mode_pairs(mode_pairs)?;
    let report = run_verification(max_n, k_list, &pairs, parallel, work_cap)?;
    match format {
        OutputFormat::Table => print!("{}", render_report(&report)),
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        ),
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    if let Some(first) = report.mismatches.first() {
        eprintln!(
            "mismatch: n={} char_index={} k={}: {}={} vs {}={}",
            first.n,
            first.char_index,
            first.k,
            first.mode_a,
            first.value_a,
            first.mode_b,
            first.value_b
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    char_index: u64,
    conductor: u64,
    value: String,
}

fn cmd_table(
    n_list: &[u64],
    k: u32,
    mode: EvalMode,
    work_cap: Option<u128>,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    let mut moduli = n_list.to_vec();
    moduli.sort_unstable();
    moduli.dedup();
    let mut rows = Vec::new();
    for &n in &moduli {
        let group = CharacterGroup::new(n)?;
        for chi in group.characters()? {
            let eval = evaluate_with_mode(&chi, k, mode, work_cap)?;
            rows.push(TableRow {
                n,
                char_index: eval.char_index,
                conductor: eval.conductor,
                value: eval.value.to_string(),
            });
        }
    }
    match format {
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.char_index.to_string(),
                        r.conductor.to_string(),
                        r.value.clone(),
                    ]
                })
                .collect();
            print!(
                "{}",
                render_table(&["n", "char_index", "conductor", "value"], &cells)
            );
        }
        OutputFormat::Json => {
            for row in &rows {
                println!("{}", serde_json::to_string(row).expect("row serializes"));
            }
        }
        OutputFormat::Csv => {
            println!("n,char_index,conductor,value");
            for r in &rows {
                println!(
                    "{}",
                    csv_line(&[
                        r.n.to_string(),
                        r.char_index.to_string(),
                        r.conductor.to_string(),
                        r.value.clone(),
                    ])
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Digits for human tables: ';'-joined, '-' when the modulus has no
/// generators (n = 1).
fn digits_human(digits: &[u64]) -> String {
    if digits.is_empty() {
        "-".to_string()
    } else {
        digits_csv(digits)
    }
}

fn digits_csv(digits: &[u64]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Parses "a:b" items, or the single item "all" meaning every unordered
/// pair of distinct modes.
fn parse_mode_pairs(items: &[String]) -> Result<Vec<(EvalMode, EvalMode)>, CliError> {
    if items.iter().any(|item| item == "all") {
        if items.len() != 1 {
            return Err(CliError::Usage(
                "\"all\" replaces the pair list and cannot be combined with explicit pairs".into(),
            ));
        }
        let modes = EvalMode::ALL;
        let mut pairs = Vec::new();
        for i in 0..modes.len() {
            for j in i + 1..modes.len() {
                pairs.push((modes[i], modes[j]));
            }
        }
        return Ok(pairs);
    }
    items
        .iter()
        .map(|item| {
            let (a, b) = item.split_once(':').ok_or_else(|| {
                CliError::Usage(format!("mode pair {item:?} must look like grouped:closed"))
            })?;
            let a = a.parse::<EvalMode>().map_err(CliError::Usage)?;
            let b = b.parse::<EvalMode>().map_err(CliError::Usage)?;
            Ok((a, b))
        })
        .collect()
}
