//! Command-line front end.
//!
//! Exit codes are a stable contract: 0 for success (all checks passed),
//! 1 for validation failures or reproduction mismatches, 2 for usage,
//! parse, or I/O problems.

use crate::codefile::{load_matrix, load_vectors};
use crate::dataset;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::neighbor::{expand_x, neighbor, neighbor_distance};
use crate::search::{run_search, SearchConfig, SearchTarget};
use crate::selfdual::SelfDualCode;
use crate::wenum::{
    classify_enumerator, weight_distribution, EnumOptions, EnumOutcome, EnumeratorForm,
    EnumeratorParams, WeightDistribution,
};
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable that caps worker threads for all commands.
pub const THREADS_ENV: &str = "SDCODE_THREADS";

#[derive(Parser)]
#[command(
    name = "sdcode",
    version,
    about = "Self-dual code toolkit: neighbor constructions, neighbor distance, exact weight enumeration"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a generator file defines a self-dual code
    Verify {
        /// Generator matrix file, one '0'/'1' row per line
        file: PathBuf,
    },
    /// Exact weight distribution, minimum distance, and (for length 68)
    /// the enumerator classification
    Wenum {
        file: PathBuf,
        /// Worker threads (default: logical CPUs, capped by SDCODE_THREADS)
        #[arg(long)]
        threads: Option<usize>,
        /// Stop once any codeword of weight below W is found
        #[arg(long, value_name = "W")]
        early_exit: Option<usize>,
        /// Enumerate half the code and mirror counts across complements
        #[arg(long)]
        halving: bool,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Apply neighbor steps and print the resulting generator
    Neighbor {
        file: PathBuf,
        /// Neighbor vector: n bits, or n/2 bits giving the values on the
        /// free columns of the current generator. May repeat; applied in
        /// order.
        #[arg(long = "x", value_name = "BITS")]
        xs: Vec<String>,
        /// File of neighbor vectors, one per line, applied after any --x
        #[arg(long, value_name = "PATH")]
        x_file: Vec<PathBuf>,
        /// Write the generator here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Neighbor distance between two codes of the same length
    Distance { file1: PathBuf, file2: PathBuf },
    /// Rebuild bundled codes and compare their parameters with the
    /// recorded values
    Reproduce {
        /// Which bundled table to check: 1 (the chain), 2-6, or "all"
        #[arg(long)]
        table: Option<String>,
        /// Specific code labels, e.g. C_34 (comma-separated or repeated)
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Randomized neighbor search; hits are printed as JSON lines
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Chain positions to advance beyond the origin
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Candidate vectors per chain position
        #[arg(long, default_value_t = 10)]
        candidates: usize,
        /// Keep only hits with this γ
        #[arg(long)]
        gamma: Option<i64>,
        /// With --gamma, keep only these β values (comma-separated)
        #[arg(long, value_delimiter = ',')]
        beta: Vec<i64>,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. }
                | Error::Io(_)
                | Error::InvalidOptions(_)
                | Error::LengthOutOfRange { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Verify { file } => cmd_verify(&file),
        Cmd::Wenum {
            file,
            threads,
            early_exit,
            halving,
            json,
        } => cmd_wenum(&file, threads, early_exit, halving, json),
        Cmd::Neighbor {
            file,
            xs,
            x_file,
            out,
        } => cmd_neighbor(&file, &xs, &x_file, out.as_deref()),
        Cmd::Distance { file1, file2 } => cmd_distance(&file1, &file2),
        Cmd::Reproduce {
            table,
            labels,
            threads,
        } => cmd_reproduce(table.as_deref(), &labels, threads),
        Cmd::Search {
            file,
            seed,
            depth,
            candidates,
            gamma,
            beta,
        } => cmd_search(&file, seed, depth, candidates, gamma, &beta),
    }
}

/// Effective worker count: the explicit request or the logical CPU
/// count, capped by the SDCODE_THREADS environment variable.
fn resolve_threads(requested: Option<usize>) -> Result<usize> {
    let mut threads = match requested {
        Some(0) => {
            return Err(Error::InvalidOptions("threads must be at least 1".into()));
        }
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let cap: usize = raw.parse().map_err(|_| {
            Error::InvalidOptions(format!("{THREADS_ENV}={raw} is not a thread count"))
        })?;
        if cap >= 1 {
            threads = threads.min(cap);
        }
    }
    Ok(threads)
}

fn load_code(path: &Path) -> Result<SelfDualCode> {
    SelfDualCode::from_generator(&load_matrix(path)?)
}

fn cmd_verify(file: &Path) -> Result<i32> {
    let matrix = load_matrix(file)?;
    match SelfDualCode::from_generator(&matrix) {
        Ok(code) => {
            println!("self-dual [{},{}]", code.length(), code.dim());
            println!("type {}", code.classify_type());
            let ones = BitVector::ones(code.length());
            println!(
                "all-ones codeword: {}",
                if code.contains(&ones)? { "yes" } else { "no" }
            );
            Ok(0)
        }
        Err(e) => {
            println!(
                "not self-dual [{} rows x {} cols]: {e}",
                matrix.num_rows(),
                matrix.num_cols()
            );
            Ok(1)
        }
    }
}

fn cmd_wenum(
    file: &Path,
    threads: Option<usize>,
    early_exit: Option<usize>,
    halving: bool,
    json: bool,
) -> Result<i32> {
    let code = load_code(file)?;
    let opts = EnumOptions {
        threads: resolve_threads(threads)?,
        partition: None,
        early_exit,
        halving,
    };
    let outcome = weight_distribution(&code, &opts)?;
    let mut out = std::io::stdout().lock();
    match outcome {
        EnumOutcome::EarlyExit { weight } => {
            if json {
                let report = serde_json::json!({
                    "length": code.length(),
                    "dim": code.dim(),
                    "early_exit": weight,
                });
                writeln!(out, "{report}")?;
            } else {
                writeln!(out, "early exit: a weight-{weight} codeword exists")?;
            }
        }
        EnumOutcome::Complete(dist) => {
            let params = if code.length() == 68 {
                Some(classify_enumerator(&dist)?)
            } else {
                None
            };
            if json {
                writeln!(out, "{}", json_report(&code, &dist, params.as_ref())?)?;
            } else {
                writeln!(out, "[{},{}] code", code.length(), code.dim())?;
                for (w, c) in dist.support() {
                    writeln!(out, "A_{w} = {c}")?;
                }
                writeln!(out, "d_min={}", dist.min_distance()?)?;
                if let Some(p) = params {
                    writeln!(out, "{}", format_params(&p))?;
                }
            }
        }
    }
    Ok(0)
}

fn format_params(p: &EnumeratorParams) -> String {
    match (p.form, p.gamma, p.beta) {
        (EnumeratorForm::W68_2, Some(g), Some(b)) => format!("W68_2 gamma={g} beta={b}"),
        (EnumeratorForm::W68_1, _, Some(b)) => format!("W68_1 beta={b}"),
        (form, _, _) => form.to_string(),
    }
}

fn json_report(
    code: &SelfDualCode,
    dist: &WeightDistribution,
    params: Option<&EnumeratorParams>,
) -> Result<String> {
    let mut counts = serde_json::Map::new();
    for (w, c) in dist.support() {
        counts.insert(w.to_string(), c.into());
    }
    let report = serde_json::json!({
        "length": code.length(),
        "dim": code.dim(),
        "d_min": dist.min_distance()?,
        "A": counts,
        "form": params.map(|p| p.form.to_string()),
        "beta": params.and_then(|p| p.beta),
        "gamma": params.and_then(|p| p.gamma),
    });
    Ok(report.to_string())
}

fn cmd_neighbor(
    file: &Path,
    xs: &[String],
    x_files: &[PathBuf],
    out: Option<&Path>,
) -> Result<i32> {
    let mut code = load_code(file)?;
    let mut vectors: Vec<BitVector> = Vec::new();
    for (i, s) in xs.iter().enumerate() {
        vectors.push(BitVector::from_bitstring(s).map_err(|e| {
            Error::InvalidOptions(format!("--x argument {}: {e}", i + 1))
        })?);
    }
    for path in x_files {
        vectors.extend(load_vectors(path)?);
    }
    if vectors.is_empty() {
        return Err(Error::InvalidOptions(
            "no neighbor vectors given; use --x or --x-file".into(),
        ));
    }
    for (step, x) in vectors.iter().enumerate() {
        code = expand_x(&code, x)
            .and_then(|full| neighbor(&code, &full))
            .map_err(|e| Error::InvalidOptions(format!("step {}: {e}", step + 1)))?;
    }
    let text = code.generator().to_text();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_distance(file1: &Path, file2: &Path) -> Result<i32> {
    let c1 = load_code(file1)?;
    let c2 = load_code(file2)?;
    let d = neighbor_distance(&c1, &c2)?;
    println!("d_N = {d}");
    println!("dim(intersection) = {}", c1.dim() - d);
    Ok(0)
}

/// Outcome of rebuilding one bundled code: computed parameters against
/// the recorded ones.
fn check_entry(
    name: &str,
    code: &SelfDualCode,
    expected: (i64, i64),
    opts: &EnumOptions,
    out: &mut impl Write,
) -> Result<bool> {
    let outcome = weight_distribution(code, opts)?;
    let ok = match outcome {
        EnumOutcome::EarlyExit { weight } => {
            writeln!(
                out,
                "FAIL {name} expected ({},{}) but a weight-{weight} codeword exists",
                expected.0, expected.1
            )?;
            false
        }
        EnumOutcome::Complete(dist) => {
            let p = classify_enumerator(&dist)?;
            let got = (p.gamma.unwrap_or(-1), p.beta.unwrap_or(-1));
            let d_min = dist.min_distance()?;
            if p.form == EnumeratorForm::W68_2 && got == expected && d_min == 12 {
                writeln!(out, "PASS {name} ({},{}) d_min=12", expected.0, expected.1)?;
                true
            } else {
                writeln!(
                    out,
                    "FAIL {name} expected ({},{}) got {} d_min={d_min}",
                    expected.0,
                    expected.1,
                    format_params(&p)
                )?;
                false
            }
        }
    };
    Ok(ok)
}

fn cmd_reproduce(table: Option<&str>, labels: &[String], threads: Option<usize>) -> Result<i32> {
    let threads = resolve_threads(threads)?;
    // halving is exact (verified against full sweeps by the test suite)
    // and makes the long table runs twice as fast
    let opts = EnumOptions {
        threads,
        partition: None,
        early_exit: Some(12),
        halving: true,
    };

    let tables: Vec<u8> = match table {
        None => Vec::new(),
        Some("all") => vec![1, 2, 3, 4, 5, 6],
        Some(t) => {
            let parsed: u8 = t
                .parse()
                .ok()
                .filter(|t| (1..=6).contains(t))
                .ok_or_else(|| {
                    Error::InvalidOptions(format!("--table takes 1-6 or \"all\", got {t:?}"))
                })?;
            vec![parsed]
        }
    };
    if tables.is_empty() && labels.is_empty() {
        return Err(Error::InvalidOptions(
            "nothing selected; use --table and/or --labels".into(),
        ));
    }

    let mut out = std::io::stdout().lock();
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut tally = |ok: bool| if ok { passed += 1 } else { failed += 1 };

    for &t in &tables {
        if t == 1 {
            for (i, step) in dataset::chain_steps().iter().enumerate() {
                let code = dataset::chain_code(i + 1);
                let name = format!("N{}", i + 1);
                tally(check_entry(&name, code, (step.gamma, step.beta), &opts, &mut out)?);
            }
        } else {
            for entry in dataset::table_entries(t) {
                let code = entry.build_code()?;
                tally(check_entry(
                    entry.label,
                    &code,
                    (entry.gamma, entry.beta),
                    &opts,
                    &mut out,
                )?);
            }
        }
    }
    for label in labels {
        let entry = dataset::entry_by_label(label).ok_or_else(|| {
            Error::InvalidOptions(format!("unknown label {label:?} (tables hold C_1..C_139)"))
        })?;
        let code = entry.build_code()?;
        tally(check_entry(
            entry.label,
            &code,
            (entry.gamma, entry.beta),
            &opts,
            &mut out,
        )?);
    }

    writeln!(out, "{passed} passed, {failed} failed")?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn cmd_search(
    file: &Path,
    seed: u64,
    depth: usize,
    candidates: usize,
    gamma: Option<i64>,
    betas: &[i64],
) -> Result<i32> {
    let origin = load_code(file)?;
    let target = match (gamma, betas) {
        (None, []) => None,
        (None, _) => {
            return Err(Error::InvalidOptions("--beta requires --gamma".into()));
        }
        (Some(g), []) => Some(SearchTarget::GammaIn(vec![g])),
        (Some(g), bs) => Some(SearchTarget::Pairs(
            bs.iter().map(|&b| (g, b)).collect(),
        )),
    };
    let cfg = SearchConfig {
        seed,
        max_candidates: candidates,
        chain_depth: depth,
        target,
        free_coordinates: None,
    };
    let hits = run_search(&origin, &cfg)?;
    let mut out = std::io::stdout().lock();
    for hit in &hits {
        let line = serde_json::json!({
            "chain": hit.chain,
            "form": hit.form.to_string(),
            "gamma": hit.gamma,
            "beta": hit.beta,
            "d_min": hit.d_min,
            "fingerprint": hit.fingerprint,
        });
        writeln!(out, "{line}")?;
    }
    Ok(0)
}
