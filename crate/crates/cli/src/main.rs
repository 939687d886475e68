use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use psl_core::catalog::bench::run_bench;
use psl_core::catalog::{
    build_table, compute_report, enumerate_checkpointed, format_table, render_results, TableEngine,
};
use psl_core::search::{counts_by_psl, ClassRecord, Engine, SearchMode, SearchStats};
use psl_core::BinarySequence;

/// Exit status when a feasibility search finds no sequence.
const EXIT_NOT_FOUND: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pslsearch",
    version,
    about = "Minimum peak sidelobe binary sequence search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sidelobes, PSL, energy and merit factor of a hex-encoded sequence.
    Compute {
        /// Hex digits, first element most significant.
        hex: String,
        /// Sequence length.
        length: usize,
    },
    /// Run a branch-and-bound search and write a result file.
    Search(SearchArgs),
    /// Print orbit counts by exact PSL as a tab-separated table.
    Table {
        #[arg(long, default_value_t = 2)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 5)]
        max_psl: u32,
        /// `oracle` (brute force, lengths up to 26) or `bnb`.
        #[arg(long, default_value = "oracle")]
        engine: TableEngine,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare the naive and popcount kernels and time the search engine.
    Bench {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 2013)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Target length (all modes except package).
    #[arg(long)]
    length: Option<usize>,
    /// Comma-separated lengths n0, n0+2, ... (package mode).
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
    #[arg(long)]
    mode: SearchMode,
    /// PSL threshold; required unless mode is mps.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    split_depth: Option<usize>,
    /// Result file; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file (enumerate mode).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from an existing checkpoint.
    #[arg(long)]
    resume: bool,
    /// Disable isomorph rejection (results are unchanged, only slower).
    #[arg(long)]
    no_reductions: bool,
    /// Stop after this many frontier states; used to exercise resume.
    #[arg(long, hide = true)]
    stop_after: Option<usize>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute { hex, length } => {
            let seq = BinarySequence::from_hex(&hex, length)
                .with_context(|| format!("cannot decode {hex:?} at length {length}"))?;
            print!("{}", compute_report(&seq));
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(args) => search(args),
        Command::Table {
            min,
            max,
            max_psl,
            engine,
            workers,
        } => {
            let workers = workers.unwrap_or_else(|| Engine::default().workers);
            let table = build_table(engine, min, max, max_psl, workers)?;
            print!("{}", format_table(&table));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { samples, seed } => {
            let report = run_bench(samples, seed)?;
            println!("{report}");
            Ok(if report.equality_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let mut engine = Engine::default().with_reductions(!args.no_reductions);
    if let Some(w) = args.workers {
        engine = engine.with_workers(w);
    }
    if let Some(d) = args.split_depth {
        engine = engine.with_split_depth(d);
    }
    if args.mode == SearchMode::Mps && args.bound.is_some() {
        bail!("--bound cannot be combined with --mode mps");
    }
    if args.mode != SearchMode::Mps && args.bound.is_none() {
        bail!("--bound is required for this mode");
    }
    if args.checkpoint.is_some() && args.mode != SearchMode::Enumerate {
        bail!("--checkpoint is only supported with --mode enumerate");
    }
    if args.resume && args.checkpoint.is_none() {
        bail!("--resume requires --checkpoint");
    }
    let lengths: Vec<usize> = match (args.mode, args.length, args.lengths.is_empty()) {
        (SearchMode::Package, None, false) => args.lengths.clone(),
        (SearchMode::Package, _, _) => {
            bail!("package mode takes --lengths n0,n0+2,... and no --length")
        }
        (_, Some(n), true) => vec![n],
        _ => bail!("this mode takes exactly one --length"),
    };
    if lengths.windows(2).any(|w| w[1] != w[0] + 2) {
        bail!("--lengths must share parity and increase by 2: {lengths:?}");
    }

    let start = Instant::now();
    let mut records: Vec<ClassRecord> = Vec::new();
    let stats: SearchStats;
    let mut code = ExitCode::SUCCESS;
    let mut headline = String::new();
    let bound = args.bound.unwrap_or(0);
    match args.mode {
        SearchMode::Feasible => {
            let (witness, s) = engine.feasible(lengths[0], bound)?;
            stats = s;
            match witness {
                Some(w) => {
                    headline = format!("found {} (PSL <= {bound})", w.to_hex());
                    records.push(ClassRecord::from_sequence(&w));
                }
                None => {
                    headline = format!("no sequence of length {} has PSL <= {bound}", lengths[0]);
                    code = ExitCode::from(EXIT_NOT_FOUND);
                }
            }
        }
        SearchMode::Enumerate => {
            let n = lengths[0];
            if let Some(path) = &args.checkpoint {
                let run =
                    enumerate_checkpointed(&engine, n, bound, path, args.resume, args.stop_after)?;
                if !run.complete {
                    eprintln!("stopped early; rerun with --resume to finish");
                    return Ok(ExitCode::FAILURE);
                }
                records = run.records;
                stats = run.stats;
            } else {
                let (r, s) = engine.enumerate(n, bound)?;
                records = r;
                stats = s;
            }
        }
        SearchMode::Mps => {
            let (mps, r, s) = engine.mps(lengths[0])?;
            headline = format!("MPS({}) = {mps}", lengths[0]);
            records = r;
            stats = s;
        }
        SearchMode::Package => {
            let (map, s) = engine.package(&lengths, bound)?;
            records = map.into_values().flatten().collect();
            stats = s;
        }
    }

    let text = render_results(&records);
    match &args.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    if !headline.is_empty() {
        eprintln!("{headline}");
    }
    for &n in &lengths {
        let of_n: Vec<ClassRecord> = records.iter().filter(|r| r.n() == n).cloned().collect();
        let per_psl: Vec<String> = counts_by_psl(&of_n)
            .into_iter()
            .map(|(p, c)| format!("PSL{p}={c}"))
            .collect();
        eprintln!("n={n}: {} classes [{}]", of_n.len(), per_psl.join(" "));
    }
    eprintln!(
        "nodes={} leaves={} frontier={} time={:.3}s",
        stats.nodes,
        stats.leaves,
        stats.frontier_states,
        start.elapsed().as_secs_f64()
    );
    Ok(code)
}
