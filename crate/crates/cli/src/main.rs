mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use matchflow::chain::fold;
use matchflow::generators::{bench_chain, gen_chain};
use matchflow::oracle::{k_vector_direct, match_series};
use matchflow::{
    BigUint, Chain, ChainSpec, Graph, GraphFragment, MatchVector, Severity, Strictness,
};

use report::{decimal, RunReport, Verdict};

const THREADS_ENV: &str = "MATCHFLOW_THREADS";
const ORACLE_VERTEX_CAP: usize = 64;

#[derive(Parser)]
#[command(
    name = "matchflow",
    version,
    about = "Exact k-matching counts and Hosoya indices of chained graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a chain file through its transfer matrices.
    Compute {
        chain: PathBuf,
        /// Truncation bound; defaults to the chain's own `k`, else floor(n/2).
        #[arg(long)]
        k: Option<usize>,
        /// Cross-check against the direct oracle on the realized graph.
        #[arg(long)]
        verify: bool,
        /// Largest realized graph `--verify` will hand to the oracle.
        #[arg(long, default_value_t = 20)]
        verify_cap: usize,
        #[arg(long)]
        json: bool,
        /// Print coefficients from degree 0 upwards.
        #[arg(long)]
        ascending: bool,
    },
    /// Count matchings of a plain graph file directly.
    Oracle {
        graph: PathBuf,
        /// Also report the series of G - a, G - b and G - a - b.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Print coefficients from the highest degree down.
        #[arg(long)]
        descending: bool,
    },
    /// Write a generated chain file.
    Gen {
        family: Family,
        /// Fixture name, L/R word, or `len:offset,...` list.
        params: String,
        /// Destination file; the chain goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time matrix construction and folding on a synthetic chain.
    Bench {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        blocks: u64,
        #[arg(long, default_value_t = 50)]
        k: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        repeat: u64,
    },
    /// Check a chain file and report diagnostics.
    Validate {
        chain: PathBuf,
        /// Require two components at every attach pair; warnings become errors.
        #[arg(long)]
        strict: bool,
        /// Write the realized graph to this file.
        #[arg(long)]
        realize: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fixture,
    Benzenoid,
    CyclicChain,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Compute {
            chain,
            k,
            verify,
            verify_cap,
            json,
            ascending,
        } => compute(&chain, k, verify.then_some(verify_cap), json, ascending),
        Command::Oracle {
            graph,
            pair,
            k,
            json,
            descending,
        } => oracle(&graph, pair, k, json, descending),
        Command::Gen {
            family,
            params,
            out,
        } => generate(family, &params, out.as_deref()),
        Command::Bench { blocks, k, repeat } => bench(blocks as usize, k, repeat as usize),
        Command::Validate {
            chain,
            strict,
            realize,
        } => validate(&chain, strict, realize.as_deref()),
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            if let Some(matchflow::Error::InvalidChain(diags)) = err.downcast_ref() {
                for d in diags {
                    eprintln!("{d}");
                }
            }
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("{THREADS_ENV} must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn read_chain(path: &Path) -> anyhow::Result<Chain> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Chain::from_json(&text).with_context(|| format!("parsing chain {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let fragment: GraphFragment =
        serde_json::from_str(&text).with_context(|| format!("parsing graph {}", path.display()))?;
    Ok(Graph::from_fragment(&fragment)?)
}

fn order_word(ascending: bool) -> &'static str {
    if ascending {
        "ascending"
    } else {
        "descending"
    }
}

fn report_for(
    vector: &MatchVector,
    pair: Option<(String, String)>,
    k: usize,
    graph_size: (usize, usize),
    wall: Duration,
) -> RunReport {
    let first = vector.graph_series();
    let ascending = decimal(first.coeffs());
    let mut descending = ascending.clone();
    descending.reverse();
    let other_blocks = if pair.is_some() {
        vector.blocks()[1..]
            .iter()
            .map(|b| decimal(b.coeffs()))
            .collect()
    } else {
        Vec::new()
    };
    RunReport {
        command: command_echo(),
        k,
        vertices: graph_size.0,
        edges: graph_size.1,
        pair,
        descending,
        ascending,
        hosoya: first.total().to_string(),
        truncated: k < graph_size.0 / 2,
        other_blocks,
        wall_ms: wall.as_secs_f64() * 1e3,
        verification: None,
    }
}

fn print_series_lines(report: &RunReport, ascending: bool) {
    let word = order_word(ascending);
    let line = |values: &[String]| {
        let mut values = values.to_vec();
        if !ascending {
            values.reverse();
        }
        values.join(" ")
    };
    println!("p(G, k), {word}: {}", line(&report.ascending));
    if let Some((a, b)) = &report.pair {
        let names = [
            format!("G - {a}"),
            format!("G - {b}"),
            format!("G - {a} - {b}"),
        ];
        for (name, values) in names.iter().zip(&report.other_blocks) {
            println!("p({name}, k), {word}: {}", line(values));
        }
    }
    if report.truncated {
        println!(
            "matchings with at most {} edges = {}",
            report.k, report.hosoya
        );
    } else {
        println!("Z(G) = {}", report.hosoya);
    }
}

fn compute(
    path: &Path,
    k: Option<usize>,
    verify_cap: Option<usize>,
    json: bool,
    ascending: bool,
) -> anyhow::Result<ExitCode> {
    let chain = read_chain(path)?;
    for d in chain.validate(Strictness::Lenient) {
        eprintln!("{d}");
    }
    let k = k.unwrap_or_else(|| chain.default_k());
    let start = Instant::now();
    let vector = chain.evaluate::<BigUint>(Some(k))?;
    let wall = start.elapsed();
    let mut report = report_for(
        &vector,
        Some(chain.out_pair().clone()),
        k,
        (chain.vertex_count(), chain.edge_count()),
        wall,
    );

    if let Some(cap) = verify_cap {
        report.verification = Some(if chain.vertex_count() > cap {
            Verdict::Skipped
        } else {
            let g = chain.realize()?;
            let (a, b) = chain.out_pair();
            let direct = k_vector_direct::<BigUint>(&g, a, b, k)?;
            if direct == vector {
                Verdict::Match
            } else {
                Verdict::Mismatch
            }
        });
    }

    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let (a, b) = chain.out_pair();
        println!(
            "chain {}: {} block(s), {} vertices, {} edges",
            path.display(),
            chain.blocks.len(),
            report.vertices,
            report.edges
        );
        println!("k = {k}, pair ({a}, {b})");
        print_series_lines(&report, ascending);
        println!("time: {:.3} ms", report.wall_ms);
        if let Some(v) = report.verification {
            match v {
                Verdict::Skipped => println!(
                    "verify: SKIPPED ({} vertices exceeds cap {})",
                    report.vertices,
                    verify_cap.unwrap_or_default()
                ),
                v => println!("verify: {}", v.as_str()),
            }
        }
    }
    Ok(ExitCode::from(
        report.verification.map_or(0, Verdict::exit_status),
    ))
}

fn oracle(
    path: &Path,
    pair: Option<Vec<String>>,
    k: Option<usize>,
    json: bool,
    descending: bool,
) -> anyhow::Result<ExitCode> {
    let g = read_graph(path)?;
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_CAP {
        bail!("graph has {n} vertices; the oracle accepts at most {ORACLE_VERTEX_CAP}");
    }
    let k = k.unwrap_or(n / 2);
    let start = Instant::now();
    let (vector, pair) = match pair.as_deref() {
        Some([a, b]) => (
            k_vector_direct::<BigUint>(&g, a, b, k)?,
            Some((a.clone(), b.clone())),
        ),
        _ => {
            let series = match_series::<BigUint>(&g, k);
            let empty = matchflow::Series::zero(k);
            let vector = MatchVector::new(
                (String::new(), String::new()),
                [series, empty.clone(), empty.clone(), empty],
            );
            (vector, None)
        }
    };
    let report = report_for(&vector, pair, k, (n, g.edge_count()), start.elapsed());
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "graph {}: {} vertices, {} edges",
            path.display(),
            n,
            g.edge_count()
        );
        println!("k = {k}");
        print_series_lines(&report, !descending);
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(family: Family, params: &str, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let spec = match family {
        Family::Fixture => ChainSpec::Fixture(params.parse()?),
        Family::Benzenoid => ChainSpec::parse_benzenoid(params)?,
        Family::CyclicChain => ChainSpec::parse_cyclic(params)?,
    };
    let chain = gen_chain(&spec)?;
    let summary = format!(
        "{} block(s), {} vertices, {} edges",
        chain.blocks.len(),
        chain.vertex_count(),
        chain.edge_count()
    );
    match out {
        Some(path) => {
            std::fs::write(path, chain.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}: {summary}", path.display());
        }
        None => {
            print!("{}", chain.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(blocks: usize, k: usize, repeat: usize) -> anyhow::Result<ExitCode> {
    let chain = bench_chain(blocks);
    let mut build_best = Duration::MAX;
    let mut fold_best = Duration::MAX;
    let mut result = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let matrices = chain.transfer_matrices::<BigUint>(k)?;
        build_best = build_best.min(start.elapsed());

        let start = Instant::now();
        let vector = fold(chain.base_vector(k)?, &matrices)?;
        fold_best = fold_best.min(start.elapsed());
        result = Some(vector);
    }
    let vector = result.expect("repeat >= 1");
    let peak_digits = vector
        .blocks()
        .iter()
        .flat_map(|b| b.coeffs())
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1);
    let total = build_best + fold_best;
    println!(
        "workload: {blocks} block(s), k = {k}, {} vertices, {} edges",
        chain.vertex_count(),
        chain.edge_count()
    );
    println!("matrix build: {:.3} ms (best of {repeat})", ms(build_best));
    println!("fold: {:.3} ms (best of {repeat})", ms(fold_best));
    println!(
        "per block: {:.3} us",
        total.as_secs_f64() * 1e6 / blocks as f64
    );
    println!("peak digits: {peak_digits}");
    println!("coefficient sum: {}", vector.hosoya());
    Ok(ExitCode::SUCCESS)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn validate(path: &Path, strict: bool, realize: Option<&Path>) -> anyhow::Result<ExitCode> {
    let chain = read_chain(path)?;
    let strictness = if strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let diags = chain.validate(strictness);
    for d in &diags {
        println!("{d}");
    }
    let errors = diags
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .count();
    if errors > 0 {
        println!("invalid: {errors} error(s)");
        return Ok(ExitCode::from(1));
    }
    println!(
        "valid: {} block(s), {} vertices, {} edges, {} warning(s)",
        chain.blocks.len(),
        chain.vertex_count(),
        chain.edge_count(),
        diags.len()
    );
    if let Some(target) = realize {
        let g = chain.realize()?;
        let text = serde_json::to_string_pretty(&g.to_fragment())? + "\n";
        std::fs::write(target, text).with_context(|| format!("writing {}", target.display()))?;
        println!("realized graph written to {}", target.display());
    }
    Ok(ExitCode::SUCCESS)
}
