use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use powergraph::bounds::{verify, verify_all, verify_cayley, verify_theorem};
use powergraph::diagnostics::{audit_claims_with, AuditOptions};
use powergraph::generators::{
    audit, build, cayley_graph, convergence_table, gaps_positive_and_decreasing,
    random_regular_connected,
};
use powergraph::{graph_power, Family, Graph, Theorem, Verdict, VerdictStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const EXIT_HOLDS: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INAPPLICABLE: u8 = 2;
/// Bad arguments, unreadable input, invalid parameters.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "powergraph", version, about = "Graph powers and edge-growth bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and audit it against its closed-form description
    Gen(GenArgs),
    /// Compute the r-th power of a graph
    Power {
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an edge-growth lower bound on a graph
    Verify {
        input: PathBuf,
        #[arg(long)]
        r: usize,
        /// Use the ratio bound for Cayley graphs of Z_p
        #[arg(long, conflicts_with = "all")]
        cayley: bool,
        /// Report every theorem instead of the one matching the graph
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Audit the intermediate claims of the loops-allowed argument
    Claims {
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Tabulate how the extremal families approach the bound
    Convergence {
        family: Family,
        #[arg(long)]
        r: usize,
        /// Inclusive range `a..b`
        #[arg(long, value_parser = parse_range)]
        m: (usize, usize),
    },
    /// Check the regular-graph bound on random connected regular graphs
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    family: GenFamily,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Prime modulus for `cayley`
    #[arg(long)]
    p: Option<usize>,
    /// Generator set for `cayley`, comma separated
    #[arg(long, value_delimiter = ',')]
    a: Vec<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list path; the blueprint and audit go next to it
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    #[value(name = "Gm")]
    Gm,
    #[value(name = "Hm")]
    Hm,
    Cayley,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.with_context(|| format!("{family} requires --{flag}"))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Graph::from_edge_list(&text).with_context(|| format!("{}", path.display()))
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(ext);
    PathBuf::from(name)
}

/// Writes the graph, blueprint and audit, and prints the audit to stdout.
/// Without `-o` the edge list goes to stdout and the audit to stderr.
fn emit(g: &Graph, blueprint: &str, audit_text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, g.to_edge_list())
                .with_context(|| format!("cannot write {}", path.display()))?;
            fs::write(sibling(path, ".blueprint"), blueprint)?;
            fs::write(sibling(path, ".audit"), audit_text)?;
            print!("{audit_text}");
        }
        None => {
            print!("{}", g.to_edge_list());
            eprint!("{audit_text}");
        }
    }
    Ok(())
}

fn simple_audit(g: &Graph, expected_degree: usize) -> (String, bool) {
    let degree = g.regular_degree();
    let diameter = g.diameter();
    let passed = degree == Some(expected_degree) && diameter.is_some();
    let line = format!(
        "order={} degree={} diameter={} {}\n",
        g.order(),
        degree.map_or_else(|| "irregular".into(), |d| d.to_string()),
        diameter.map_or_else(|| "infinite".into(), |d| d.to_string()),
        if passed { "PASS" } else { "FAIL" }
    );
    (line, passed)
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let output = args.output.as_deref();
    let passed = match args.family {
        GenFamily::Gm | GenFamily::Hm => {
            let family = match args.family {
                GenFamily::Gm => Family::Gm,
                _ => Family::Hm,
            };
            let name = family.to_string();
            let r = require(args.r, "r", &name)?;
            let m = require(args.m, "m", &name)?;
            let (g, bp) = build(family, r, m)?;
            let report = audit(&g, &bp);
            emit(&g, &bp.to_text(), &report.to_text(), output)?;
            report.passed()
        }
        GenFamily::Cayley => {
            let p = require(args.p, "p", "cayley")?;
            if args.a.is_empty() {
                bail!("cayley requires --a");
            }
            let g = cayley_graph(p, &args.a)?;
            // |A ∪ -A|
            let mut signed: Vec<usize> = args.a.iter().flat_map(|&a| [a, p - a]).collect();
            signed.sort_unstable();
            signed.dedup();
            let (text, passed) = simple_audit(&g, signed.len());
            let generators: Vec<String> = args.a.iter().map(usize::to_string).collect();
            let blueprint = format!("family=cayley p={p} a={}\n", generators.join(","));
            emit(&g, &blueprint, &text, output)?;
            passed
        }
        GenFamily::Random => {
            let n = require(args.n, "n", "random")?;
            let d = require(args.d, "d", "random")?;
            let g = random_regular_connected(n, d, args.seed)?;
            let (text, passed) = simple_audit(&g, d);
            let blueprint = format!("family=random n={n} d={d} seed={}\n", args.seed);
            emit(&g, &blueprint, &text, output)?;
            passed
        }
    };
    Ok(if passed { EXIT_HOLDS } else { EXIT_VIOLATION })
}

fn cmd_power(input: &Path, r: usize, output: Option<&Path>) -> Result<u8> {
    let g = read_graph(input)?;
    let result = graph_power(&g, r)?;
    match output {
        Some(path) => {
            fs::write(path, result.to_text())
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("{}", result.stats_line());
        }
        None => print!("{}", result.to_text()),
    }
    Ok(EXIT_HOLDS)
}

/// Violation beats holds beats inapplicable.
fn exit_for(verdicts: &[Verdict]) -> u8 {
    let statuses: Vec<_> = verdicts.iter().map(Verdict::status).collect();
    if statuses.contains(&VerdictStatus::Violation) {
        EXIT_VIOLATION
    } else if statuses.contains(&VerdictStatus::Holds) {
        EXIT_HOLDS
    } else {
        EXIT_INAPPLICABLE
    }
}

fn cmd_verify(input: &Path, r: usize, cayley: bool, all: bool, format: Format) -> Result<u8> {
    let g = read_graph(input)?;
    let verdicts = if all {
        let mut v = verify_all(&g, r);
        v.push(verify_theorem(&g, r, Theorem::CayleyRatio));
        v
    } else if cayley {
        vec![verify_cayley(&g, r)]
    } else {
        vec![verify(&g, r)]
    };
    match format {
        Format::Tsv => {
            for v in &verdicts {
                println!("{}", v.summary_line());
            }
        }
        Format::Json if all => println!("{}", serde_json::to_string(&verdicts)?),
        Format::Json => println!("{}", serde_json::to_string(&verdicts[0])?),
    }
    Ok(exit_for(&verdicts))
}

fn cmd_claims(input: &Path, r: usize, seed: u64, format: Format) -> Result<u8> {
    let g = read_graph(input)?;
    let options = AuditOptions {
        seed,
        ..AuditOptions::default()
    };
    let report = audit_claims_with(&g, r, &options);
    match format {
        Format::Tsv => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string(&report)?),
    }
    Ok(if !report.is_applicable() {
        EXIT_INAPPLICABLE
    } else if report.all_pass() {
        EXIT_HOLDS
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_convergence(family: Family, r: usize, (lo, hi): (usize, usize)) -> Result<u8> {
    if Family::for_power(r) != family {
        match family {
            Family::Gm => bail!("Gm requires r ≢ 0 mod 3"),
            Family::Hm => bail!("Hm requires r ≡ 0 mod 3"),
        }
    }
    let m_values: Vec<usize> = (lo..=hi).collect();
    let rows = convergence_table(r, &m_values)?;
    println!("m\torder\tratio\tbound\tgap\taudit");
    for row in &rows {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.m,
            row.order,
            row.ratio,
            row.bound,
            row.gap,
            if row.audit_passed { "PASS" } else { "FAIL" }
        );
    }
    let ok = gaps_positive_and_decreasing(&rows) && rows.iter().all(|row| row.audit_passed);
    Ok(if ok { EXIT_HOLDS } else { EXIT_VIOLATION })
}

fn cmd_scan(n: usize, d: usize, r: usize, trials: usize, seed: u64) -> Result<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let verdicts: Vec<Verdict> = seeds
        .par_iter()
        .map(|&s| random_regular_connected(n, d, s).map(|g| verify(&g, r)))
        .collect::<powergraph::Result<_>>()?;
    let mut counts = [0usize; 3];
    for (trial, (s, v)) in seeds.iter().zip(&verdicts).enumerate() {
        println!("trial={trial} seed={s} {}", v.summary_line());
        counts[v.status() as usize] += 1;
    }
    let [holds, violations, inapplicable] = counts;
    println!("violations={violations} holds={holds} inapplicable={inapplicable}");
    Ok(if violations > 0 { EXIT_VIOLATION } else { EXIT_HOLDS })
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("POWERGRAPH_THREADS") {
        let threads: usize = value
            .parse()
            .with_context(|| format!("POWERGRAPH_THREADS={value} is not a count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads()?;
    match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Power { input, r, output } => cmd_power(&input, r, output.as_deref()),
        Command::Verify {
            input,
            r,
            cayley,
            all,
            format,
        } => cmd_verify(&input, r, cayley, all, format),
        Command::Claims {
            input,
            r,
            seed,
            format,
        } => cmd_claims(&input, r, seed, format),
        Command::Convergence { family, r, m } => cmd_convergence(family, r, m),
        Command::Scan {
            n,
            d,
            r,
            trials,
            seed,
        } => cmd_scan(n, d, r, trials, seed),
    }
}

fn main() -> ExitCode {
    // clap would exit with 2 on bad usage, which is reserved for "inapplicable"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
