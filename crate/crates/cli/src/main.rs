//! `ddom`: batch front end for the disjunctive domination library.
//!
//! Graphs travel as graph6 lines on stdin/stdout. Reports go to stderr, or
//! to the file named by `--out`. Exit status is 0 when there are no
//! counterexamples and no errors, 1 when a counterexample was found, and 2
//! on any error.

mod checks;
mod input;
mod report;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use ddom::bound::{replay, BoundError, BoundOptions, DEFAULT_KERNEL_CAP};
use ddom::catalog::{self, Catalog};
use ddom::enumeration::{enumerate, GenSpec};
use ddom::families::{FamilyError, FamilySpec};
use ddom::{gamma_d2, parse_graph6, to_graph6, Certificate, ReductionTrace};
use rayon::prelude::*;

use checks::{Statement, SweepConfig};
use report::{Counterexample, Format, OrderRow, RunReport};

const SPEC_GRAMMAR: &str = "\
Family spec grammar:
  cycle:N                      the cycle C_N
  tadpole:S,T                  C_{S,T}: an S-cycle with a T-vertex tail
  star:T                       the subdivided star S(K_{1,T})
  f:[G,G,...]                  gadgets joined at a hub; G is c3, c4, c5 or cR-K
  t:BASE/U+U+...               a unit (4,2 or 5,1) hung on every base vertex;
                               BASE is pathN, cycleN, completeN or g6=<graph6>;
                               one unit applies to all base vertices
  u:N                          the N-clique extremal graph
  attach:<graph6>:v=V:gadget=NAME:anchor=A
                               NAME is C4, C5 or C4,1

Examples: u:2   t:path4/4,2   tadpole:5,1   f:[c3,c3,c4-5]";

#[derive(Parser)]
#[command(name = "ddom", version, about = "Disjunctive domination: exact values, bound certificates and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest order swept by check-bound and discover-forbidden.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Kernels up to this order are solved exactly by the bound engine.
    #[arg(long, global = true, default_value_t = DEFAULT_KERNEL_CAP)]
    kernel_cap: usize,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Forbidden-family catalog to use instead of the built-in one.
    #[arg(long, global = true, env = "CATALOG_PATH")]
    catalog_path: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the run report here instead of stderr.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Restrict the bound engine to linkage contraction and pendant gadgets.
    #[arg(long, global = true)]
    core_rules_only: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact γ²ᵈ with an optimal set for every graph6 line.
    Solve {
        /// Input file; stdin when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Exhaustively checks a bound over all graphs up to --n-max.
    CheckBound {
        statement: Statement,
        /// Read graphs from this graph6 file (`-` for stdin) instead of generating them.
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Rediscovers the forbidden family by enumeration and compares it with the catalog.
    DiscoverForbidden,
    /// Builds a graph from a family spec.
    #[command(after_long_help = SPEC_GRAMMAR)]
    Generate { spec: String },
    /// Certifies γ²ᵈ <= ⌊n/3⌋ with the reduction engine.
    Certify {
        input: Option<PathBuf>,
        /// Skip graphs that fail the hypotheses instead of stopping.
        #[arg(long)]
        skip_invalid: bool,
        /// Write each reduction trace to DIR/<line>.trace.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
    },
    /// Replays a saved reduction trace on a graph.
    Replay { graph6: String, trace: PathBuf },
    /// Generates graphs: every class of order N, or random samples.
    Enumerate {
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        #[arg(long)]
        claw_free: bool,
        /// Draw this many random connected graphs of minimum degree 2.
        #[arg(long)]
        random: Option<usize>,
        /// Edge range LO:HI for random mode (default N:⌊3N/2⌋).
        #[arg(long)]
        edges: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    if let Some(path) = &cli.catalog_path {
        let cat = Catalog::load(path).with_context(|| format!("loading catalog {}", path.display()))?;
        cat.validate().context("catalog failed validation")?;
        catalog::set_active(cat)?;
    }
    let opts = BoundOptions { kernel_cap: cli.kernel_cap, extended: !cli.core_rules_only };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match &cli.command {
        Command::Solve { input } => solve(cli, input.as_deref(), &mut out)?,
        Command::CheckBound { statement, source } => {
            let started = Instant::now();
            let source = match source {
                Some(p) => Some(input::read_graphs(Some(p))?.into_iter().map(|g| g.graph).collect()),
                None => None,
            };
            let n_max = cli.n_max.unwrap_or(statement.default_n_max());
            let mut report = checks::check_bound(*statement, &SweepConfig { n_max, bound: opts, source })?;
            report.elapsed = started.elapsed();
            for c in &report.counterexamples {
                writeln!(out, "{}", c.graph6)?;
            }
            emit_report(cli, &report, true)?;
            report.ok()
        }
        Command::DiscoverForbidden => {
            let started = Instant::now();
            let (mut report, found) = checks::discover_forbidden(cli.n_max.unwrap_or(8))?;
            report.elapsed = started.elapsed();
            for g in &found {
                writeln!(out, "{}", to_graph6(g))?;
            }
            emit_report(cli, &report, true)?;
            report.ok()
        }
        Command::Generate { spec } => {
            let g = spec.parse::<FamilySpec>().and_then(|s| s.build()).map_err(|e| spec_error(spec, e))?;
            match cli.format {
                Format::Text => writeln!(out, "{}", to_graph6(&g))?,
                Format::Records => writeln!(out, "{}\t{}\t{}\t{}", to_graph6(&g), g.order(), g.size(), spec)?,
            }
            true
        }
        Command::Certify { input, skip_invalid, trace_dir } => {
            certify(cli, opts, input.as_deref(), *skip_invalid, trace_dir.as_deref(), &mut out)?
        }
        Command::Replay { graph6, trace } => {
            let g = parse_graph6(graph6)?;
            let text = fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
            let trace: ReductionTrace = text.parse()?;
            if trace.order != g.order() {
                bail!("trace is for order {}, graph has order {}", trace.order, g.order());
            }
            let set = replay(&g, &trace.root)?;
            let cert = Certificate::new(&g, set)?;
            writeln!(out, "{}", cert.to_record(&g))?;
            cert.verified && cert.size <= g.order() / 3
        }
        Command::Enumerate { n, connected, min_degree, claw_free, random, edges } => {
            let mut spec = match random {
                Some(count) => {
                    let range = match edges {
                        Some(text) => parse_range(text)?,
                        None => (*n, 3 * n / 2),
                    };
                    GenSpec::random(*n, cli.seed, *count, range)
                }
                None => GenSpec::exhaustive(*n).min_degree(*min_degree),
            };
            spec.connected |= connected;
            spec.claw_free |= claw_free;
            let graphs = enumerate(&spec)?;
            for g in &graphs {
                writeln!(out, "{}", to_graph6(g))?;
            }
            eprintln!(
                "summary\tn\t{n}\tclasses\t{}\tconnected\t{}\tmin-degree\t{}\tclaw-free\t{}\tmode\t{}",
                graphs.len(),
                spec.connected,
                spec.min_degree,
                spec.claw_free,
                if random.is_some() { "random" } else { "exhaustive" }
            );
            true
        }
    };
    out.flush()?;
    Ok(ok)
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| anyhow!("edge range {text:?} is not LO:HI"))?;
    let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo > hi {
        bail!("edge range {text:?} is empty");
    }
    Ok((lo, hi))
}

fn spec_error(spec: &str, e: FamilyError) -> anyhow::Error {
    match e {
        FamilyError::Syntax { position, .. } => anyhow!("{e}\n  {spec}\n  {}^", " ".repeat(position)),
        other => anyhow!(other),
    }
}

/// Reports go to `--out` when given; otherwise to stderr if `always`.
fn emit_report(cli: &Cli, report: &RunReport, always: bool) -> Result<()> {
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None if always => eprint!("{text}"),
        None => {}
    }
    Ok(())
}

fn solve(cli: &Cli, path: Option<&Path>, out: &mut impl Write) -> Result<bool> {
    let started = Instant::now();
    let graphs = input::read_graphs(path)?;
    let results: Vec<Result<Certificate>> = graphs
        .par_iter()
        .map(|g| gamma_d2(&g.graph, None).with_context(|| format!("line {}", g.line)))
        .collect();
    let mut report = RunReport::new("solve");
    report.input("graphs", graphs.len());
    for (g, res) in graphs.iter().zip(results) {
        let cert = res?;
        if !cert.verified {
            report.counterexamples.push(Counterexample {
                graph6: to_graph6(&g.graph),
                value: Some(cert.size),
                bound: cert.size,
                note: format!("line {}: certificate failed verification", g.line),
            });
        }
        match cli.format {
            Format::Text => writeln!(out, "{}", cert.size)?,
            Format::Records => writeln!(out, "{}", cert.to_record(&g.graph))?,
        }
        add_to_row(&mut report, g.graph.order(), cert.size, !cert.verified);
    }
    report.elapsed = started.elapsed();
    emit_report(cli, &report, false)?;
    Ok(report.ok())
}

fn add_to_row(report: &mut RunReport, n: usize, value: usize, violation: bool) {
    let idx = match report.rows.binary_search_by_key(&n, |r| r.n) {
        Ok(i) => i,
        Err(i) => {
            report.rows.insert(i, OrderRow { n, ..OrderRow::default() });
            i
        }
    };
    let row = &mut report.rows[idx];
    row.graphs += 1;
    row.checked += 1;
    row.max_value = row.max_value.max(value);
    row.violations += usize::from(violation);
}

fn certify(
    cli: &Cli,
    opts: BoundOptions,
    path: Option<&Path>,
    skip_invalid: bool,
    trace_dir: Option<&Path>,
    out: &mut impl Write,
) -> Result<bool> {
    let started = Instant::now();
    let graphs = input::read_graphs(path)?;
    if let Some(dir) = trace_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let results: Vec<_> = graphs.par_iter().map(|g| ddom::certify_bound_with(&g.graph, opts)).collect();
    let mut report = RunReport::new("certify");
    report.input("graphs", graphs.len());
    report.input("kernel-cap", opts.kernel_cap);
    report.input("rules", if opts.extended { "extended" } else { "core" });
    let mut skipped = 0;
    for (g, res) in graphs.iter().zip(results) {
        let n = g.graph.order();
        let cert = match res {
            Ok(cert) => cert,
            Err(BoundError::Precondition(why)) if skip_invalid => {
                skipped += 1;
                eprintln!("line {}: skipped: {why}", g.line);
                continue;
            }
            Err(e @ BoundError::Precondition(_)) => bail!("line {}: {e}", g.line),
            Err(e) => {
                eprintln!("line {}: {e}", g.line);
                report.counterexamples.push(Counterexample {
                    graph6: to_graph6(&g.graph),
                    value: None,
                    bound: n / 3,
                    note: format!("line {}: {e}", g.line),
                });
                add_to_row(&mut report, n, 0, true);
                continue;
            }
        };
        let trace = cert.trace.as_ref().expect("the engine attaches its trace");
        if let Some(dir) = trace_dir {
            let file = dir.join(format!("{}.trace", g.line));
            fs::write(&file, trace.to_string()).with_context(|| format!("writing {}", file.display()))?;
        }
        match cli.format {
            Format::Text => {
                let rules: Vec<String> = trace.rule_counts().into_iter().map(|(r, c)| format!("{r}:{c}")).collect();
                writeln!(out, "size={} bound={} rules={}", cert.size, n / 3, rules.join(","))?;
            }
            Format::Records => writeln!(out, "{}", cert.to_record(&g.graph))?,
        }
        add_to_row(&mut report, n, cert.size, false);
    }
    report.input("skipped", skipped);
    report.elapsed = started.elapsed();
    emit_report(cli, &report, false)?;
    Ok(report.ok())
}
