use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gpbounds::bounds::{self, real, BoundsError};
use gpbounds::{
    construct, exact_min_cover, lemma1_cover, verify_exact_cover, ConstructionStrategy, Cover,
    PairingPlan, SearchBudget, SearchError, StrategyKind, VertexId,
};
use serde::Serialize;

mod tables;

/// Exit statuses; clap usage errors also map to `USAGE`.
const USAGE: u8 = 1;
const NOT_EXACT: u8 = 2;
const BUDGET_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gpbounds",
    version,
    about = "Covers of complete r-graphs by complete r-partite blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cover and write it as JSON.
    Construct(ConstructArgs),
    /// Check that a cover partitions its edge family exactly.
    Verify(VerifyArgs),
    /// Tabulate lower bound, c_r, prior and closed-form coefficients, or a finite trace.
    Bounds(BoundsArgs),
    /// Tabulate exact coefficients and the pairing choices behind them.
    Coeffs(CoeffsArgs),
    /// Smallest odd r with c_r < 1.
    Threshold(ThresholdArgs),
    /// Largest even r where the closed form beats the prior coefficient.
    Crossover(CrossoverArgs),
    /// Exact minimum cover of a tiny complete r-graph.
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Out {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Baseline,
    Halving,
    OddPairing,
    Lemma1,
}

/// `default`, `intervals`, or `products:t1,t2,…`.
#[derive(Clone)]
struct Pairing(PairingPlan);

impl FromStr for Pairing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "default" => Ok(Pairing(PairingPlan::Default)),
            "intervals" | "all-lemma1" => Ok(Pairing(PairingPlan::IntervalsOnly)),
            _ => {
                let list = s
                    .strip_prefix("products:")
                    .ok_or_else(|| format!("unknown pairing plan {s:?}"))?;
                let set = list
                    .split(',')
                    .filter(|x| !x.is_empty())
                    .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                Ok(Pairing(PairingPlan::Products(set)))
            }
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    /// Arity; implied by a and b for lemma1.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "baseline")]
    strategy: Strategy,
    /// Vertex lists up to this size use the baseline cover (default max(2r, 8)).
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long, default_value = "default")]
    pairing: Pairing,
    /// lemma1: even number of vertices taken from S.
    #[arg(long)]
    a: Option<usize>,
    /// lemma1: even number of vertices taken from T.
    #[arg(long)]
    b: Option<usize>,
    /// lemma1: |S|; S is the first s vertices (default ⌈n/2⌉).
    #[arg(long)]
    s: Option<usize>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cover JSON; read from stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    from: usize,
    #[arg(long = "to", alias = "max", default_value_t = 20)]
    to: usize,
    /// Emit the finite bound trace of arity --r up to n = 2^K instead.
    #[arg(long, value_name = "K")]
    trace: Option<u32>,
    #[arg(long)]
    r: Option<usize>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long, default_value_t = 1)]
    from: usize,
    #[arg(long = "to", alias = "max", default_value_t = 20)]
    to: usize,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Largest odd r examined.
    #[arg(long, default_value_t = 301)]
    max: usize,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct CrossoverArgs {
    #[arg(long, default_value_t = 2000)]
    limit: usize,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    max_nodes: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = SearchBudget::default().time_limit.as_secs())]
    time_limit: u64,
    #[command(flatten)]
    out: Out,
}

fn main() -> ExitCode {
    ExitCode::from(execute(std::env::args_os()))
}

/// Parses `args` (program name first), runs the command and returns the exit status.
fn execute<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { USAGE } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            USAGE
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => tables::cmd_bounds(a),
        Command::Coeffs(a) => tables::cmd_coeffs(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::Crossover(a) => cmd_crossover(a),
        Command::Search(a) => cmd_search(a),
    }
}

fn emit(out: &Out, body: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().lock().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn reject_csv(out: &Out, what: &str) -> Result<()> {
    if out.format == Format::Csv {
        bail!("{what} has no CSV form; use json or text");
    }
    Ok(())
}

fn vertices(n: usize) -> Vec<VertexId> {
    (0..n as VertexId).collect()
}

fn cmd_construct(a: ConstructArgs) -> Result<u8> {
    reject_csv(&a.out, "a cover")?;
    let verts = vertices(a.n);
    let cover = match a.strategy {
        Strategy::Lemma1 => {
            let (Some(pa), Some(pb)) = (a.a, a.b) else {
                bail!("lemma1 needs --a and --b");
            };
            if let Some(r) = a.r {
                if r != pa + pb + 1 {
                    bail!("lemma1 covers arity a+b+1 = {}, not --r {r}", pa + pb + 1);
                }
            }
            let s = a.s.unwrap_or(a.n.div_ceil(2));
            if s > a.n {
                bail!("--s {s} exceeds --n {}", a.n);
            }
            lemma1_cover(&verts[..s], &verts[s..], pa, pb)?
        }
        kind => {
            let r = a.r.context("--r is required")?;
            let kind = match kind {
                Strategy::Baseline => StrategyKind::Baseline,
                Strategy::Halving => StrategyKind::Halving,
                _ => StrategyKind::OddPairing,
            };
            let mut strategy = ConstructionStrategy::new(kind, r).with_pairing(a.pairing.0);
            if let Some(t) = a.threshold {
                strategy = strategy.with_threshold(t, r)?;
            }
            construct(&verts, r, &strategy)?
        }
    };
    let body = match a.out.format {
        Format::Text => {
            let mut s = format!(
                "{} on {} vertices, r = {}: {} blocks\n",
                cover.construction,
                cover.n,
                cover.r,
                cover.len()
            );
            for b in &cover.blocks {
                s += &format!("{:?}\n", b.parts());
            }
            s
        }
        _ => to_json(&cover)?,
    };
    emit(&a.out, &body)?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    reject_csv(&a.out, "a verification report")?;
    let text = match &a.input {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let cover: Cover = serde_json::from_str(&text).context("parsing cover JSON")?;
    let report = verify_exact_cover(&cover, &cover.family)?;
    let body = match a.out.format {
        Format::Text => format!(
            "exact: {}\nfamily edges: {}\ncovered once: {}\nblock edges: {}\nuncovered (sample): {}\nmultiply covered (sample): {}\nforeign (sample): {}\n",
            report.is_exact,
            report.family_size,
            report.covered_once,
            report.block_edge_total,
            report.uncovered.len(),
            report.multiply_covered.len(),
            report.foreign.len()
        ),
        _ => to_json(&report)?,
    };
    emit(&a.out, &body)?;
    Ok(if report.is_exact { 0 } else { NOT_EXACT })
}

#[derive(Serialize)]
struct ThresholdOutput {
    r_max: usize,
    r_star: Option<usize>,
    c_r_star: Option<String>,
    c_r_star_decimal: Option<String>,
}

fn cmd_threshold(a: ThresholdArgs) -> Result<u8> {
    let found = match bounds::smallest_odd_below_one(a.max) {
        Ok(t) => Some(t),
        Err(BoundsError::NotFound { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let star = found
        .as_ref()
        .and_then(|t| t.table.iter().find(|c| c.r == t.r_star));
    let body = match a.out.format {
        Format::Json => to_json(&ThresholdOutput {
            r_max: a.max,
            r_star: star.map(|c| c.r),
            c_r_star: star.map(|c| c.value.to_string()),
            c_r_star_decimal: star.map(|c| real::format_rational(&c.value, real::DISPLAY_DIGITS)),
        })?,
        Format::Text => match star {
            Some(c) => format!(
                "r* = {} (c_{} = {})\n",
                c.r,
                c.r,
                real::format_rational(&c.value, real::DISPLAY_DIGITS)
            ),
            None => format!("no odd r <= {} has c_r < 1\n", a.max),
        },
        Format::Csv => {
            let mut s = String::from("r,c_r_decimal,below_one\n");
            if let Some(t) = &found {
                for c in &t.table {
                    s += &format!(
                        "{},{},{}\n",
                        c.r,
                        real::format_rational(&c.value, real::DISPLAY_DIGITS),
                        c.value < bounds::Rational::ONE
                    );
                }
            }
            s
        }
    };
    emit(&a.out, &body)?;
    Ok(0)
}

#[derive(Serialize)]
struct CrossoverOutput {
    limit: usize,
    largest_even: Option<usize>,
}

fn cmd_crossover(a: CrossoverArgs) -> Result<u8> {
    reject_csv(&a.out, "a crossover result")?;
    let largest = bounds::crossover_even(a.limit);
    let body = match a.out.format {
        Format::Text => match largest {
            Some(r) => format!("{r}\n"),
            None => "none\n".to_string(),
        },
        _ => to_json(&CrossoverOutput {
            limit: a.limit,
            largest_even: largest,
        })?,
    };
    emit(&a.out, &body)?;
    Ok(0)
}

fn cmd_search(a: SearchArgs) -> Result<u8> {
    reject_csv(&a.out, "a search result")?;
    let budget = SearchBudget {
        max_nodes: a.max_nodes,
        time_limit: Duration::from_secs(a.time_limit),
    };
    let (result, code) = match exact_min_cover(a.n, a.r, budget) {
        Ok(res) => (res, 0),
        Err(SearchError::BudgetExceeded { best }) => (*best, BUDGET_EXCEEDED),
        Err(e) => return Err(e.into()),
    };
    let body = match a.out.format {
        Format::Text => format!(
            "minimum = {}{} ({} nodes)\n",
            result.minimum,
            if result.exhausted {
                ""
            } else {
                " (upper bound; budget exceeded)"
            },
            result.nodes_explored
        ),
        _ => to_json(&result)?,
    };
    emit(&a.out, &body)?;
    Ok(code)
}
