use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use turan_core::constructions as cons;
use turan_core::families::{covering_family, edge_deleted_family, vertex_coverings};
use turan_core::graph::bits;
use turan_core::oracle::{ExCache, DEFAULT_SEARCH_BUDGET};
use turan_core::structure::p_value;
use turan_core::verify::{self, emit_report, Context, Format, VerificationReport};
use turan_core::{Connectivity, GraphFamily, SmallGraph, TuranError};

#[derive(Parser)]
#[command(name = "turan", version, about = "Exact Turán numbers for long cycles plus a fixed graph")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Search node budget (default: $TURAN_BUDGET, else 2e9).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Do not read or write the result cache ($TURAN_CACHE).
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute ex(n, 𝓕) exactly.
    Ex(ExArgs),
    /// Build one of the extremal constructions and print it.
    #[command(subcommand)]
    Construct(Construct),
    /// Derived families of a graph.
    Family {
        #[arg(value_parser = ["coverings", "h", "hprime", "pvalue"])]
        what: String,
        #[arg(long)]
        graph: String,
        /// Keep non-minimal members of 𝓗.
        #[arg(long)]
        full: bool,
    },
    /// Run a verifier and emit its report.
    Verify {
        #[command(subcommand)]
        target: Target,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Re-emit a JSON report in another format.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    /// Forbid every cycle of length at least K.
    #[arg(long)]
    forbid_cycles_geq: Option<usize>,
    /// Forbidden graph: `g6:<code>` or a builtin name such as K4, K33, C5, W5.
    #[arg(long)]
    forbid: Vec<String>,
    #[arg(long, conflicts_with = "connected")]
    two_connected: bool,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    witnesses: bool,
}

#[derive(Subcommand)]
enum Construct {
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    Fnkr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    G1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    G2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// T ∨ I_{n−|T|}.
    Join {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        n: usize,
    },
    /// One-point union of the parts.
    Chain {
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        /// Shared vertex of each part (default 0 for all).
        #[arg(long = "anchor")]
        anchors: Vec<usize>,
    },
    Friendship {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum Target {
    Fact(LemmaArgs),
    Bondy(LemmaArgs),
    Exterior(LemmaArgs),
    CycleEdge {
        #[arg(long, default_value = "K4")]
        graph: String,
        /// Cycle lengths, e.g. `4..=8` or `5,6`.
        #[arg(long, default_value = "3..=8")]
        c: String,
        /// Largest order of the exhaustive host pass.
        #[arg(long, default_value_t = 7)]
        exhaustive_n: usize,
    },
    Kr {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "1..=9")]
        n: String,
    },
    TwoConn {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "K4")]
        graph: String,
        #[arg(long, default_value = "7..=10")]
        n: String,
        #[arg(long, default_value_t = 12)]
        construction_max: usize,
        #[arg(long, default_value_t = 8)]
        corollary_max: usize,
    },
    General {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "K4")]
        graph: String,
        #[arg(long, default_value = "1..=10")]
        n: String,
        #[arg(long, default_value_t = 12)]
        construction_max: usize,
        /// Accept F with a cut vertex (upper bound only).
        #[arg(long)]
        allow_non_two_connected: bool,
        #[arg(long)]
        no_block_checks: bool,
    },
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    /// Permit n_max = 8.
    #[arg(long)]
    extended: bool,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn parse_ns(s: &str) -> Result<Vec<usize>, TuranError> {
    let bad = || TuranError::InvalidArgument(format!("bad range {s:?}"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..=") {
        Ok((num(a)?..=num(b)?).collect())
    } else if let Some((a, b)) = s.split_once("..") {
        Ok((num(a)?..num(b)?).collect())
    } else {
        s.split(',').map(num).collect()
    }
}

fn budget(cli: &Cli) -> Result<u64, TuranError> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var("TURAN_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|b| *b >= 1.0)
            .map(|b| b as u64)
            .ok_or_else(|| TuranError::InvalidArgument(format!("TURAN_BUDGET={v:?}"))),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

fn context(cli: &Cli) -> Result<Context, TuranError> {
    Ok(Context {
        cache: (!cli.no_cache).then(ExCache::from_env),
        node_budget: budget(cli)?,
    })
}

fn graph_json(g: &SmallGraph) -> serde_json::Value {
    json!({"graph6": g.to_string(), "n": g.order(), "edges": g.edge_count()})
}

fn write_out(text: &str, out: &OutArgs) -> Result<(), TuranError> {
    match &out.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit(report: &VerificationReport, out: &OutArgs) -> Result<ExitCode, TuranError> {
    let format: Format = out.format.parse()?;
    write_out(&emit_report(report, format), out)?;
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn lemma_n(a: &LemmaArgs) -> Result<usize, TuranError> {
    if a.n_max > 7 && !a.extended {
        return Err(TuranError::InvalidArgument("n_max above 7 needs --extended".into()));
    }
    Ok(a.n_max)
}

fn run(cli: &Cli) -> Result<ExitCode, TuranError> {
    match &cli.cmd {
        Cmd::Ex(a) => {
            let members = a.forbid.iter().map(|s| SmallGraph::parse(s)).collect::<Result<Vec<_>, _>>()?;
            let fam = GraphFamily::new(members, a.forbid_cycles_geq)?;
            let connectivity = if a.two_connected {
                Connectivity::TwoConnected
            } else if a.connected {
                Connectivity::Connected
            } else {
                Connectivity::Any
            };
            let ctx = context(cli)?;
            let rec = ctx.ex(a.n, &fam, connectivity, a.witnesses)?;
            println!("{}", serde_json::to_string_pretty(&rec).expect("records serialise"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Construct(c) => {
            let g = match c {
                Construct::Turan { n, r } => cons::turan_graph(*n, *r)?,
                Construct::Fnkr { n, k, r } => cons::f_nkr_graph(*n, *k, *r)?,
                Construct::G1 { n, k } => cons::g1_graph(*n, *k)?,
                Construct::G2 { n, k, r } => cons::g2_graph(*n, *k, *r)?,
                Construct::Join { graph, n } => cons::join_extremal(&SmallGraph::parse(graph)?, *n)?,
                Construct::Chain { parts, anchors } => {
                    let parts = parts.iter().map(|s| SmallGraph::parse(s)).collect::<Result<Vec<_>, _>>()?;
                    let anchors = if anchors.is_empty() { vec![0; parts.len()] } else { anchors.clone() };
                    cons::chain_amalgam_at(&parts, &anchors)?
                }
                Construct::Friendship { m } => cons::friendship_graph(*m)?,
            };
            println!("{}", graph_json(&g));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Family { what, graph, full } => {
            let f = SmallGraph::parse(graph)?;
            let value = match what.as_str() {
                "coverings" => {
                    let sets: Vec<Vec<usize>> = vertex_coverings(&f)?.into_iter().map(|m| bits(m).collect()).collect();
                    json!(sets)
                }
                "h" => json!(covering_family(&f, !full)?.member_graph6()),
                "hprime" => json!(edge_deleted_family(&f)?.member_graph6()),
                _ => json!(p_value(&f).to_string()),
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { target, out } => {
            let ctx = context(cli)?;
            let report = match target {
                Target::Fact(a) => verify::verify_degree_fact(lemma_n(a)?)?,
                Target::Bondy(a) => verify::verify_bondy(lemma_n(a)?)?,
                Target::Exterior(a) => verify::verify_exterior_strengthened(lemma_n(a)?)?,
                Target::CycleEdge { graph, c, exhaustive_n } => {
                    verify::verify_cycle_edge_lemma(&SmallGraph::parse(graph)?, &parse_ns(c)?, *exhaustive_n, &ctx)?
                }
                Target::Kr { k, r, n } => verify::verify_kr_theorems(*k, *r, &parse_ns(n)?, &ctx)?,
                Target::TwoConn {
                    k,
                    graph,
                    n,
                    construction_max,
                    corollary_max,
                } => verify::verify_two_connected(
                    *k,
                    &SmallGraph::parse(graph)?,
                    &parse_ns(n)?,
                    &verify::TwoConnectedOptions {
                        construction_max: *construction_max,
                        corollary_max: *corollary_max,
                    },
                    &ctx,
                )?,
                Target::General {
                    k,
                    graph,
                    n,
                    construction_max,
                    allow_non_two_connected,
                    no_block_checks,
                } => verify::verify_general(
                    *k,
                    &SmallGraph::parse(graph)?,
                    &parse_ns(n)?,
                    &verify::GeneralOptions {
                        allow_non_two_connected: *allow_non_two_connected,
                        construction_max: *construction_max,
                        block_checks: !no_block_checks,
                    },
                    &ctx,
                )?,
            };
            emit(&report, out)
        }
        Cmd::Report { input, out } => {
            let text = std::fs::read_to_string(input)?;
            let report: VerificationReport =
                serde_json::from_str(&text).map_err(|e| TuranError::InvalidArgument(format!("not a report: {e}")))?;
            emit(&report, out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global() {
            eprintln!("turan: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("turan: {e}");
            ExitCode::from(2)
        }
    }
}
