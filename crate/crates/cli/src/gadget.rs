//! `ncte gadget`: reduction gadgets written as instance files.

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use ncte::reductions::verify::{check_2dp, check_kdsp, check_mcp, check_node_split, check_prop1};
use ncte::reductions::{gadget_2dp_to_swt, gadget_kdsp, gadget_mcp, gadget_node_split, gadget_prop1, GadgetInstance};
use ncte::NodeId;

use crate::{load, options, write_atomic, Cli, Input, Missing};

#[derive(Debug, Args)]
pub(crate) struct GadgetArgs {
    #[command(subcommand)]
    kind: Kind,
    /// Also decide both sides by brute force and report whether they agree.
    #[arg(long, global = true)]
    check: bool,
}

#[derive(Debug, Subcommand)]
enum Kind {
    /// Two node-disjoint paths u1->v1, u2->v2 to a simple path through w.
    #[command(name = "2dp")]
    TwoDp {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        u1: String,
        #[arg(long)]
        u2: String,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Split every node into an in/out pair joined by an edge.
    NodeSplit {
        #[command(flatten)]
        input: Input,
        /// Check only: source node in the original graph.
        #[arg(long)]
        s: Option<String>,
        /// Check only: middlepoint in the original graph.
        #[arg(long)]
        w: Option<String>,
        /// Check only: sink node in the original graph.
        #[arg(long)]
        t: Option<String>,
    },
    /// Unit capacities and one unit of demand from s to t through w.
    UnitFlow {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        w: String,
    },
    /// Maximum coverage to N-group flow.
    Mcp {
        /// Number of items, labelled 0..items.
        #[arg(long)]
        items: usize,
        /// One set as comma-separated item indices; repeat per set.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        /// Number of sets that may be chosen.
        #[arg(long)]
        n: usize,
    },
    /// Disjoint shortest paths to segment routing.
    Kdsp {
        #[command(flatten)]
        input: Input,
        /// Terminal pair as `u:v`; repeat per pair.
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
    },
}

fn parse_set(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad item index `{s}`")))
        .collect()
}

pub(crate) fn run(cli: &Cli, args: &GadgetArgs) -> Result<()> {
    let cap = cli.max_paths;
    let (gadget, verdict): (GadgetInstance, Option<String>) = match &args.kind {
        Kind::TwoDp { input, u1, u2, v1, v2 } => {
            let ld = load(input)?;
            let [a, b, c, d] = [u1, u2, v1, v2].map(|n| ld.node(n));
            let (a, b, c, d) = (a?, b?, c?, d?);
            let g = gadget_2dp_to_swt(ld.net(), a, b, c, d)?;
            let verdict = args.check.then(|| check_2dp(ld.net(), a, b, c, d, cap)).transpose()?;
            (g, verdict.map(|e| format_equivalence(e.source, e.gadget, e.holds())))
        }
        Kind::NodeSplit { input, s, w, t } => {
            let ld = load(input)?;
            let g = gadget_node_split(ld.net())?;
            let verdict = if args.check {
                let s = ld.node(s.as_deref().ok_or(Missing("source s", "s"))?)?;
                let w = match w {
                    Some(name) => ld.node(name)?,
                    None => ld.instance.designated.w.ok_or(Missing("node w", "w"))?,
                };
                let t = ld.node(t.as_deref().ok_or(Missing("sink t", "t"))?)?;
                let e = check_node_split(ld.net(), s, w, t, cap)?;
                Some(format_equivalence(e.source, e.gadget, e.holds()))
            } else {
                None
            };
            (g, verdict)
        }
        Kind::UnitFlow { input, s, t, w } => {
            let ld = load(input)?;
            let (s, t, w) = (ld.node(s)?, ld.node(t)?, ld.node(w)?);
            let g = gadget_prop1(ld.net(), s, t, w)?;
            let verdict = args.check.then(|| check_prop1(ld.net(), s, t, w, cap)).transpose()?;
            (g, verdict.map(|e| format_equivalence(e.source, e.gadget, e.holds())))
        }
        Kind::Mcp { items, sets, n } => {
            let sets: Vec<Vec<usize>> = sets.iter().map(|s| parse_set(s)).collect::<Result<_>>()?;
            let g = gadget_mcp(*items, &sets, *n)?;
            let verdict = if args.check {
                let c = check_mcp(*items, &sets, *n, &options(cli, false))?;
                Some(format!(
                    "coverage {}, group flow {}, {}",
                    ncte::rational::format(&c.source),
                    ncte::rational::format(&c.gadget),
                    if c.holds() { "equal" } else { "DIFFERENT" }
                ))
            } else {
                None
            };
            (g, verdict)
        }
        Kind::Kdsp { input, pairs } => {
            let ld = load(input)?;
            let pairs: Vec<(NodeId, NodeId)> = pairs
                .iter()
                .map(|p| match p.split_once(':') {
                    Some((u, v)) => Ok((ld.node(u)?, ld.node(v)?)),
                    None => bail!("pair `{p}` is not of the form u:v"),
                })
                .collect::<Result<_>>()?;
            let g = gadget_kdsp(ld.net(), &pairs)?;
            let verdict = args.check.then(|| check_kdsp(ld.net(), &pairs, cap)).transpose()?;
            (g, verdict.map(|e| format_equivalence(e.source, e.gadget, e.holds())))
        }
    };
    let json = gadget.to_instance().to_json();
    let summary = format!(
        "gadget {}: {} nodes, {} edges, {} commodities",
        gadget.kind.name(),
        gadget.network.node_count(),
        gadget.network.edges().len(),
        gadget.network.commodities().len()
    );
    match &cli.output {
        Some(path) => {
            write_atomic(path, &json)?;
            println!("{summary}");
            println!("written to {}", path.display());
            if let Some(v) = verdict {
                println!("check: {v}");
            }
        }
        None => {
            print!("{json}");
            eprintln!("{summary}");
            if let Some(v) = verdict {
                eprintln!("check: {v}");
            }
        }
    }
    Ok(())
}

fn format_equivalence(source: bool, gadget: bool, holds: bool) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!("source {}, gadget {}, {}", yn(source), yn(gadget), if holds { "equivalent" } else { "MISMATCH" })
}
