mod gadget;
mod record;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncte::catalog::{self, Builtin};
use ncte::centrality::{
    check_pair_recovery, flow_centrality_multi, flow_centrality_single, group_flow, n_group_max_flow, submodularity_probe,
    CentralityOptions, CentralityReport, NGroupMethod, DEFAULT_MAX_NODES,
};
use ncte::constrained::{
    augmenting_w_flow, max_set_flow, max_w_flow_exact, max_w_flow_simple_exact, max_w_flow_undirected,
    max_w_flow_undirected_norepeat, min_swt_edge_cut, AugmentOrder,
};
use ncte::instance::Instance;
use ncte::paths::{all_families, EdgeReuse, EnumOptions, PathConstraint, DEFAULT_PATH_CAP};
use ncte::sr::{
    acyclic_feasible, build_tunnels, detect_cycles, solve_sr_lu, solve_sr_mf, AcyclicAnswer, AcyclicMode,
    MiddlepointConfig, DEFAULT_COMBINATION_CAP,
};
use ncte::te::{solve_te_lu, solve_te_mf, FlowSolution};
use ncte::{FlowNetwork, NodeId};
use sha2::{Digest, Sha256};

use record::ResultRecord;

/// Traffic engineering with node constraints: exact LPs over small networks.
#[derive(Debug, Parser)]
#[command(name = "ncte", version)]
pub(crate) struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Rendering for stdout, or for the --output file when one is given.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Also write the result to this file (stdout then shows the table).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Path enumeration cap per commodity.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP, global = true)]
    pub max_paths: usize,

    /// Largest directed network the exact centrality routines accept.
    #[arg(long, default_value_t = DEFAULT_MAX_NODES, global = true)]
    pub max_nodes_exact: usize,

    /// Report wall-clock runtime (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Table,
    Csv,
    Structured,
}

#[derive(Debug, Args)]
pub(crate) struct Input {
    /// Instance file (JSON).
    #[arg(conflicts_with = "builtin")]
    pub instance: Option<PathBuf>,
    /// Built-in instance name; see `ncte catalog`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WMethod {
    /// Transform LP for undirected networks, path LP for directed ones.
    Auto,
    /// Path LP over enumerated walks.
    Paths,
    /// Undirected only: no edge repeated in either direction.
    NoRepeat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupMethod {
    Brute,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// No repeated edge.
    Path,
    /// No repeated node.
    Simple,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Command {
    /// Maximum multi-commodity flow over all paths.
    TeMf {
        #[command(flatten)]
        input: Input,
    },
    /// Minimum maximum link utilization routing every demand.
    TeLu {
        #[command(flatten)]
        input: Input,
    },
    /// Maximum flow on paths through the designated node.
    WFlow {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = WMethod::Auto)]
        method: WMethod,
    },
    /// Maximum flow on simple paths through the designated node.
    WFlowSimple {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
    },
    /// Greedy augmenting heuristic through the designated node.
    WFlowAugment {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, default_value_t = 0)]
        commodity: usize,
        /// Node sequence to try first, comma separated. Builtins may supply one.
        #[arg(long, value_delimiter = ',')]
        prefer: Vec<String>,
        /// Ignore any preferred first path and go shortest-first.
        #[arg(long)]
        shortest_first: bool,
    },
    /// Maximum flow on paths visiting at least one node of a set.
    SetFlow {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Segment routing: minimum maximum utilization.
    SrLu {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sr: SrArgs,
    },
    /// Segment routing: maximum flow.
    SrMf {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sr: SrArgs,
    },
    /// Is there a repetition-free shortest-segment route through every middlepoint?
    AcyclicCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        commodity: usize,
        #[arg(long, value_delimiter = ',')]
        middlepoints: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Path)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_COMBINATION_CAP)]
        combinations: usize,
    },
    /// Minimum edge cut removing every path through the designated node.
    Cut {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
    },
    /// Flow centrality of the designated node.
    Centrality {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
        /// All ordered node pairs instead of the instance commodities.
        #[arg(long)]
        single: bool,
    },
    /// Group flow of a node set.
    GroupFlow {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        group: Vec<String>,
        #[arg(long)]
        no_repeat: bool,
    },
    /// Best group flow over groups of at most N nodes.
    Ngroup {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = GroupMethod::Brute)]
        method: GroupMethod,
        #[arg(long)]
        no_repeat: bool,
    },
    /// Sample set triples and count monotonicity and submodularity violations.
    ProbeSubmodularity {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_repeat: bool,
    },
    /// Recover one pair's w-flow from four all-pairs sums.
    #[command(alias = "eq25")]
    PairRecovery {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        t: Option<String>,
    },
    /// List the built-in instances.
    Catalog,
    /// Build a reduction gadget and write it as an instance file.
    Gadget(gadget::GadgetArgs),
}

#[derive(Debug, Args)]
struct SrArgs {
    /// Ordered middlepoints; defaults to the instance list.
    #[arg(long, value_delimiter = ',')]
    middlepoints: Vec<String>,
    /// Most middlepoints per tunnel; defaults to all of them.
    #[arg(long)]
    max_per_tunnel: Option<usize>,
    /// Only tunnels through every middlepoint.
    #[arg(long)]
    through_all: bool,
}

/// A designation the command needs is neither in the instance nor on the command line.
#[derive(Debug)]
pub(crate) struct Missing(pub &'static str, pub &'static str);

impl fmt::Display for Missing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "missing designated {}; pass --{} or set it in the instance", self.0, self.1)
    }
}

impl std::error::Error for Missing {}

/// The instance could not be read.
#[derive(Debug)]
struct Unreadable(String);

impl fmt::Display for Unreadable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Unreadable {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use ncte::Error as E;
    if err.downcast_ref::<Missing>().is_some() {
        return 4;
    }
    if err.downcast_ref::<Unreadable>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::CapExceeded { .. } | E::TooManyCombinations { .. } | E::TruncatedFamily(_) | E::SizeGuard(_)) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

pub(crate) struct Loaded {
    pub label: String,
    pub instance: Instance,
    pub builtin: Option<&'static Builtin>,
}

impl Loaded {
    pub fn net(&self) -> &FlowNetwork {
        &self.instance.network
    }

    fn sha256(&self) -> String {
        let digest = Sha256::digest(self.instance.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn node(&self, name: &str) -> Result<NodeId> {
        Ok(self.net().node(name)?)
    }

    fn nodes(&self, names: &[String]) -> Result<Vec<NodeId>> {
        names.iter().map(|n| self.node(n)).collect()
    }

    fn w(&self, flag: &Option<String>) -> Result<NodeId> {
        match flag {
            Some(name) => self.node(name),
            None => self.instance.designated.w.ok_or_else(|| Missing("node w", "w").into()),
        }
    }
}

pub(crate) fn load(input: &Input) -> Result<Loaded> {
    match (&input.builtin, &input.instance) {
        (Some(name), _) => {
            let instance = catalog::builtin(name)?;
            Ok(Loaded { label: format!("builtin:{name}"), instance, builtin: catalog::find(name) })
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Unreadable(format!("cannot read {}: {e}", path.display())))?;
            let instance = Instance::parse(&text).with_context(|| format!("in {}", path.display()))?;
            Ok(Loaded { label: path.display().to_string(), instance, builtin: None })
        }
        (None, None) => Err(Unreadable("no instance given; pass a file or --builtin NAME".into()).into()),
    }
}

/// Writes through a sibling temporary file so readers never see a partial result.
pub(crate) fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut file = fs::File::create(&tmp).with_context(|| format!("cannot create {}", tmp.display()))?;
    file.write_all(contents.as_bytes())?;
    file.sync_all()?;
    drop(file);
    fs::rename(&tmp, path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn emit(cli: &Cli, record: &ResultRecord) -> Result<()> {
    let render = |fmt: Format| -> Result<String> {
        match fmt {
            Format::Table => Ok(record.table()),
            Format::Csv => record.csv(),
            Format::Structured => record.structured(),
        }
    };
    match &cli.output {
        Some(path) => {
            write_atomic(path, &render(cli.format)?)?;
            print!("{}", record.table());
        }
        None => print!("{}", render(cli.format)?),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Catalog => {
            print!("{}", catalog_listing());
            Ok(())
        }
        Command::Gadget(args) => gadget::run(cli, args),
        cmd => {
            let input = input_of(cmd);
            let loaded = load(input)?;
            let start = Instant::now();
            let mut record = ResultRecord::new(command_name(cmd), &loaded.label, &loaded.sha256());
            solve(cli, cmd, &loaded, &mut record)?;
            if cli.timing {
                record.runtime_seconds = Some(start.elapsed().as_secs_f64());
            }
            emit(cli, &record)
        }
    }
}

fn input_of(cmd: &Command) -> &Input {
    match cmd {
        Command::TeMf { input }
        | Command::TeLu { input }
        | Command::WFlow { input, .. }
        | Command::WFlowSimple { input, .. }
        | Command::WFlowAugment { input, .. }
        | Command::SetFlow { input, .. }
        | Command::SrLu { input, .. }
        | Command::SrMf { input, .. }
        | Command::AcyclicCheck { input, .. }
        | Command::Cut { input, .. }
        | Command::Centrality { input, .. }
        | Command::GroupFlow { input, .. }
        | Command::Ngroup { input, .. }
        | Command::ProbeSubmodularity { input, .. }
        | Command::PairRecovery { input, .. } => input,
        Command::Catalog | Command::Gadget(_) => unreachable!("no instance input"),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::TeMf { .. } => "te-mf",
        Command::TeLu { .. } => "te-lu",
        Command::WFlow { .. } => "w-flow",
        Command::WFlowSimple { .. } => "w-flow-simple",
        Command::WFlowAugment { .. } => "w-flow-augment",
        Command::SetFlow { .. } => "set-flow",
        Command::SrLu { .. } => "sr-lu",
        Command::SrMf { .. } => "sr-mf",
        Command::AcyclicCheck { .. } => "acyclic-check",
        Command::Cut { .. } => "cut",
        Command::Centrality { .. } => "centrality",
        Command::GroupFlow { .. } => "group-flow",
        Command::Ngroup { .. } => "ngroup",
        Command::ProbeSubmodularity { .. } => "probe-submodularity",
        Command::PairRecovery { .. } => "pair-recovery",
        Command::Catalog => "catalog",
        Command::Gadget(_) => "gadget",
    }
}

pub(crate) fn catalog_listing() -> String {
    let width = catalog::BUILTINS.iter().map(|b| b.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for b in catalog::BUILTINS {
        out.push_str(&format!("{:<width$}  {}  [{}]\n", b.name, b.description, b.headline));
    }
    out.push_str(&format!("{:<width$}  directed cycle family; any N >= 2 is accepted\n", "cycle-N"));
    out
}

pub(crate) fn options(cli: &Cli, no_repeat: bool) -> CentralityOptions {
    CentralityOptions {
        path_cap: cli.max_paths,
        max_nodes: cli.max_nodes_exact,
        reuse: if no_repeat { EdgeReuse::Never } else { EdgeReuse::OppositeDirections },
    }
}

fn add_flows(record: &mut ResultRecord, net: &FlowNetwork, sol: &FlowSolution) {
    for (i, family) in sol.flows.iter().enumerate() {
        for pf in family {
            record.flow(i, pf.path.display(net).to_string(), &pf.flow);
        }
    }
}

fn names(net: &FlowNetwork, nodes: &[NodeId]) -> String {
    nodes.iter().map(|n| net.name(*n)).collect::<Vec<_>>().join(",")
}

fn add_report(record: &mut ResultRecord, net: &FlowNetwork, rep: &CentralityReport) {
    match &rep.ratio {
        Some(r) => record.objective("centrality", r),
        None => record.detail("centrality", "undefined (zero denominator)"),
    };
    record.objective("numerator", &rep.numerator).objective("denominator", &rep.denominator);
    for p in &rep.pairs {
        record.detail(
            &format!("pair {}->{}", net.name(p.source), net.name(p.sink)),
            format!("{} of {}", ncte::rational::format(&p.through), ncte::rational::format(&p.max_flow)),
        );
    }
}

fn solve(cli: &Cli, cmd: &Command, ld: &Loaded, record: &mut ResultRecord) -> Result<()> {
    let net = ld.net();
    let cap = cli.max_paths;
    match cmd {
        Command::TeMf { .. } | Command::TeLu { .. } => {
            let families = all_families(net, &PathConstraint::Unconstrained, EnumOptions::with_cap(cap))?;
            for f in &families {
                f.ensure_complete()?;
            }
            let result = match cmd {
                Command::TeMf { .. } => solve_te_mf(net, &families),
                _ => solve_te_lu(net, &families),
            };
            match result {
                Ok(sol) => {
                    let name = if matches!(cmd, Command::TeMf { .. }) { "max_flow" } else { "theta" };
                    record.objective(name, &sol.objective);
                    add_flows(record, net, &sol);
                }
                Err(ncte::Error::Infeasible(why)) => {
                    record.status = "infeasible".into();
                    record.detail("reason", why);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::WFlow { w, method, .. } => {
            let w = ld.w(w)?;
            record.detail("w", net.name(w));
            let undirected = !net.is_directed();
            match method {
                WMethod::Auto if undirected => {
                    let res = max_w_flow_undirected(net, w)?;
                    record.objective("w_flow", &res.value).objective("transform_lp", &res.doubled);
                    record.detail("method", "transform");
                    add_flows(record, net, &res.witness);
                }
                WMethod::NoRepeat => {
                    let sol = max_w_flow_undirected_norepeat(net, w, cap)?;
                    record.objective("w_flow", &sol.objective).detail("method", "no-repeat");
                    add_flows(record, net, &sol);
                }
                _ => {
                    let sol = max_w_flow_exact(net, w, cap)?;
                    record.objective("w_flow", &sol.objective).detail("method", "paths");
                    add_flows(record, net, &sol);
                }
            }
        }
        Command::WFlowSimple { w, .. } => {
            let w = ld.w(w)?;
            let sol = max_w_flow_simple_exact(net, w, cap)?;
            record.detail("w", net.name(w)).objective("simple_w_flow", &sol.objective);
            add_flows(record, net, &sol);
        }
        Command::WFlowAugment { w, commodity, prefer, shortest_first, .. } => {
            let w = ld.w(w)?;
            let order = if *shortest_first {
                AugmentOrder::ShortestFirst
            } else if !prefer.is_empty() {
                AugmentOrder::Prefer(vec![ld.nodes(prefer)?])
            } else if let Some(pick) = ld.builtin.and_then(|b| b.first_pick) {
                let pick: Vec<String> = pick.iter().map(|s| s.to_string()).collect();
                AugmentOrder::Prefer(vec![ld.nodes(&pick)?])
            } else {
                AugmentOrder::ShortestFirst
            };
            if let AugmentOrder::Prefer(seqs) = &order {
                record.detail("first_pick", names(net, &seqs[0]).replace(',', "->"));
            }
            let res = augmenting_w_flow(net, *commodity, w, &order)?;
            record.detail("w", net.name(w));
            record.objective("augmenting_w_flow", &res.solution.objective).objective("into_w", &res.through_w);
            record.detail("augmentations", res.augmentations.len());
            for (i, a) in res.augmentations.iter().enumerate() {
                record.detail(&format!("augmentation {}", i + 1), format!(
                    "{} +{}",
                    a.path.display(net),
                    ncte::rational::format(&a.flow)
                ));
            }
            if res.truncated {
                record.detail("truncated", "candidate cap reached in some round");
            }
            add_flows(record, net, &res.solution);
        }
        Command::SetFlow { set, .. } => {
            let set = if set.is_empty() { ld.instance.designated.set.clone() } else { ld.nodes(set)? };
            if set.is_empty() {
                return Err(Missing("set W", "set").into());
            }
            let sol = max_set_flow(net, &set, cap)?;
            record.detail("set", names(net, &set)).objective("set_flow", &sol.objective);
            add_flows(record, net, &sol);
        }
        Command::SrLu { sr, .. } | Command::SrMf { sr, .. } => {
            let mps = if sr.middlepoints.is_empty() { ld.instance.middlepoints.clone() } else { ld.nodes(&sr.middlepoints)? };
            let cfg = if sr.through_all {
                MiddlepointConfig::all(mps)
            } else {
                let k = sr.max_per_tunnel.unwrap_or(mps.len());
                MiddlepointConfig::new(mps, k)
            };
            record.detail("middlepoints", names(net, &cfg.middlepoints));
            record.detail("max_per_tunnel", cfg.max_per_tunnel);
            record.detail("through_all", cfg.use_all);
            let plan = build_tunnels(net, &cfg)?;
            let lu = matches!(cmd, Command::SrLu { .. });
            let result = if lu { solve_sr_lu(net, &plan) } else { solve_sr_mf(net, &plan) };
            record.detail("tunnels", plan.tunnel_count());
            match result {
                Ok(sol) => {
                    record.objective(if lu { "theta" } else { "max_flow" }, &sol.objective);
                    record.detail("lp_variables", sol.size.variables).detail("lp_constraints", sol.size.constraints);
                    for (i, tunnels) in plan.tunnels.iter().enumerate() {
                        for (j, tunnel) in tunnels.iter().enumerate() {
                            let mut hops = vec![tunnel.segments[0].0];
                            hops.extend(tunnel.segments.iter().map(|s| s.1));
                            record.flow(i, names(net, &hops).replace(',', "=>"), &sol.flows[i][j]);
                            let shared = detect_cycles(&plan, tunnel);
                            if !shared.is_empty() && sol.flows[i][j] != ncte::rational::int(0) {
                                let edges: Vec<String> = shared
                                    .iter()
                                    .map(|e| {
                                        let e = net.edge(*e);
                                        format!("{}->{}", net.name(e.tail), net.name(e.head))
                                    })
                                    .collect();
                                record.detail(
                                    &format!("shared edges {}", names(net, &hops).replace(',', "=>")),
                                    edges.join(" "),
                                );
                            }
                        }
                    }
                }
                Err(ncte::Error::Infeasible(why)) => {
                    record.status = "infeasible".into();
                    record.detail("reason", why);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::AcyclicCheck { commodity, middlepoints, mode, combinations, .. } => {
            let c = net.commodity(*commodity)?;
            let mps = if middlepoints.is_empty() { ld.instance.middlepoints.clone() } else { ld.nodes(middlepoints)? };
            let mode = match mode {
                Mode::Path => AcyclicMode::Path,
                Mode::Simple => AcyclicMode::SimplePath,
            };
            record.detail("middlepoints", names(net, &mps));
            match acyclic_feasible(net, c.source, c.sink, &mps, mode, *combinations)? {
                AcyclicAnswer::Feasible(walk) => {
                    record.status = "feasible".into();
                    record.detail("witness", walk.display(net));
                }
                AcyclicAnswer::Infeasible => record.status = "infeasible".into(),
            }
        }
        Command::Cut { w, .. } => {
            let w = ld.w(w)?;
            let cut = min_swt_edge_cut(net, w, cap)?;
            let edges: Vec<String> = cut
                .edges
                .iter()
                .map(|e| {
                    let e = net.edge(*e);
                    format!("{}->{}", net.name(e.tail), net.name(e.head))
                })
                .collect();
            record.detail("w", net.name(w)).objective("cut", &cut.value);
            record.detail("edges", edges.join(" ")).detail("exact", cut.exact);
        }
        Command::Centrality { w, single, .. } => {
            let w = ld.w(w)?;
            let opts = options(cli, false);
            record.detail("w", net.name(w));
            let rep = if *single { flow_centrality_single(net, w, &opts)? } else { flow_centrality_multi(net, w, &opts)? };
            add_report(record, net, &rep);
        }
        Command::GroupFlow { group, no_repeat, .. } => {
            let group = if group.is_empty() { ld.instance.designated.group.clone() } else { ld.nodes(group)? };
            if group.is_empty() {
                return Err(Missing("group", "group").into());
            }
            let res = group_flow(net, &group, &options(cli, *no_repeat))?;
            record.detail("group", names(net, &group)).objective("group_flow", &res.value);
            add_flows(record, net, &res.witness);
        }
        Command::Ngroup { n, method, no_repeat, .. } => {
            let n = n.or(ld.instance.designated.n).ok_or(Missing("group size n", "n"))?;
            let method = match method {
                GroupMethod::Brute => NGroupMethod::Brute,
                GroupMethod::Greedy => NGroupMethod::Greedy,
            };
            let res = n_group_max_flow(net, n, method, &options(cli, *no_repeat))?;
            record.detail("n", n).detail("method", format!("{method:?}").to_lowercase());
            record.objective("group_flow", &res.value).detail("group", names(net, &res.group));
            for (i, (node, v)) in res.trajectory.iter().enumerate() {
                record.detail(
                    &format!("step {}", i + 1),
                    format!("+{} -> {}", net.name(*node), ncte::rational::format(v)),
                );
            }
            record.detail("evaluations", res.evaluations);
        }
        Command::ProbeSubmodularity { trials, seed, no_repeat, .. } => {
            let rep = submodularity_probe(net, *trials, *seed, &options(cli, *no_repeat))?;
            record.detail("seed", seed).detail("triples", rep.triples);
            record.detail("monotonicity_violations", rep.monotonicity_violations);
            record.detail("submodularity_violations", rep.submodularity_violations.len());
            for v in rep.submodularity_violations.iter().take(5) {
                record.detail(
                    "example",
                    format!(
                        "S={{{}}} T={{{}}} v={} margins ({}, {})",
                        names(net, &v.small),
                        names(net, &v.large),
                        net.name(v.added),
                        ncte::rational::format(&v.margins.small),
                        ncte::rational::format(&v.margins.large)
                    ),
                );
            }
        }
        Command::PairRecovery { w, s, t, .. } => {
            let w = ld.w(w)?;
            let first = net.commodities().first();
            let s = match s {
                Some(name) => ld.node(name)?,
                None => first.map(|c| c.source).ok_or(Missing("source s", "s"))?,
            };
            let t = match t {
                Some(name) => ld.node(name)?,
                None => first.map(|c| c.sink).ok_or(Missing("sink t", "t"))?,
            };
            let rep = check_pair_recovery(net, w, s, t, &options(cli, false))?;
            record.detail("w", net.name(w)).detail("s", net.name(s)).detail("t", net.name(t));
            record.objective("direct", &rep.direct).objective("inclusion_exclusion", &rep.inclusion_exclusion);
            record.objective("residual", &rep.residual);
            record.objective("base", &rep.base).objective("with_source", &rep.with_source);
            record.objective("with_sink", &rep.with_sink).objective("with_both", &rep.with_both);
        }
        Command::Catalog | Command::Gadget(_) => unreachable!("handled in run"),
    }
    Ok(())
}
