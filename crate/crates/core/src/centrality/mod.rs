//! Flow centrality of single nodes and groups.
//!
//! Directed networks are solved exactly by path LPs, which is exponential,
//! so every directed entry point checks [`CentralityOptions::max_nodes`].
//! Undirected single-node values go through the polynomial arc LP.

mod group;

use num_traits::Zero;

use crate::constrained::{max_w_flow_exact, max_w_flow_undirected};
use crate::error::{Error, Result};
use crate::maxflow::max_flow_value;
use crate::network::{FlowNetwork, NodeId, Orientation};
use crate::paths::{EdgeReuse, EnumOptions, PathConstraint, DEFAULT_PATH_CAP};
use crate::rational::Rational;
use crate::te::solve_te_mf;

pub use group::{
    group_flow, group_flow_centrality, n_group_max_flow, submodularity_probe, GroupFlowOracle, GroupFlowResult,
    MarginPair, NGroupMethod, NGroupResult, ProbeReport,
};

pub const DEFAULT_MAX_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralityOptions {
    pub path_cap: usize,
    /// Largest directed network accepted by the exact routines.
    pub max_nodes: usize,
    /// Undirected group flow: may a path cross an edge once each way?
    pub reuse: EdgeReuse,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions { path_cap: DEFAULT_PATH_CAP, max_nodes: DEFAULT_MAX_NODES, reuse: EdgeReuse::default() }
    }
}

impl CentralityOptions {
    fn guard(&self, net: &FlowNetwork) -> Result<()> {
        if net.is_directed() && net.node_count() > self.max_nodes {
            return Err(Error::SizeGuard(format!(
                "{} nodes exceed the directed limit of {}",
                net.node_count(),
                self.max_nodes
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTerm {
    pub source: NodeId,
    pub sink: NodeId,
    pub through: Rational,
    pub max_flow: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityReport {
    pub nodes: Vec<NodeId>,
    pub numerator: Rational,
    pub denominator: Rational,
    /// `None` when the denominator is zero.
    pub ratio: Option<Rational>,
    /// Per ordered pair for the all-pairs measure; empty otherwise.
    pub pairs: Vec<PairTerm>,
}

impl CentralityReport {
    fn new(nodes: Vec<NodeId>, numerator: Rational, denominator: Rational, pairs: Vec<PairTerm>) -> Self {
        let ratio = (!denominator.is_zero()).then(|| &numerator / &denominator);
        CentralityReport { nodes, numerator, denominator, ratio, pairs }
    }
}

fn check_node(net: &FlowNetwork, w: NodeId) -> Result<()> {
    if w.0 < net.node_count() {
        Ok(())
    } else {
        Err(Error::UnknownNode(format!("#{}", w.0)))
    }
}

/// Maximum flow from `s` to `t` through `w` alone, ignoring the commodity list.
pub fn pair_w_flow(net: &FlowNetwork, w: NodeId, s: NodeId, t: NodeId, path_cap: usize) -> Result<Rational> {
    let single = net.single_pair(s, t)?;
    if w == s || w == t {
        return Ok(max_flow_value(net, s, t));
    }
    match net.orientation() {
        Orientation::Directed => Ok(max_w_flow_exact(&single, w, path_cap)?.objective),
        Orientation::Undirected => Ok(max_w_flow_undirected(&single, w)?.value),
    }
}

/// Sum of single-pair w-flows over ordered pairs of distinct nodes other than `w`.
pub fn numerator_sum(net: &FlowNetwork, w: NodeId, path_cap: usize) -> Result<Rational> {
    Ok(pair_terms(net, w, path_cap, false)?.iter().fold(Rational::zero(), |acc, p| acc + &p.through))
}

fn pair_terms(net: &FlowNetwork, w: NodeId, path_cap: usize, with_max_flow: bool) -> Result<Vec<PairTerm>> {
    let mut out = Vec::new();
    for s in net.nodes().filter(|&x| x != w) {
        for t in net.nodes().filter(|&x| x != w && x != s) {
            let max_flow = if with_max_flow { max_flow_value(net, s, t) } else { Rational::zero() };
            // A pair that cannot connect at all cannot connect through w.
            let through = if with_max_flow && max_flow.is_zero() {
                Rational::zero()
            } else {
                pair_w_flow(net, w, s, t, path_cap)?
            };
            out.push(PairTerm { source: s, sink: t, through, max_flow });
        }
    }
    Ok(out)
}

/// All-pairs flow centrality: summed w-flows over summed maximum flows.
pub fn flow_centrality_single(net: &FlowNetwork, w: NodeId, opts: &CentralityOptions) -> Result<CentralityReport> {
    check_node(net, w)?;
    opts.guard(net)?;
    let pairs = pair_terms(net, w, opts.path_cap, true)?;
    let numerator = pairs.iter().fold(Rational::zero(), |acc, p| acc + &p.through);
    let denominator = pairs.iter().fold(Rational::zero(), |acc, p| acc + &p.max_flow);
    Ok(CentralityReport::new(vec![w], numerator, denominator, pairs))
}

/// Multi-commodity maximum flow of the network's own commodities.
pub fn multi_max_flow(net: &FlowNetwork, path_cap: usize) -> Result<Rational> {
    let families = crate::constrained::complete_families(net, &PathConstraint::Unconstrained, EnumOptions::with_cap(path_cap))?;
    Ok(solve_te_mf(net, &families)?.objective)
}

/// Share of the commodities' maximum flow that can pass through `w`.
pub fn flow_centrality_multi(net: &FlowNetwork, w: NodeId, opts: &CentralityOptions) -> Result<CentralityReport> {
    check_node(net, w)?;
    opts.guard(net)?;
    let is_endpoint = net.endpoints().any(|x| x == w);
    let numerator = match net.orientation() {
        Orientation::Undirected if !is_endpoint => max_w_flow_undirected(net, w)?.value,
        _ => max_w_flow_exact(net, w, opts.path_cap)?.objective,
    };
    let denominator = multi_max_flow(net, opts.path_cap)?;
    Ok(CentralityReport::new(vec![w], numerator, denominator, Vec::new()))
}

/// The three augmented networks used to isolate one pair's w-flow.
#[derive(Debug, Clone)]
pub struct HatNetworks {
    /// Extra source `s_hat -> s`.
    pub with_source: FlowNetwork,
    /// Extra sink `t -> t_hat`.
    pub with_sink: FlowNetwork,
    pub with_both: FlowNetwork,
}

/// `s_hat -> s` gets the total capacity leaving `s`; `t -> t_hat` the total
/// capacity entering `t`. Directed networks only.
pub fn hat_constructions(net: &FlowNetwork, s: NodeId, t: NodeId) -> Result<HatNetworks> {
    if !net.is_directed() {
        return Err(Error::WrongOrientation("directed"));
    }
    check_node(net, s)?;
    check_node(net, t)?;
    if s == t {
        return Err(Error::NodesNotDistinct("s and t coincide".into()));
    }
    let out_cap = crate::rational::sum(net.out_arcs(s).iter().map(|a| &net.edge(a.edge).capacity));
    let in_cap = crate::rational::sum(net.in_arcs(t).iter().map(|a| &net.edge(a.edge).capacity));
    let fresh = |base: String| {
        let mut name = base;
        while net.node(&name).is_ok() {
            name.push('\'');
        }
        name
    };
    let s_hat = fresh(format!("{}_hat", net.name(s)));
    let t_hat = fresh(format!("{}_hat", net.name(t)));
    let extend = |source: bool, sink: bool| -> Result<FlowNetwork> {
        let mut b = FlowNetwork::builder(Orientation::Directed);
        for name in net.names() {
            b = b.node(name);
        }
        for e in net.edges() {
            b = b.edge_with_length(net.name(e.tail), net.name(e.head), e.capacity.clone(), e.length);
        }
        if source {
            b = b.edge(&s_hat, net.name(s), out_cap.clone());
        }
        if sink {
            b = b.edge(net.name(t), &t_hat, in_cap.clone());
        }
        b.build()
    };
    Ok(HatNetworks { with_source: extend(true, false)?, with_sink: extend(false, true)?, with_both: extend(true, true)? })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecoveryReport {
    /// `nu^w(s, t)` computed directly.
    pub direct: Rational,
    pub base: Rational,
    pub with_source: Rational,
    pub with_sink: Rational,
    pub with_both: Rational,
    /// `with_both - with_source - with_sink + base`.
    pub inclusion_exclusion: Rational,
    pub residual: Rational,
}

/// Recovers one pair's w-flow from four all-pairs numerator sums and
/// compares it with the direct value.
pub fn check_pair_recovery(net: &FlowNetwork, w: NodeId, s: NodeId, t: NodeId, opts: &CentralityOptions) -> Result<PairRecoveryReport> {
    check_node(net, w)?;
    opts.guard(net)?;
    if w == s || w == t {
        return Err(Error::WIsEndpoint(net.name(w).to_string()));
    }
    let hats = hat_constructions(net, s, t)?;
    let direct = pair_w_flow(net, w, s, t, opts.path_cap)?;
    let base = numerator_sum(net, w, opts.path_cap)?;
    let with_source = numerator_sum(&hats.with_source, w, opts.path_cap)?;
    let with_sink = numerator_sum(&hats.with_sink, w, opts.path_cap)?;
    let with_both = numerator_sum(&hats.with_both, w, opts.path_cap)?;
    let inclusion_exclusion = &with_both - &with_source - &with_sink + &base;
    let residual = &inclusion_exclusion - &direct;
    Ok(PairRecoveryReport { direct, base, with_source, with_sink, with_both, inclusion_exclusion, residual })
}
