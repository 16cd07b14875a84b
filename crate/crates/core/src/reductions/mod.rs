//! Instance generators from the hardness constructions.
//!
//! Each gadget translates a source problem (disjoint paths, coverage,
//! disjoint shortest paths) into a flow instance. [`verify`] holds brute
//! force solvers for both sides so the translations can be cross-checked on
//! small inputs.

pub mod verify;

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::network::{Demand, FlowNetwork, NodeId, Orientation};
use crate::rational::{int, Rational};
use crate::sr::ShortestPaths;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    /// Two node-disjoint paths to a simple path through a new middlepoint.
    TwoDisjointToSimpleThrough,
    /// Every node becomes an `in -> out` edge.
    NodeSplit,
    /// Unit capacities, one unit of demand.
    PathToUnitFlow,
    /// Maximum coverage to N-group flow.
    CoverageToGroupFlow,
    /// Disjoint shortest paths to segment routing through linking middlepoints.
    DisjointShortestToSegments,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::TwoDisjointToSimpleThrough => "2dp",
            GadgetKind::NodeSplit => "node-split",
            GadgetKind::PathToUnitFlow => "unit-flow",
            GadgetKind::CoverageToGroupFlow => "mcp",
            GadgetKind::DisjointShortestToSegments => "kdsp",
        }
    }
}

/// Nodes a gadget singles out for the solver that consumes it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Designated {
    pub s: Option<NodeId>,
    pub t: Option<NodeId>,
    pub w: Option<NodeId>,
    pub middlepoints: Vec<NodeId>,
    pub group_size: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub network: FlowNetwork,
    pub designated: Designated,
    /// Gadget node name to the source node (or item/set label) it stands for.
    pub origin: BTreeMap<String, String>,
}

impl GadgetInstance {
    /// File form: `w` and the group size become designations, middlepoints
    /// are kept in order. `s` and `t` are recoverable from the commodity.
    pub fn to_instance(&self) -> Instance {
        let mut inst = Instance::new(self.network.clone());
        inst.middlepoints = self.designated.middlepoints.clone();
        inst.designated.w = self.designated.w;
        inst.designated.n = self.designated.group_size;
        inst
    }
}

fn fresh(net: &FlowNetwork, base: &str) -> String {
    let mut name = base.to_string();
    while net.node(&name).is_ok() {
        name.push('\'');
    }
    name
}

fn distinct(nodes: &[NodeId]) -> bool {
    let mut v = nodes.to_vec();
    v.sort();
    v.dedup();
    v.len() == nodes.len()
}

fn require_directed(g: &FlowNetwork) -> Result<()> {
    if g.is_directed() {
        Ok(())
    } else {
        Err(Error::WrongOrientation("directed"))
    }
}

fn copy_into(g: &FlowNetwork, unit: bool) -> crate::network::NetworkBuilder {
    let mut b = FlowNetwork::builder(g.orientation());
    for name in g.names() {
        b = b.node(name);
    }
    for e in g.edges() {
        let cap = if unit { Rational::one() } else { e.capacity.clone() };
        b = b.edge_with_length(g.name(e.tail), g.name(e.head), cap, e.length);
    }
    b
}

fn identity_origin(g: &FlowNetwork) -> BTreeMap<String, String> {
    g.names().iter().map(|n| (n.clone(), n.clone())).collect()
}

/// Adds `w` with edges `u2 -> w -> v1`. A simple `u1 -> w -> v2` path
/// exists exactly when node-disjoint `u1 -> u2` and `v1 -> v2` paths do.
pub fn gadget_2dp_to_swt(g: &FlowNetwork, u1: NodeId, u2: NodeId, v1: NodeId, v2: NodeId) -> Result<GadgetInstance> {
    require_directed(g)?;
    if !distinct(&[u1, u2, v1, v2]) {
        return Err(Error::NodesNotDistinct("u1, u2, v1, v2".into()));
    }
    let w = fresh(g, "w");
    let net = copy_into(g, false)
        .edge(g.name(u2), &w, int(1))
        .edge(&w, g.name(v1), int(1))
        .commodity(g.name(u1), g.name(v2), Demand::Infinite)
        .build()?;
    let designated = Designated { s: Some(u1), t: Some(v2), w: Some(net.node(&w)?), ..Default::default() };
    Ok(GadgetInstance { kind: GadgetKind::TwoDisjointToSimpleThrough, network: net, designated, origin: identity_origin(g) })
}

/// Name of the entry or exit copy of `node` in a split network.
pub fn split_name(name: &str, exit: bool) -> String {
    format!("{name}_{}", if exit { "out" } else { "in" })
}

/// Splits every node `v` into `v_in -> v_out`; edge `(u, v)` becomes
/// `(u_out, v_in)`. Edge-disjointness in the result is node-disjointness
/// in the source. The `in -> out` edges come first, in node order.
pub fn gadget_node_split(g: &FlowNetwork) -> Result<GadgetInstance> {
    require_directed(g)?;
    let mut b = FlowNetwork::builder(Orientation::Directed);
    let mut origin = BTreeMap::new();
    for name in g.names() {
        let (i, o) = (split_name(name, false), split_name(name, true));
        b = b.unique_node(&i).unique_node(&o);
        origin.insert(i, name.clone());
        origin.insert(o, name.clone());
    }
    for name in g.names() {
        b = b.edge(&split_name(name, false), &split_name(name, true), int(1));
    }
    for e in g.edges() {
        b = b.edge_with_length(
            &split_name(g.name(e.tail), true),
            &split_name(g.name(e.head), false),
            e.capacity.clone(),
            e.length,
        );
    }
    let net = b.build()?;
    Ok(GadgetInstance { kind: GadgetKind::NodeSplit, network: net, designated: Designated::default(), origin })
}

/// Same graph with unit capacities and one commodity `(s, t)` of demand 1.
pub fn gadget_prop1(g: &FlowNetwork, s: NodeId, t: NodeId, w: NodeId) -> Result<GadgetInstance> {
    require_directed(g)?;
    if !distinct(&[s, t, w]) {
        return Err(Error::NodesNotDistinct("s, t, w".into()));
    }
    let net = copy_into(g, true).commodity(g.name(s), g.name(t), Demand::Finite(int(1))).build()?;
    let designated = Designated { s: Some(s), t: Some(t), w: Some(w), ..Default::default() };
    Ok(GadgetInstance { kind: GadgetKind::PathToUnitFlow, network: net, designated, origin: identity_origin(g) })
}

/// Items `0..items`, sets as lists of item indices. Item `j` becomes
/// `z_j -> u_j`, set `k` becomes `v_k`, membership `j in S_k` becomes edge
/// `u_j -> v_k` plus commodity `(z_j, v_k)`. Unit capacities, infinite demands.
pub fn gadget_mcp(items: usize, sets: &[Vec<usize>], n: usize) -> Result<GadgetInstance> {
    if n > sets.len() {
        return Err(Error::InvalidConfig(format!("group size {n} exceeds the {} sets", sets.len())));
    }
    if let Some(j) = sets.iter().flatten().find(|&&j| j >= items) {
        return Err(Error::InvalidConfig(format!("item {j} out of range")));
    }
    let mut b = FlowNetwork::builder(Orientation::Directed);
    let mut origin = BTreeMap::new();
    for j in 0..items {
        let (z, u) = (format!("z{}", j + 1), format!("u{}", j + 1));
        b = b.edge(&z, &u, int(1));
        origin.insert(z, format!("item{}", j + 1));
        origin.insert(u, format!("item{}", j + 1));
    }
    for (k, set) in sets.iter().enumerate() {
        let v = format!("v{}", k + 1);
        b = b.node(&v);
        origin.insert(v.clone(), format!("set{}", k + 1));
        let mut members = set.clone();
        members.sort();
        members.dedup();
        for j in members {
            b = b.edge(&format!("u{}", j + 1), &v, int(1)).commodity(&format!("z{}", j + 1), &v, Demand::Infinite);
        }
    }
    let net = b.build()?;
    let designated = Designated { group_size: Some(n), ..Default::default() };
    Ok(GadgetInstance { kind: GadgetKind::CoverageToGroupFlow, network: net, designated, origin })
}

/// Chains the pairs `(u_i, v_i)` with new middlepoints `M_i` and edges
/// `v_i -> M_i -> u_{i+1}`; unit capacities; one commodity `(u_1, v_K)`.
///
/// Refuses inputs where the new edges create a shortest `u_i -> v_i`
/// route that the source graph lacks, since segment routing would then
/// follow paths with no counterpart in the source problem.
pub fn gadget_kdsp(g: &FlowNetwork, pairs: &[(NodeId, NodeId)]) -> Result<GadgetInstance> {
    require_directed(g)?;
    if pairs.is_empty() {
        return Err(Error::InvalidConfig("at least one pair is required".into()));
    }
    let flat: Vec<NodeId> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    if !distinct(&flat) {
        return Err(Error::NodesNotDistinct("pair endpoints".into()));
    }
    let mut b = copy_into(g, true);
    let mut names = Vec::new();
    for i in 0..pairs.len() - 1 {
        let m = fresh(g, &format!("M{}", i + 1));
        b = b.edge(g.name(pairs[i].1), &m, int(1)).edge(&m, g.name(pairs[i + 1].0), int(1));
        names.push(m);
    }
    let (first, last) = (pairs[0].0, pairs[pairs.len() - 1].1);
    let net = b.commodity(g.name(first), g.name(last), Demand::Finite(int(1))).build()?;
    for &(u, v) in pairs {
        let before = ShortestPaths::compute(g, u, false);
        let after = ShortestPaths::compute(&net, u, false);
        if before.dist[v.0] != after.dist[v.0] || before.count[v.0] != after.count[v.0] {
            return Err(Error::InvalidConfig(format!(
                "linking edges change the shortest {} -> {} paths",
                g.name(u),
                g.name(v)
            )));
        }
    }
    let middlepoints = names.iter().map(|n| net.node(n)).collect::<Result<Vec<_>>>()?;
    let mut origin = identity_origin(g);
    for (i, n) in names.iter().enumerate() {
        origin.insert(n.clone(), format!("link{}", i + 1));
    }
    let designated = Designated { s: Some(first), t: Some(last), middlepoints, ..Default::default() };
    Ok(GadgetInstance { kind: GadgetKind::DisjointShortestToSegments, network: net, designated, origin })
}
