//! Capacitated flow networks with named nodes and a commodity list.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Directed,
    Undirected,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Directed => f.write_str("directed"),
            Orientation::Undirected => f.write_str("undirected"),
        }
    }
}

/// Traversal direction of an edge relative to its stored `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Demand {
    Finite(Rational),
    Infinite,
}

impl Demand {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Demand::Finite(d) => Some(d),
            Demand::Infinite => None,
        }
    }
}

impl fmt::Display for Demand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Demand::Finite(d) => f.write_str(&rational::format(d)),
            Demand::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commodity {
    pub source: NodeId,
    pub sink: NodeId,
    pub max_demand: Demand,
    /// Lower bound used by utilization minimization; `None` means "same as `max_demand`".
    pub min_demand: Option<Rational>,
}

impl Commodity {
    pub fn new(source: NodeId, sink: NodeId, max_demand: Demand) -> Self {
        Commodity { source, sink, max_demand, min_demand: None }
    }

    /// Demand that must be met when minimizing utilization.
    pub fn required_demand(&self) -> Option<Rational> {
        self.min_demand.clone().or_else(|| self.max_demand.finite().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Rational,
    /// Metric used by shortest-path routing. Defaults to 1 (hop count).
    pub length: u64,
}

impl Edge {
    pub fn endpoints(&self, dir: Direction) -> (NodeId, NodeId) {
        match dir {
            Direction::Forward => (self.tail, self.head),
            Direction::Backward => (self.head, self.tail),
        }
    }
}

/// One traversable direction of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub edge: EdgeId,
    pub dir: Direction,
    pub from: NodeId,
    pub to: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    orientation: Orientation,
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    commodities: Vec<Commodity>,
    out_arcs: Vec<Vec<Arc>>,
    in_arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn builder(orientation: Orientation) -> NetworkBuilder {
        NetworkBuilder::new(orientation)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_directed(&self) -> bool {
        self.orientation == Orientation::Directed
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn node(&self, name: &str) -> Result<NodeId> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn commodities(&self) -> &[Commodity] {
        &self.commodities
    }

    pub fn commodity(&self, index: usize) -> Result<&Commodity> {
        self.commodities.get(index).ok_or(Error::UnknownCommodity(index))
    }

    /// Arcs leaving `node`, ordered by edge id then direction.
    pub fn out_arcs(&self, node: NodeId) -> &[Arc] {
        &self.out_arcs[node.0]
    }

    pub fn in_arcs(&self, node: NodeId) -> &[Arc] {
        &self.in_arcs[node.0]
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.out_arcs.iter().flatten().copied()
    }

    pub fn arc(&self, edge: EdgeId, dir: Direction) -> Arc {
        let (from, to) = self.edges[edge.0].endpoints(dir);
        Arc { edge, dir, from, to }
    }

    pub fn total_capacity(&self) -> Rational {
        rational::sum(self.edges.iter().map(|e| &e.capacity))
    }

    /// Finite stand-in for an unbounded capacity: exceeds any feasible flow.
    pub fn infinite_surrogate(&self) -> Rational {
        self.total_capacity() + Rational::one()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.commodities.iter().flat_map(|c| [c.source, c.sink])
    }

    pub fn with_commodities(&self, commodities: Vec<Commodity>) -> Result<FlowNetwork> {
        let mut net = self.clone();
        net.commodities = commodities;
        net.validate()?;
        Ok(net)
    }

    pub fn with_capacities(&self, caps: impl Fn(&Edge) -> Rational) -> Result<FlowNetwork> {
        let mut net = self.clone();
        for edge in &mut net.edges {
            edge.capacity = caps(edge);
        }
        net.validate()?;
        Ok(net)
    }

    /// Same network with one commodity `(source, sink)` of infinite demand.
    pub fn single_pair(&self, source: NodeId, sink: NodeId) -> Result<FlowNetwork> {
        self.with_commodities(vec![Commodity::new(source, sink, Demand::Infinite)])
    }

    /// Network with the given edges removed; ids are re-assigned densely.
    pub fn without_edges(&self, removed: &[EdgeId]) -> FlowNetwork {
        let mut builder = NetworkBuilder::new(self.orientation);
        for name in &self.names {
            builder = builder.node(name);
        }
        for edge in &self.edges {
            if !removed.contains(&edge.id) {
                builder = builder.edge_with_length(
                    self.name(edge.tail),
                    self.name(edge.head),
                    edge.capacity.clone(),
                    edge.length,
                );
            }
        }
        let mut net = builder.build().expect("sub-network of a valid network is valid");
        net.commodities = self.commodities.clone();
        net
    }

    fn validate(&self) -> Result<()> {
        for (index, c) in self.commodities.iter().enumerate() {
            let bad = |reason: &str| Error::InvalidCommodity { index, reason: reason.to_string() };
            if c.source.0 >= self.names.len() || c.sink.0 >= self.names.len() {
                return Err(bad("endpoint is not a node"));
            }
            if c.source == c.sink {
                return Err(bad("source equals sink"));
            }
            if let Demand::Finite(d) = &c.max_demand {
                if d.is_negative() {
                    return Err(bad("negative demand"));
                }
            }
            if let Some(min) = &c.min_demand {
                if min.is_negative() {
                    return Err(bad("negative minimum demand"));
                }
                if let Demand::Finite(max) = &c.max_demand {
                    if min > max {
                        return Err(bad("minimum demand exceeds maximum demand"));
                    }
                }
            }
        }
        for edge in &self.edges {
            if edge.capacity.is_negative() {
                return Err(Error::NegativeCapacity(edge.id.0));
            }
            if edge.length == 0 {
                return Err(Error::NonPositiveLength(edge.id.0));
            }
        }
        Ok(())
    }
}

/// Incremental constructor. Nodes are created on first mention.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    orientation: Orientation,
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId, Rational, u64)>,
    commodities: Vec<Commodity>,
    error: Option<Error>,
}

impl NetworkBuilder {
    pub fn new(orientation: Orientation) -> Self {
        NetworkBuilder {
            orientation,
            names: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            commodities: Vec::new(),
            error: None,
        }
    }

    fn intern(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = NodeId(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn node(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    /// Declares a node, failing at `build` if it already exists.
    pub fn unique_node(mut self, name: &str) -> Self {
        if self.index.contains_key(name) && self.error.is_none() {
            self.error = Some(Error::DuplicateNode(name.to_string()));
        }
        self.intern(name);
        self
    }

    pub fn edge(self, tail: &str, head: &str, capacity: Rational) -> Self {
        self.edge_with_length(tail, head, capacity, 1)
    }

    pub fn edge_with_length(mut self, tail: &str, head: &str, capacity: Rational, length: u64) -> Self {
        if tail == head && self.error.is_none() {
            self.error = Some(Error::SelfLoop(tail.to_string()));
        }
        let t = self.intern(tail);
        let h = self.intern(head);
        self.edges.push((t, h, capacity, length));
        self
    }

    pub fn commodity(self, source: &str, sink: &str, demand: Demand) -> Self {
        self.commodity_with_min(source, sink, demand, None)
    }

    pub fn commodity_with_min(
        mut self,
        source: &str,
        sink: &str,
        demand: Demand,
        min_demand: Option<Rational>,
    ) -> Self {
        let s = self.intern(source);
        let t = self.intern(sink);
        self.commodities.push(Commodity { source: s, sink: t, max_demand: demand, min_demand });
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn build(self) -> Result<FlowNetwork> {
        if let Some(err) = self.error {
            return Err(err);
        }
        let n = self.names.len();
        let edges: Vec<Edge> = self
            .edges
            .into_iter()
            .enumerate()
            .map(|(i, (tail, head, capacity, length))| Edge { id: EdgeId(i), tail, head, capacity, length })
            .collect();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for edge in &edges {
            let dirs: &[Direction] = match self.orientation {
                Orientation::Directed => &[Direction::Forward],
                Orientation::Undirected => &[Direction::Forward, Direction::Backward],
            };
            for &dir in dirs {
                let (from, to) = edge.endpoints(dir);
                let arc = Arc { edge: edge.id, dir, from, to };
                out_arcs[from.0].push(arc);
                in_arcs[to.0].push(arc);
            }
        }
        let net = FlowNetwork {
            orientation: self.orientation,
            names: self.names,
            index: self.index,
            edges,
            commodities: self.commodities,
            out_arcs,
            in_arcs,
        };
        net.validate()?;
        Ok(net)
    }
}

/// Sum of a zero-or-positive list, convenient for demand totals.
pub fn total_finite_demand(net: &FlowNetwork) -> Option<Rational> {
    let mut total = Rational::zero();
    for c in net.commodities() {
        total += c.max_demand.finite()?;
    }
    Some(total)
}
