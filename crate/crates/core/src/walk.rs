//! Alternating node/edge sequences and their classification.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::network::{Arc, Direction, EdgeId, FlowNetwork, NodeId, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub dir: Direction,
}

/// A walk `v0 e0 v1 ... v_k`. `nodes.len() == steps.len() + 1` always holds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeWalk {
    nodes: Vec<NodeId>,
    steps: Vec<Step>,
}

impl EdgeWalk {
    pub fn trivial(start: NodeId) -> Self {
        EdgeWalk { nodes: vec![start], steps: Vec::new() }
    }

    /// Builds from raw parts without checking consistency; see [`validate_walk`].
    pub fn from_parts(nodes: Vec<NodeId>, steps: Vec<Step>) -> Self {
        assert_eq!(nodes.len(), steps.len() + 1, "walk needs one more node than steps");
        EdgeWalk { nodes, steps }
    }

    pub fn from_arcs(start: NodeId, arcs: &[Arc]) -> Self {
        let mut walk = EdgeWalk::trivial(start);
        for arc in arcs {
            walk.push(arc);
        }
        walk
    }

    /// Resolves a node-name sequence, picking the lowest-id edge for each hop.
    pub fn from_names(net: &FlowNetwork, names: &[&str]) -> Option<Self> {
        let first = net.node(names.first()?).ok()?;
        let mut walk = EdgeWalk::trivial(first);
        for pair in names.windows(2) {
            let from = net.node(pair[0]).ok()?;
            let to = net.node(pair[1]).ok()?;
            let arc = net.out_arcs(from).iter().find(|a| a.to == to)?;
            walk.push(arc);
        }
        Some(walk)
    }

    pub fn push(&mut self, arc: &Arc) {
        debug_assert_eq!(*self.nodes.last().unwrap(), arc.from);
        self.steps.push(Step { edge: arc.edge, dir: arc.dir });
        self.nodes.push(arc.to);
    }

    pub fn pop(&mut self) {
        if self.steps.pop().is_some() {
            self.nodes.pop();
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains_node(&self, node: NodeId) -> bool {
        self.nodes.contains(&node)
    }

    pub fn contains_edge(&self, edge: EdgeId) -> bool {
        self.steps.iter().any(|s| s.edge == edge)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.nodes.iter().all(|n| seen.insert(*n))
    }

    /// Number of traversals of each edge (1, or 2 for opposite-direction reuse).
    pub fn edge_usage(&self) -> BTreeMap<EdgeId, usize> {
        let mut usage = BTreeMap::new();
        for step in &self.steps {
            *usage.entry(step.edge).or_insert(0) += 1;
        }
        usage
    }

    pub fn arcs<'a>(&'a self, net: &'a FlowNetwork) -> impl Iterator<Item = Arc> + 'a {
        self.steps.iter().map(move |s| net.arc(s.edge, s.dir))
    }

    /// Same walk traversed backwards.
    pub fn reversed(&self) -> EdgeWalk {
        let nodes = self.nodes.iter().rev().copied().collect();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step { edge: s.edge, dir: s.dir.reversed() })
            .collect();
        EdgeWalk { nodes, steps }
    }

    /// Sub-walk between node positions `from..=to`.
    pub fn slice(&self, from: usize, to: usize) -> EdgeWalk {
        EdgeWalk { nodes: self.nodes[from..=to].to_vec(), steps: self.steps[from..to].to_vec() }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &EdgeWalk) -> EdgeWalk {
        assert_eq!(self.end(), other.start(), "walks do not meet");
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        EdgeWalk { nodes, steps }
    }

    pub fn display<'a>(&'a self, net: &'a FlowNetwork) -> WalkDisplay<'a> {
        WalkDisplay { walk: self, net }
    }
}

pub struct WalkDisplay<'a> {
    walk: &'a EdgeWalk,
    net: &'a FlowNetwork,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, node) in self.walk.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str("->")?;
            }
            f.write_str(self.net.name(*node))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidWalk {
    /// Step does not start at the previous node or does not end at the next one.
    Disconnected { step: usize },
    UnknownEdge { step: usize },
    /// Directed network traversed against the edge orientation.
    WrongDirection { step: usize },
    /// Edge (or, in undirected networks, edge+direction) already used.
    EdgeRepeat { step: usize, edge: EdgeId },
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkClass {
    ValidPath,
    ValidSimplePath,
    Invalid(InvalidWalk),
}

impl WalkClass {
    pub fn is_valid(&self) -> bool {
        !matches!(self, WalkClass::Invalid(_))
    }
}

/// Classifies a walk against the path rules of `net`: in directed networks
/// no edge may repeat; in undirected networks an edge may appear twice only
/// in opposite directions.
pub fn validate_walk(net: &FlowNetwork, walk: &EdgeWalk) -> WalkClass {
    if walk.nodes.len() != walk.steps.len() + 1 {
        return WalkClass::Invalid(InvalidWalk::Empty);
    }
    let mut used = HashSet::new();
    for (k, step) in walk.steps.iter().enumerate() {
        let Some(edge) = net.edges().get(step.edge.0) else {
            return WalkClass::Invalid(InvalidWalk::UnknownEdge { step: k });
        };
        if net.orientation() == Orientation::Directed && step.dir == Direction::Backward {
            return WalkClass::Invalid(InvalidWalk::WrongDirection { step: k });
        }
        let (from, to) = edge.endpoints(step.dir);
        if from != walk.nodes[k] || to != walk.nodes[k + 1] {
            return WalkClass::Invalid(InvalidWalk::Disconnected { step: k });
        }
        let key = match net.orientation() {
            Orientation::Directed => (step.edge, Direction::Forward),
            Orientation::Undirected => (step.edge, step.dir),
        };
        if !used.insert(key) {
            return WalkClass::Invalid(InvalidWalk::EdgeRepeat { step: k, edge: step.edge });
        }
    }
    if walk.is_simple() {
        WalkClass::ValidSimplePath
    } else {
        WalkClass::ValidPath
    }
}
