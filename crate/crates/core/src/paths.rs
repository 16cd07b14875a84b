//! Exhaustive enumeration of edge-distinct paths.
//!
//! Paths follow the "no repeated edge" rule of [`crate::walk::validate_walk`];
//! nodes may repeat, and a path may pass through its sink before ending there.
//! Enumeration is a depth-first search over arcs in increasing `(edge, direction)`
//! order, so every family is produced in lexicographic order of its edge sequences.

use crate::error::{Error, Result};
use crate::network::{Arc, FlowNetwork, NodeId, Orientation};
use crate::walk::EdgeWalk;

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathConstraint {
    Unconstrained,
    /// Path must visit the node (anywhere, endpoints included).
    Through(NodeId),
    /// Path must visit at least one node of the set.
    ThroughAny(Vec<NodeId>),
    /// Simple path (no repeated node) that visits the node.
    SimpleThrough(NodeId),
    /// Any simple path.
    Simple,
}

impl PathConstraint {
    fn is_simple(&self) -> bool {
        matches!(self, PathConstraint::SimpleThrough(_) | PathConstraint::Simple)
    }

    pub fn accepts(&self, walk: &EdgeWalk) -> bool {
        match self {
            PathConstraint::Unconstrained => true,
            PathConstraint::Through(w) => walk.contains_node(*w),
            PathConstraint::ThroughAny(set) => set.iter().any(|w| walk.contains_node(*w)),
            PathConstraint::SimpleThrough(w) => walk.is_simple() && walk.contains_node(*w),
            PathConstraint::Simple => walk.is_simple(),
        }
    }
}

/// How often an undirected edge may be traversed by one path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeReuse {
    /// At most once per direction (twice in total, opposite ways).
    #[default]
    OppositeDirections,
    /// At most once in any direction.
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub cap: usize,
    pub reuse: EdgeReuse,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_PATH_CAP, reuse: EdgeReuse::OppositeDirections }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: usize) -> Self {
        EnumOptions { cap, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub commodity: usize,
    pub constraint: PathConstraint,
    pub paths: Vec<EdgeWalk>,
    pub truncated: bool,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Sub-family of paths visiting at least one node of `set`, order preserved.
    pub fn restrict_to_any(&self, set: &[NodeId]) -> PathFamily {
        PathFamily {
            commodity: self.commodity,
            constraint: PathConstraint::ThroughAny(set.to_vec()),
            paths: self
                .paths
                .iter()
                .filter(|p| set.iter().any(|w| p.contains_node(*w)))
                .cloned()
                .collect(),
            truncated: self.truncated,
        }
    }

    pub fn ensure_complete(&self) -> Result<()> {
        if self.truncated {
            Err(Error::TruncatedFamily(self.commodity))
        } else {
            Ok(())
        }
    }
}

/// Enumerates every path of commodity `commodity` satisfying `constraint`.
/// Stops after `cap` paths and marks the family truncated.
pub fn enumerate_paths(
    net: &FlowNetwork,
    commodity: usize,
    constraint: &PathConstraint,
    cap: usize,
) -> Result<PathFamily> {
    enumerate_paths_with(net, commodity, constraint, EnumOptions::with_cap(cap))
}

pub fn enumerate_paths_with(
    net: &FlowNetwork,
    commodity: usize,
    constraint: &PathConstraint,
    options: EnumOptions,
) -> Result<PathFamily> {
    let c = net.commodity(commodity)?;
    check_constraint_nodes(net, constraint)?;
    let (paths, truncated) = enumerate_between(net, c.source, c.sink, constraint, options);
    Ok(PathFamily { commodity, constraint: constraint.clone(), paths, truncated })
}

/// Families for every commodity under the same constraint.
pub fn all_families(net: &FlowNetwork, constraint: &PathConstraint, options: EnumOptions) -> Result<Vec<PathFamily>> {
    (0..net.commodities().len())
        .map(|i| enumerate_paths_with(net, i, constraint, options))
        .collect()
}

fn check_constraint_nodes(net: &FlowNetwork, constraint: &PathConstraint) -> Result<()> {
    let check = |w: &NodeId| {
        if w.0 < net.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode(format!("#{}", w.0)))
        }
    };
    match constraint {
        PathConstraint::Through(w) | PathConstraint::SimpleThrough(w) => check(w),
        PathConstraint::ThroughAny(set) => set.iter().try_for_each(check),
        PathConstraint::Unconstrained | PathConstraint::Simple => Ok(()),
    }
}

/// Raw enumeration between two nodes. Returns the paths and whether the cap was hit.
pub fn enumerate_between(
    net: &FlowNetwork,
    source: NodeId,
    sink: NodeId,
    constraint: &PathConstraint,
    options: EnumOptions,
) -> (Vec<EdgeWalk>, bool) {
    let mut search = Search {
        net,
        sink,
        constraint,
        options,
        used: vec![0u8; net.edges().len()],
        visited: vec![0u32; net.node_count()],
        walk: EdgeWalk::trivial(source),
        out: Vec::new(),
        truncated: false,
    };
    search.visited[source.0] += 1;
    search.descend(source);
    (search.out, search.truncated)
}

struct Search<'a> {
    net: &'a FlowNetwork,
    sink: NodeId,
    constraint: &'a PathConstraint,
    options: EnumOptions,
    /// Bit 0: forward traversal used, bit 1: backward traversal used.
    used: Vec<u8>,
    visited: Vec<u32>,
    walk: EdgeWalk,
    out: Vec<EdgeWalk>,
    truncated: bool,
}

impl Search<'_> {
    fn arc_mask(arc: &Arc) -> u8 {
        match arc.dir {
            crate::network::Direction::Forward => 1,
            crate::network::Direction::Backward => 2,
        }
    }

    fn arc_free(&self, arc: &Arc) -> bool {
        let used = self.used[arc.edge.0];
        match (self.net.orientation(), self.options.reuse) {
            (Orientation::Directed, _) | (Orientation::Undirected, EdgeReuse::Never) => used == 0,
            (Orientation::Undirected, EdgeReuse::OppositeDirections) => used & Self::arc_mask(arc) == 0,
        }
    }

    fn descend(&mut self, at: NodeId) {
        if self.truncated {
            return;
        }
        let simple = self.constraint.is_simple();
        if at == self.sink && !self.walk.is_empty() {
            if self.constraint.accepts(&self.walk) {
                if self.out.len() == self.options.cap {
                    self.truncated = true;
                    return;
                }
                self.out.push(self.walk.clone());
            }
            if simple {
                return;
            }
        }
        for arc in self.net.out_arcs(at) {
            if !self.arc_free(arc) {
                continue;
            }
            if simple && self.visited[arc.to.0] > 0 {
                continue;
            }
            let mask = Self::arc_mask(arc);
            self.used[arc.edge.0] |= mask;
            self.visited[arc.to.0] += 1;
            self.walk.push(arc);
            self.descend(arc.to);
            self.walk.pop();
            self.visited[arc.to.0] -= 1;
            self.used[arc.edge.0] &= !mask;
            if self.truncated {
                return;
            }
        }
    }
}
