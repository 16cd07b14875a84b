//! Can one shortest path per segment be chosen so that the whole
//! source-to-destination route is a path (or a simple path)?

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::network::{FlowNetwork, NodeId};
use crate::walk::{validate_walk, EdgeWalk, WalkClass};

use super::ecmp::{shortest_paths_between, ShortestPaths};
use super::require_directed;

pub const DEFAULT_COMBINATION_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcyclicMode {
    /// No repeated edge.
    Path,
    /// No repeated node.
    SimplePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcyclicAnswer {
    Feasible(EdgeWalk),
    Infeasible,
}

/// Exhaustive search over one shortest path per segment, visiting every
/// middlepoint in order. Refuses with `TooManyCombinations` when the
/// product of per-segment path counts exceeds `cap`.
pub fn acyclic_feasible(
    net: &FlowNetwork,
    source: NodeId,
    dest: NodeId,
    middlepoints: &[NodeId],
    mode: AcyclicMode,
    cap: usize,
) -> Result<AcyclicAnswer> {
    require_directed(net)?;
    let mut hops = vec![source];
    hops.extend_from_slice(middlepoints);
    hops.push(dest);
    if let Some(n) = hops.iter().find(|n| n.0 >= net.node_count()) {
        return Err(Error::UnknownNode(format!("#{}", n.0)));
    }
    if hops.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidConfig("consecutive segment endpoints coincide".into()));
    }
    let mut product = BigUint::one();
    for p in hops.windows(2) {
        let sp = ShortestPaths::compute(net, p[0], false);
        if sp.dist[p[1].0].is_none() {
            return Ok(AcyclicAnswer::Infeasible);
        }
        product *= &sp.count[p[1].0];
    }
    if product > BigUint::from(cap) {
        return Err(Error::TooManyCombinations { count: product.to_string(), cap });
    }
    let choices: Vec<Vec<EdgeWalk>> = hops.windows(2).map(|p| shortest_paths_between(net, p[0], p[1], cap).0).collect();

    let mut search = Search { mode, choices: &choices, edges: HashSet::new(), nodes: HashSet::new(), picked: Vec::new() };
    search.nodes.insert(source);
    if !search.run() {
        return Ok(AcyclicAnswer::Infeasible);
    }
    let walk = search.picked.iter().skip(1).fold(search.picked[0].clone(), |acc, w| acc.concat(w));
    let class = validate_walk(net, &walk);
    debug_assert!(match mode {
        AcyclicMode::Path => class.is_valid(),
        AcyclicMode::SimplePath => class == WalkClass::ValidSimplePath,
    });
    Ok(AcyclicAnswer::Feasible(walk))
}

struct Search<'a> {
    mode: AcyclicMode,
    choices: &'a [Vec<EdgeWalk>],
    edges: HashSet<crate::network::EdgeId>,
    nodes: HashSet<NodeId>,
    picked: Vec<EdgeWalk>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        let seg = self.picked.len();
        if seg == self.choices.len() {
            return true;
        }
        for cand in &self.choices[seg] {
            let fits = match self.mode {
                AcyclicMode::Path => cand.steps().iter().all(|s| !self.edges.contains(&s.edge)),
                // The first node is the previous segment's last one.
                AcyclicMode::SimplePath => cand.nodes()[1..].iter().all(|n| !self.nodes.contains(n)),
            };
            if !fits {
                continue;
            }
            self.edges.extend(cand.steps().iter().map(|s| s.edge));
            self.nodes.extend(cand.nodes()[1..].iter().copied());
            self.picked.push(cand.clone());
            if self.run() {
                return true;
            }
            self.picked.pop();
            for s in cand.steps() {
                self.edges.remove(&s.edge);
            }
            for n in &cand.nodes()[1..] {
                self.nodes.remove(n);
            }
        }
        false
    }
}
