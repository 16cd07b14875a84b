//! Greedy augmenting-path heuristic for w-flow.
//!
//! Each round looks for an `s -> t` path through `w` in the residual
//! network (every edge used at most once, in either orientation) and keeps
//! it only if the flow entering `w` strictly grows. Undirected networks keep
//! one net flow per edge, so this is the "no repeated edge" variant.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::network::{Arc, Demand, Direction, FlowNetwork, NodeId, Orientation};
use crate::rational::Rational;
use crate::te::{FlowSolution, PathFlow};
use crate::walk::EdgeWalk;

/// Candidate residual paths examined per round before giving up on the rest.
pub const AUGMENT_CANDIDATE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum AugmentOrder {
    /// Fewest edges first, ties broken by `(edge id, direction)` sequence.
    #[default]
    ShortestFirst,
    /// Node sequences tried in order each round before falling back to
    /// shortest-first. Hops use the lowest-id residual edge.
    Prefer(Vec<Vec<NodeId>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentResult {
    /// Final edge flow decomposed into paths through `w`.
    pub solution: FlowSolution,
    /// Flow entering `w` under the final edge flow.
    pub through_w: Rational,
    /// Net flow along each edge's stored orientation.
    pub edge_flow: Vec<Rational>,
    /// Accepted augmenting paths in order; backward steps cancel flow.
    pub augmentations: Vec<PathFlow>,
    /// Some round hit [`AUGMENT_CANDIDATE_CAP`].
    pub truncated: bool,
}

struct Residual<'a> {
    net: &'a FlowNetwork,
    flow: Vec<Rational>,
}

impl Residual<'_> {
    fn capacity(&self, arc: &Arc) -> Rational {
        let e = self.net.edge(arc.edge);
        let x = &self.flow[arc.edge.0];
        match (self.net.orientation(), arc.dir) {
            (_, Direction::Forward) => &e.capacity - x,
            (Orientation::Directed, Direction::Backward) => x.clone(),
            (Orientation::Undirected, Direction::Backward) => &e.capacity + x,
        }
    }

    fn arcs_from(&self, node: NodeId) -> Vec<Arc> {
        let mut arcs: Vec<Arc> = self.net.out_arcs(node).to_vec();
        if self.net.is_directed() {
            arcs.extend(self.net.in_arcs(node).iter().map(|a| self.net.arc(a.edge, Direction::Backward)));
            arcs.sort();
        }
        arcs
    }

    fn apply(&mut self, walk: &EdgeWalk, delta: &Rational) {
        for step in walk.steps() {
            match step.dir {
                Direction::Forward => self.flow[step.edge.0] += delta,
                Direction::Backward => self.flow[step.edge.0] -= delta,
            }
        }
    }

    fn through(&self, w: NodeId) -> Rational {
        through_node(self.net, &self.flow, w)
    }
}

pub(crate) fn through_node(net: &FlowNetwork, flow: &[Rational], w: NodeId) -> Rational {
    let mut total = Rational::zero();
    if net.is_directed() {
        for arc in net.in_arcs(w) {
            total += &flow[arc.edge.0];
        }
    } else {
        for arc in net.out_arcs(w) {
            // Inflow at w is flow against this outgoing arc.
            let x = &flow[arc.edge.0];
            let inflow = match arc.dir {
                Direction::Forward => -x.clone(),
                Direction::Backward => x.clone(),
            };
            if inflow.is_positive() {
                total += inflow;
            }
        }
    }
    total
}

/// Depth-first enumeration of `source -> sink` walks through `w` over the
/// arcs returned by `arcs_from`, each edge used at most once.
fn search_paths(
    net: &FlowNetwork,
    source: NodeId,
    sink: NodeId,
    w: NodeId,
    arcs_from: &dyn Fn(NodeId) -> Vec<Arc>,
    limit: usize,
) -> (Vec<EdgeWalk>, bool) {
    struct Dfs<'a> {
        sink: NodeId,
        w: NodeId,
        arcs_from: &'a dyn Fn(NodeId) -> Vec<Arc>,
        used: Vec<bool>,
        walk: EdgeWalk,
        out: Vec<EdgeWalk>,
        limit: usize,
        truncated: bool,
    }
    impl Dfs<'_> {
        fn go(&mut self, at: NodeId) {
            if at == self.sink && !self.walk.is_empty() && self.walk.contains_node(self.w) {
                if self.out.len() == self.limit {
                    self.truncated = true;
                    return;
                }
                self.out.push(self.walk.clone());
            }
            for arc in (self.arcs_from)(at) {
                if self.used[arc.edge.0] {
                    continue;
                }
                self.used[arc.edge.0] = true;
                self.walk.push(&arc);
                self.go(arc.to);
                self.walk.pop();
                self.used[arc.edge.0] = false;
                if self.truncated {
                    return;
                }
            }
        }
    }
    let mut dfs = Dfs {
        sink,
        w,
        arcs_from,
        used: vec![false; net.edges().len()],
        walk: EdgeWalk::trivial(source),
        out: Vec::new(),
        limit,
        truncated: false,
    };
    dfs.go(source);
    (dfs.out, dfs.truncated)
}

fn resolve_preferred(res: &Residual<'_>, nodes: &[NodeId]) -> Option<EdgeWalk> {
    let mut walk = EdgeWalk::trivial(*nodes.first()?);
    let mut used = vec![false; res.net.edges().len()];
    for pair in nodes.windows(2) {
        let arc = res
            .arcs_from(pair[0])
            .into_iter()
            .find(|a| a.to == pair[1] && !used[a.edge.0] && res.capacity(a).is_positive())?;
        used[arc.edge.0] = true;
        walk.push(&arc);
    }
    Some(walk)
}

/// Runs the heuristic for commodity `commodity`. Capacities must be
/// integral; a finite demand caps the total pushed.
pub fn augmenting_w_flow(
    net: &FlowNetwork,
    commodity: usize,
    w: NodeId,
    order: &AugmentOrder,
) -> Result<AugmentResult> {
    let c = net.commodity(commodity)?.clone();
    if w.0 >= net.node_count() {
        return Err(Error::UnknownNode(format!("#{}", w.0)));
    }
    if let Some(e) = net.edges().iter().find(|e| !e.capacity.is_integer()) {
        return Err(Error::NonIntegralCapacity(e.id.0));
    }
    let mut res = Residual { net, flow: vec![Rational::zero(); net.edges().len()] };
    let mut pushed = Rational::zero();
    let mut augmentations = Vec::new();
    let mut truncated = false;
    loop {
        let room = match &c.max_demand {
            Demand::Finite(d) => Some(d - &pushed),
            Demand::Infinite => None,
        };
        if room.as_ref().is_some_and(|r| !r.is_positive()) {
            break;
        }
        let arcs_from = |node: NodeId| -> Vec<Arc> {
            res.arcs_from(node).into_iter().filter(|a| res.capacity(a).is_positive()).collect()
        };
        let (mut candidates, hit_cap) = search_paths(net, c.source, c.sink, w, &arcs_from, AUGMENT_CANDIDATE_CAP);
        truncated |= hit_cap;
        candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.steps().cmp(b.steps())));
        if let AugmentOrder::Prefer(seqs) = order {
            let preferred: Vec<EdgeWalk> = seqs
                .iter()
                .filter_map(|seq| resolve_preferred(&res, seq))
                .filter(|p| p.start() == c.source && p.end() == c.sink && p.contains_node(w))
                .collect();
            candidates.splice(0..0, preferred);
        }
        let before = res.through(w);
        let mut accepted = None;
        for cand in candidates {
            let mut delta = cand.arcs(net).map(|a| res.capacity(&a)).min().expect("candidate has edges");
            if let Some(r) = &room {
                if *r < delta {
                    delta = r.clone();
                }
            }
            res.apply(&cand, &delta);
            if res.through(w) > before {
                accepted = Some((cand, delta));
                break;
            }
            res.apply(&cand, &-delta);
        }
        match accepted {
            Some((path, delta)) => {
                pushed += &delta;
                augmentations.push(PathFlow { path, flow: delta });
            }
            None => break,
        }
    }
    let through_w = res.through(w);
    let paths = decompose(net, &res.flow, c.source, c.sink, w);
    let mut solution = FlowSolution::empty(net.commodities().len());
    solution.flows[commodity] = paths;
    solution.objective = solution.commodity_total(commodity);
    Ok(AugmentResult { solution, through_w, edge_flow: res.flow, augmentations, truncated })
}

/// Greedily peels `source -> sink` paths through `w` off an edge flow.
pub(crate) fn decompose(
    net: &FlowNetwork,
    flow: &[Rational],
    source: NodeId,
    sink: NodeId,
    w: NodeId,
) -> Vec<PathFlow> {
    // Remaining amount on the arc that carries each edge's flow.
    let mut left: Vec<(Direction, Rational)> = flow
        .iter()
        .map(|x| if x.is_negative() { (Direction::Backward, -x.clone()) } else { (Direction::Forward, x.clone()) })
        .collect();
    let mut out = Vec::new();
    loop {
        let arcs_from = |node: NodeId| -> Vec<Arc> {
            net.out_arcs(node)
                .iter()
                .copied()
                .filter(|a| left[a.edge.0].0 == a.dir && left[a.edge.0].1.is_positive())
                .collect()
        };
        let (found, _) = search_paths(net, source, sink, w, &arcs_from, 1);
        let Some(path) = found.into_iter().next() else {
            break;
        };
        let delta = path.steps().iter().map(|s| left[s.edge.0].1.clone()).min().expect("path has edges");
        for step in path.steps() {
            left[step.edge.0].1 -= &delta;
        }
        out.push(PathFlow { path, flow: delta });
    }
    out
}
