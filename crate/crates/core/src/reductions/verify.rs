//! Brute-force solvers for both sides of each gadget.

use std::collections::{HashSet, VecDeque};

use num_traits::One;

use crate::centrality::{n_group_max_flow, CentralityOptions, NGroupMethod};
use crate::constrained::max_w_flow_exact;
use crate::error::{Error, Result};
use crate::network::{EdgeId, FlowNetwork, NodeId};
use crate::paths::{enumerate_between, EnumOptions, PathConstraint};
use crate::rational::{int, Rational};
use crate::sr::{acyclic_feasible, shortest_paths_between, AcyclicAnswer, AcyclicMode};
use crate::walk::EdgeWalk;

use super::{gadget_2dp_to_swt, gadget_kdsp, gadget_mcp, gadget_node_split, gadget_prop1, split_name};

/// Answers of the source problem and of its translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equivalence {
    pub source: bool,
    pub gadget: bool,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.source == self.gadget
    }
}

/// Optimal values of the source problem and of its translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub source: Rational,
    pub gadget: Rational,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.source == self.gadget
    }
}

fn all_between(net: &FlowNetwork, a: NodeId, b: NodeId, constraint: &PathConstraint, cap: usize) -> Result<Vec<EdgeWalk>> {
    let (paths, truncated) = enumerate_between(net, a, b, constraint, EnumOptions::with_cap(cap));
    if truncated {
        return Err(Error::SizeGuard(format!("more than {cap} paths between `{}` and `{}`", net.name(a), net.name(b))));
    }
    Ok(paths)
}

/// BFS from `a` to `b` avoiding the given nodes and edges.
fn reachable_avoiding(net: &FlowNetwork, a: NodeId, b: NodeId, nodes: &HashSet<NodeId>, edges: &HashSet<EdgeId>) -> bool {
    if nodes.contains(&a) || nodes.contains(&b) {
        return false;
    }
    let mut seen = vec![false; net.node_count()];
    seen[a.0] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            return true;
        }
        for arc in net.out_arcs(u) {
            if !seen[arc.to.0] && !nodes.contains(&arc.to) && !edges.contains(&arc.edge) {
                seen[arc.to.0] = true;
                queue.push_back(arc.to);
            }
        }
    }
    false
}

/// Node-disjoint `u1 -> u2` and `v1 -> v2` paths exist.
pub fn two_disjoint_paths(g: &FlowNetwork, u1: NodeId, u2: NodeId, v1: NodeId, v2: NodeId, cap: usize) -> Result<bool> {
    for p in all_between(g, u1, u2, &PathConstraint::Simple, cap)? {
        let used: HashSet<NodeId> = p.nodes().iter().copied().collect();
        if reachable_avoiding(g, v1, v2, &used, &HashSet::new()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Edge-disjoint `a -> b` and `c -> d` paths exist.
pub fn two_edge_disjoint_paths(net: &FlowNetwork, a: NodeId, b: NodeId, c: NodeId, d: NodeId, cap: usize) -> Result<bool> {
    // Shortcutting a path only frees edges, so simple first paths suffice.
    for p in all_between(net, a, b, &PathConstraint::Simple, cap)? {
        let used: HashSet<EdgeId> = p.steps().iter().map(|s| s.edge).collect();
        if reachable_avoiding(net, c, d, &HashSet::new(), &used) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn simple_path_through(net: &FlowNetwork, s: NodeId, w: NodeId, t: NodeId) -> bool {
    !enumerate_between(net, s, t, &PathConstraint::SimpleThrough(w), EnumOptions::with_cap(1)).0.is_empty()
}

pub fn path_through(net: &FlowNetwork, s: NodeId, w: NodeId, t: NodeId) -> bool {
    !enumerate_between(net, s, t, &PathConstraint::Through(w), EnumOptions::with_cap(1)).0.is_empty()
}

pub fn check_2dp(g: &FlowNetwork, u1: NodeId, u2: NodeId, v1: NodeId, v2: NodeId, cap: usize) -> Result<Equivalence> {
    let gad = gadget_2dp_to_swt(g, u1, u2, v1, v2)?;
    let d = &gad.designated;
    let (s, t, w) = (d.s.expect("s"), d.t.expect("t"), d.w.expect("w"));
    Ok(Equivalence {
        source: two_disjoint_paths(g, u1, u2, v1, v2, cap)?,
        gadget: simple_path_through(&gad.network, s, w, t),
    })
}

/// Simple `s -> w -> t` path in `g` against edge-disjoint
/// `s_in -> w_in` and `w_out -> t_out` paths in the split network.
pub fn check_node_split(g: &FlowNetwork, s: NodeId, w: NodeId, t: NodeId, cap: usize) -> Result<Equivalence> {
    if s == w || w == t || s == t {
        return Err(Error::NodesNotDistinct("s, w, t".into()));
    }
    let gad = gadget_node_split(g)?;
    let n = &gad.network;
    let at = |v: NodeId, exit: bool| n.node(&split_name(g.name(v), exit));
    Ok(Equivalence {
        source: simple_path_through(g, s, w, t),
        gadget: two_edge_disjoint_paths(n, at(s, false)?, at(w, false)?, at(w, true)?, at(t, true)?, cap)?,
    })
}

/// An `s -> w -> t` path against a unit of `w`-flow in the unit-capacity copy.
pub fn check_prop1(g: &FlowNetwork, s: NodeId, t: NodeId, w: NodeId, cap: usize) -> Result<Equivalence> {
    let gad = gadget_prop1(g, s, t, w)?;
    let flow = max_w_flow_exact(&gad.network, w, cap)?;
    Ok(Equivalence { source: path_through(g, s, w, t), gadget: flow.objective >= Rational::one() })
}

/// Largest number of items covered by at most `n` sets.
pub fn max_coverage(items: usize, sets: &[Vec<usize>], n: usize) -> usize {
    let mut best = 0;
    let k = sets.len();
    for mask in 0u64..(1u64 << k) {
        if mask.count_ones() as usize > n {
            continue;
        }
        let mut covered = vec![false; items];
        for (i, set) in sets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &j in set {
                    covered[j] = true;
                }
            }
        }
        best = best.max(covered.iter().filter(|&&c| c).count());
    }
    best
}

pub fn check_mcp(items: usize, sets: &[Vec<usize>], n: usize, opts: &CentralityOptions) -> Result<Comparison> {
    if sets.len() > 20 {
        return Err(Error::SizeGuard(format!("{} sets", sets.len())));
    }
    let gad = gadget_mcp(items, sets, n)?;
    let best = n_group_max_flow(&gad.network, n, NGroupMethod::Brute, opts)?;
    Ok(Comparison { source: int(max_coverage(items, sets, n) as i64), gadget: best.value })
}

/// Pairwise node-disjoint shortest `u_i -> v_i` paths exist.
pub fn disjoint_shortest_paths(g: &FlowNetwork, pairs: &[(NodeId, NodeId)], cap: usize) -> Result<bool> {
    let mut choices = Vec::new();
    for &(u, v) in pairs {
        let (paths, truncated) = shortest_paths_between(g, u, v, cap);
        if truncated {
            return Err(Error::SizeGuard(format!("more than {cap} shortest paths")));
        }
        if paths.is_empty() {
            return Ok(false);
        }
        choices.push(paths);
    }
    fn pick(choices: &[Vec<EdgeWalk>], used: &mut HashSet<NodeId>) -> bool {
        let Some((first, rest)) = choices.split_first() else { return true };
        for p in first {
            if p.nodes().iter().any(|n| used.contains(n)) {
                continue;
            }
            used.extend(p.nodes().iter().copied());
            if pick(rest, used) {
                return true;
            }
            for n in p.nodes() {
                used.remove(n);
            }
        }
        false
    }
    Ok(pick(&choices, &mut HashSet::new()))
}

pub fn check_kdsp(g: &FlowNetwork, pairs: &[(NodeId, NodeId)], cap: usize) -> Result<Equivalence> {
    let gad = gadget_kdsp(g, pairs)?;
    let d = &gad.designated;
    let answer =
        acyclic_feasible(&gad.network, d.s.expect("s"), d.t.expect("t"), &d.middlepoints, AcyclicMode::SimplePath, cap)?;
    Ok(Equivalence {
        source: disjoint_shortest_paths(g, pairs, cap)?,
        gadget: matches!(answer, AcyclicAnswer::Feasible(_)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Orientation;

    fn ids(g: &FlowNetwork, names: &[&str]) -> Vec<NodeId> {
        names.iter().map(|n| g.node(n).unwrap()).collect()
    }

    #[test]
    fn crossing_paths_are_not_disjoint() {
        let g = FlowNetwork::builder(Orientation::Directed)
            .edge("u1", "x", int(1))
            .edge("x", "u2", int(1))
            .edge("v1", "x", int(1))
            .edge("x", "v2", int(1))
            .build()
            .unwrap();
        let v = ids(&g, &["u1", "u2", "v1", "v2"]);
        let eq = check_2dp(&g, v[0], v[1], v[2], v[3], 1000).unwrap();
        assert_eq!(eq, Equivalence { source: false, gadget: false });
    }

    #[test]
    fn parallel_paths_are_disjoint() {
        let g = FlowNetwork::builder(Orientation::Directed)
            .edge("u1", "x", int(1))
            .edge("x", "u2", int(1))
            .edge("v1", "y", int(1))
            .edge("y", "v2", int(1))
            .build()
            .unwrap();
        let v = ids(&g, &["u1", "u2", "v1", "v2"]);
        let eq = check_2dp(&g, v[0], v[1], v[2], v[3], 1000).unwrap();
        assert_eq!(eq, Equivalence { source: true, gadget: true });
    }

    #[test]
    fn node_split_sees_shared_nodes() {
        // The only s -> w -> t route passes x twice.
        let g = FlowNetwork::builder(Orientation::Directed)
            .edge("s", "x", int(1))
            .edge("x", "w", int(1))
            .edge("w", "x", int(1))
            .edge("x", "t", int(1))
            .build()
            .unwrap();
        let v = ids(&g, &["s", "w", "t"]);
        let eq = check_node_split(&g, v[0], v[1], v[2], 1000).unwrap();
        assert_eq!(eq, Equivalence { source: false, gadget: false });
        let eq = check_prop1(&g, v[0], v[2], v[1], 1000).unwrap();
        assert_eq!(eq, Equivalence { source: true, gadget: true });
    }

    #[test]
    fn coverage_matches_group_flow() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        let opts = CentralityOptions::default();
        let c = check_mcp(4, &sets, 2, &opts).unwrap();
        assert_eq!(c.source, int(4));
        assert!(c.holds());
    }
}
