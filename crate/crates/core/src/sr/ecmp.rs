//! Shortest-path distances, path counts and ECMP edge fractions.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::network::{FlowNetwork, NodeId};
use crate::rational::Rational;
use crate::walk::EdgeWalk;

/// Distances and shortest-path counts from one root, following arcs
/// forwards (`reverse = false`) or backwards.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub root: NodeId,
    pub dist: Vec<Option<u64>>,
    pub count: Vec<BigUint>,
}

impl ShortestPaths {
    pub fn compute(net: &FlowNetwork, root: NodeId, reverse: bool) -> ShortestPaths {
        let n = net.node_count();
        let mut dist: Vec<Option<u64>> = vec![None; n];
        let mut count = vec![BigUint::zero(); n];
        let mut done = vec![false; n];
        dist[root.0] = Some(0);
        count[root.0] = BigUint::one();
        let mut heap = BinaryHeap::from([Reverse((0u64, root))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u.0] {
                continue;
            }
            done[u.0] = true;
            let arcs = if reverse { net.in_arcs(u) } else { net.out_arcs(u) };
            for a in arcs {
                let next = if reverse { a.from } else { a.to };
                let nd = d + net.edge(a.edge).length;
                match dist[next.0] {
                    Some(old) if old < nd => {}
                    Some(old) if old == nd => {
                        let add = count[u.0].clone();
                        count[next.0] += add;
                    }
                    _ => {
                        dist[next.0] = Some(nd);
                        count[next.0] = count[u.0].clone();
                        heap.push(Reverse((nd, next)));
                    }
                }
            }
        }
        ShortestPaths { root, dist, count }
    }
}

/// ECMP split of one segment `source -> sink` over its shortest paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcmpTable {
    pub source: NodeId,
    pub sink: NodeId,
    pub distance: u64,
    pub paths: BigUint,
    /// Share of shortest paths using each edge; edges on no shortest path are absent.
    pub fractions: BTreeMap<crate::network::EdgeId, Rational>,
}

impl EcmpTable {
    pub fn fraction(&self, edge: crate::network::EdgeId) -> Rational {
        self.fractions.get(&edge).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Fraction of `u -> v` shortest paths crossing each edge `(a, b)`:
/// `sigma(u,a) * sigma(b,v) / sigma(u,v)` when the edge is tight.
pub fn ecmp_fractions(net: &FlowNetwork, u: NodeId, v: NodeId) -> Result<EcmpTable> {
    let from_u = ShortestPaths::compute(net, u, false);
    let to_v = ShortestPaths::compute(net, v, true);
    table_from(net, &from_u, &to_v)
}

pub(crate) fn table_from(net: &FlowNetwork, from_u: &ShortestPaths, to_v: &ShortestPaths) -> Result<EcmpTable> {
    let (u, v) = (from_u.root, to_v.root);
    let Some(total) = from_u.dist[v.0] else {
        return Err(Error::NoPath(net.name(u).to_string(), net.name(v).to_string()));
    };
    let paths = from_u.count[v.0].clone();
    let mut fractions = BTreeMap::new();
    for arc in net.arcs() {
        let (Some(da), Some(db)) = (from_u.dist[arc.from.0], to_v.dist[arc.to.0]) else {
            continue;
        };
        if da + net.edge(arc.edge).length + db != total {
            continue;
        }
        let through = &from_u.count[arc.from.0] * &to_v.count[arc.to.0];
        let share = Rational::new(BigInt::from(through), BigInt::from(paths.clone()));
        *fractions.entry(arc.edge).or_insert_with(Rational::zero) += share;
    }
    Ok(EcmpTable { source: u, sink: v, distance: total, paths, fractions })
}

/// Every shortest `u -> v` path, lowest edge id first. Stops after `cap`
/// paths and reports truncation.
pub fn shortest_paths_between(net: &FlowNetwork, u: NodeId, v: NodeId, cap: usize) -> (Vec<EdgeWalk>, bool) {
    let from_u = ShortestPaths::compute(net, u, false);
    let to_v = ShortestPaths::compute(net, v, true);
    let Some(total) = from_u.dist[v.0] else {
        return (Vec::new(), false);
    };
    let mut out = Vec::new();
    let mut walk = EdgeWalk::trivial(u);
    let mut truncated = false;
    extend(net, &from_u, &to_v, total, v, &mut walk, &mut out, cap, &mut truncated);
    (out, truncated)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    net: &FlowNetwork,
    from_u: &ShortestPaths,
    to_v: &ShortestPaths,
    total: u64,
    v: NodeId,
    walk: &mut EdgeWalk,
    out: &mut Vec<EdgeWalk>,
    cap: usize,
    truncated: &mut bool,
) {
    let at = walk.end();
    if at == v {
        if out.len() == cap {
            *truncated = true;
        } else {
            out.push(walk.clone());
        }
        return;
    }
    for arc in net.out_arcs(at) {
        if *truncated {
            return;
        }
        let tight = match (from_u.dist[at.0], to_v.dist[arc.to.0]) {
            (Some(da), Some(db)) => da + net.edge(arc.edge).length + db == total,
            _ => false,
        };
        if tight {
            walk.push(arc);
            extend(net, from_u, to_v, total, v, walk, out, cap, truncated);
            walk.pop();
        }
    }
}
