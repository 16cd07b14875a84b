//! Single-pair maximum flow (Edmonds–Karp) over exact rationals.
//!
//! Used for the unconstrained denominators of flow centrality, where the
//! path LP would be needlessly exponential.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::network::{Arc, Direction, FlowNetwork, NodeId, Orientation};
use crate::rational::Rational;

/// Value of a maximum `source -> sink` flow, ignoring the commodity list.
/// Undirected edges carry net flow in either direction up to capacity.
pub fn max_flow_value(net: &FlowNetwork, source: NodeId, sink: NodeId) -> Rational {
    if source == sink {
        return Rational::zero();
    }
    // Net flow along each edge's tail -> head orientation.
    let mut flow = vec![Rational::zero(); net.edges().len()];
    let residual = |flow: &[Rational], arc: &Arc| -> Rational {
        let e = net.edge(arc.edge);
        match (net.orientation(), arc.dir) {
            (_, Direction::Forward) => &e.capacity - &flow[arc.edge.0],
            (Orientation::Directed, Direction::Backward) => flow[arc.edge.0].clone(),
            (Orientation::Undirected, Direction::Backward) => &e.capacity + &flow[arc.edge.0],
        }
    };
    let residual_arcs = |node: NodeId| -> Vec<Arc> {
        let mut arcs: Vec<Arc> = net.out_arcs(node).to_vec();
        if net.is_directed() {
            arcs.extend(net.in_arcs(node).iter().map(|a| net.arc(a.edge, Direction::Backward)));
        }
        arcs
    };
    let mut total = Rational::zero();
    loop {
        let mut pred: Vec<Option<Arc>> = vec![None; net.node_count()];
        let mut seen = vec![false; net.node_count()];
        seen[source.0] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for arc in residual_arcs(u) {
                if !seen[arc.to.0] && residual(&flow, &arc).is_positive() {
                    seen[arc.to.0] = true;
                    pred[arc.to.0] = Some(arc);
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink.0] {
            return total;
        }
        let mut path = Vec::new();
        let mut at = sink;
        while let Some(arc) = pred[at.0] {
            path.push(arc);
            at = arc.from;
        }
        let delta = path.iter().map(|a| residual(&flow, a)).min().expect("non-empty augmenting path");
        for arc in &path {
            match arc.dir {
                Direction::Forward => flow[arc.edge.0] += &delta,
                Direction::Backward => flow[arc.edge.0] -= &delta,
            }
        }
        total += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Demand, Orientation};
    use crate::rational::{int, ratio};

    #[test]
    fn diamond_with_cross_edge() {
        let net = FlowNetwork::builder(Orientation::Directed)
            .edge("s", "a", int(3))
            .edge("s", "b", int(2))
            .edge("a", "b", int(1))
            .edge("a", "t", int(2))
            .edge("b", "t", int(3))
            .build()
            .unwrap();
        let (s, t) = (net.node("s").unwrap(), net.node("t").unwrap());
        assert_eq!(max_flow_value(&net, s, t), int(5));
        assert_eq!(max_flow_value(&net, t, s), int(0));
    }

    #[test]
    fn undirected_edges_work_both_ways() {
        let net = FlowNetwork::builder(Orientation::Undirected)
            .edge("a", "b", ratio(3, 2))
            .edge("b", "c", int(1))
            .commodity("a", "c", Demand::Infinite)
            .build()
            .unwrap();
        let (a, c) = (net.node("a").unwrap(), net.node("c").unwrap());
        assert_eq!(max_flow_value(&net, c, a), int(1));
    }

    #[test]
    fn requires_cancelling_a_bad_first_path() {
        // BFS finds s-a-b-t first only if a-b is on a shortest path; make it so.
        let net = FlowNetwork::builder(Orientation::Directed)
            .edge("s", "a", int(1))
            .edge("s", "b", int(1))
            .edge("a", "b", int(1))
            .edge("a", "t", int(1))
            .edge("b", "t", int(1))
            .build()
            .unwrap();
        let (s, t) = (net.node("s").unwrap(), net.node("t").unwrap());
        assert_eq!(max_flow_value(&net, s, t), int(2));
    }
}
