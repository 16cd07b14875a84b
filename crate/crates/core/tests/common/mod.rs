//! Oracles written independently of the library's enumeration, shortest
//! path and path-LP code. Only the LP engine and data types are shared.
#![allow(dead_code)]

use std::collections::HashSet;

use ncte::lp::{self, LinearProgram, Relation, Sense};
use ncte::network::{Arc, Demand, Direction, EdgeId, FlowNetwork, NodeId, Orientation};
use ncte::rational::{int, Rational};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Traversals leaving `n`, built from the raw edge list.
fn moves(net: &FlowNetwork, n: NodeId) -> Vec<Arc> {
    let mut out = Vec::new();
    for e in net.edges() {
        if e.tail == n {
            out.push(Arc { edge: e.id, dir: Direction::Forward, from: e.tail, to: e.head });
        }
        if net.orientation() == Orientation::Undirected && e.head == n {
            out.push(Arc { edge: e.id, dir: Direction::Backward, from: e.head, to: e.tail });
        }
    }
    out
}

/// Every `s -> t` walk that repeats no traversal (an undirected edge may be
/// crossed once each way), visits `through` when given and may pass `t`
/// before ending there.
pub fn walks(net: &FlowNetwork, s: NodeId, t: NodeId, through: Option<NodeId>) -> Vec<Vec<Arc>> {
    fn go(
        net: &FlowNetwork,
        at: NodeId,
        t: NodeId,
        through: Option<NodeId>,
        seen_w: usize,
        used: &mut HashSet<(EdgeId, Direction)>,
        cur: &mut Vec<Arc>,
        out: &mut Vec<Vec<Arc>>,
    ) {
        if at == t && !cur.is_empty() && (through.is_none() || seen_w > 0) {
            out.push(cur.clone());
        }
        for a in moves(net, at) {
            let key = (a.edge, if net.orientation() == Orientation::Directed { Direction::Forward } else { a.dir });
            if used.contains(&key) {
                continue;
            }
            used.insert(key);
            cur.push(a);
            let hit = usize::from(Some(a.to) == through);
            go(net, a.to, t, through, seen_w + hit, used, cur, out);
            cur.pop();
            used.remove(&key);
        }
    }
    let mut out = Vec::new();
    let start = usize::from(Some(s) == through);
    go(net, s, t, through, start, &mut HashSet::new(), &mut Vec::new(), &mut out);
    out
}

/// Maximum total flow over the given per-commodity path lists, each use of
/// an edge in a path counting against its capacity, finite demands capping
/// each commodity.
pub fn path_lp_max(net: &FlowNetwork, paths: &[Vec<Vec<Arc>>]) -> Rational {
    let mut prog = LinearProgram::new(Sense::Maximize);
    let mut rows: Vec<Vec<(lp::VarId, Rational)>> = vec![Vec::new(); net.edges().len()];
    let mut objective = Vec::new();
    for (i, family) in paths.iter().enumerate() {
        // Paths with the same edge multiset are the same column.
        let mut seen = HashSet::new();
        let family: Vec<&Vec<Arc>> = family
            .iter()
            .filter(|p| {
                let mut key: Vec<usize> = p.iter().map(|a| a.edge.0).collect();
                key.sort();
                seen.insert(key)
            })
            .collect();
        let mut demand_row = Vec::new();
        for (k, p) in family.iter().enumerate() {
            let v = prog.add_var(format!("x{i}_{k}"));
            for a in p.iter() {
                rows[a.edge.0].push((v, int(1)));
            }
            objective.push((v, int(1)));
            demand_row.push((v, int(1)));
        }
        if let Demand::Finite(d) = &net.commodities()[i].max_demand {
            prog.add_constraint(format!("d{i}"), demand_row, Relation::Le, d.clone());
        }
    }
    for (e, row) in rows.into_iter().enumerate() {
        if !row.is_empty() {
            prog.add_constraint(format!("c{e}"), row, Relation::Le, net.edges()[e].capacity.clone());
        }
    }
    prog.set_objective(objective);
    let sol = lp::solve(&prog).expect("path LP solves");
    assert!(sol.is_optimal());
    sol.objective
}

/// Brute-force maximum `w`-flow: every commodity restricted to walks through `w`.
pub fn brute_w_flow(net: &FlowNetwork, w: NodeId) -> Rational {
    let paths: Vec<_> = net.commodities().iter().map(|c| walks(net, c.source, c.sink, Some(w))).collect();
    path_lp_max(net, &paths)
}

/// Shortest distance and number of shortest `u -> v` paths, by listing all
/// simple paths. Lengths come from the edge metric.
pub fn brute_shortest(net: &FlowNetwork, u: NodeId, v: NodeId) -> Option<(u64, BigUint)> {
    fn go(net: &FlowNetwork, at: NodeId, v: NodeId, len: u64, on: &mut Vec<bool>, best: &mut Option<(u64, BigUint)>) {
        if at == v {
            match best {
                Some((d, c)) if *d == len => *c += 1u32,
                Some((d, _)) if *d < len => {}
                _ => *best = Some((len, BigUint::one())),
            }
            return;
        }
        for a in moves(net, at) {
            if on[a.to.0] {
                continue;
            }
            on[a.to.0] = true;
            go(net, a.to, v, len + net.edge(a.edge).length, on, best);
            on[a.to.0] = false;
        }
    }
    let mut on = vec![false; net.node_count()];
    on[u.0] = true;
    let mut best = None;
    go(net, u, v, 0, &mut on, &mut best);
    best
}

/// Share of shortest `u -> v` paths using each edge, by listing them.
pub fn brute_fractions(net: &FlowNetwork, u: NodeId, v: NodeId) -> Vec<Rational> {
    let Some((dist, _)) = brute_shortest(net, u, v) else { return vec![Rational::zero(); net.edges().len()] };
    let shortest: Vec<Vec<Arc>> = walks(net, u, v, None)
        .into_iter()
        .filter(|p| {
            let mut nodes: Vec<NodeId> = p.iter().map(|a| a.to).collect();
            nodes.push(u);
            let n = nodes.len();
            nodes.sort();
            nodes.dedup();
            nodes.len() == n && p.iter().map(|a| net.edge(a.edge).length).sum::<u64>() == dist
        })
        .collect();
    let total = int(shortest.len() as i64);
    let mut out = vec![Rational::zero(); net.edges().len()];
    for p in &shortest {
        for a in p {
            out[a.edge.0] += Rational::one() / &total;
        }
    }
    out
}
