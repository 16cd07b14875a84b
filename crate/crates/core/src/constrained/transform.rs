//! Polynomial w-flow for undirected networks.
//!
//! Every undirected edge becomes two opposite arcs that share the edge's
//! capacity. Each commodity gets a collector `z_i` fed by `s_i` and `t_i`,
//! and all collectors drain into `z`. An arc LP then sends flow out of `w`
//! with equal amounts reaching `z_i` through `s_i` and through `t_i`; its
//! optimum is twice the maximum w-flow. Reversing the `w -> s_i` half and
//! splicing it with the `w -> t_i` half gives actual paths in the original
//! network (see [`fix_paths`]).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, VarId};
use crate::network::{Demand, Direction, EdgeId, FlowNetwork, NodeId, Orientation};
use crate::rational::Rational;
use crate::te::{FlowSolution, PathFlow};
use crate::walk::{EdgeWalk, Step};

/// Where an arc of the transformed network comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcOrigin {
    /// One direction of an original undirected edge.
    Original(EdgeId, Direction),
    /// `s_i -> z_i`.
    SourceCollector(usize),
    /// `t_i -> z_i`.
    SinkCollector(usize),
    /// `z_i -> z`.
    Drain(usize),
}

#[derive(Debug, Clone)]
pub struct TransformedNetwork {
    /// Directed network on `V + {z_1..z_L, z}`. Unbounded arcs carry the
    /// surrogate capacity of the original network.
    pub directed: FlowNetwork,
    /// Indexed by edge id of `directed`.
    pub origin: Vec<ArcOrigin>,
    pub collectors: Vec<NodeId>,
    pub drain: NodeId,
}

impl TransformedNetwork {
    pub fn build(net: &FlowNetwork) -> Result<TransformedNetwork> {
        if net.orientation() != Orientation::Undirected {
            return Err(Error::WrongOrientation("undirected"));
        }
        let big = net.infinite_surrogate();
        let fresh = |base: &str| {
            let mut name = base.to_string();
            while net.node(&name).is_ok() {
                name.insert(0, '_');
            }
            name
        };
        let mut builder = FlowNetwork::builder(Orientation::Directed);
        for name in net.names() {
            builder = builder.node(name);
        }
        let mut origin = Vec::new();
        for e in net.edges() {
            let (t, h) = (net.name(e.tail), net.name(e.head));
            builder = builder.edge(t, h, big.clone()).edge(h, t, big.clone());
            origin.push(ArcOrigin::Original(e.id, Direction::Forward));
            origin.push(ArcOrigin::Original(e.id, Direction::Backward));
        }
        let drain_name = fresh("z");
        let mut collector_names = Vec::new();
        for (i, c) in net.commodities().iter().enumerate() {
            let zi = fresh(&format!("z{}", i + 1));
            builder = builder
                .edge(net.name(c.source), &zi, big.clone())
                .edge(net.name(c.sink), &zi, big.clone())
                .edge(&zi, &drain_name, big.clone());
            origin.push(ArcOrigin::SourceCollector(i));
            origin.push(ArcOrigin::SinkCollector(i));
            origin.push(ArcOrigin::Drain(i));
            collector_names.push(zi);
        }
        let directed = builder.node(&drain_name).build()?;
        let collectors = collector_names.iter().map(|n| directed.node(n)).collect::<Result<_>>()?;
        let drain = directed.node(&drain_name)?;
        Ok(TransformedNetwork { directed, origin, collectors, drain })
    }

    fn usable_by(&self, arc: EdgeId, commodity: usize) -> bool {
        match self.origin[arc.0] {
            ArcOrigin::Original(..) => true,
            ArcOrigin::SourceCollector(i) | ArcOrigin::SinkCollector(i) | ArcOrigin::Drain(i) => i == commodity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedWFlow {
    /// Maximum w-flow in the original network.
    pub value: Rational,
    /// Optimum of the transformed arc LP, twice `value` with infinite demands.
    pub doubled: Rational,
    /// Flow each commodity sends into its collector through `s_i` (and, equally, through `t_i`).
    pub per_commodity: Vec<Rational>,
    /// Path flows in the original network recovered from the arc solution.
    pub witness: FlowSolution,
}

/// Maximum w-flow of an undirected network via the transformed arc LP.
///
/// Finite demands add `f_i(s_i, z_i) <= D_i`. That mode is experimental:
/// the doubling identity is only established for infinite demands, so it is
/// checked against the brute-force path LP in tests rather than assumed.
pub fn max_w_flow_undirected(net: &FlowNetwork, w: NodeId) -> Result<UndirectedWFlow> {
    if w.0 >= net.node_count() {
        return Err(Error::UnknownNode(format!("#{}", w.0)));
    }
    if net.endpoints().any(|x| x == w) {
        return Err(Error::WIsEndpoint(net.name(w).to_string()));
    }
    let g = TransformedNetwork::build(net)?;
    let d = &g.directed;
    let l = net.commodities().len();

    let mut lp = LinearProgram::new(Sense::Maximize);
    // vars[i][arc] for arcs commodity i may use. Nothing may enter w, so the
    // objective counts net flow out of w.
    let mut vars: Vec<BTreeMap<EdgeId, VarId>> = vec![BTreeMap::new(); l];
    for (i, row) in vars.iter_mut().enumerate() {
        for e in d.edges() {
            if e.head != w && g.usable_by(e.id, i) {
                row.insert(e.id, lp.add_var(format!("f{}_{}", i, e.id.0)));
            }
        }
    }
    for e in net.edges() {
        let mut terms = Vec::new();
        for row in &vars {
            for k in [2 * e.id.0, 2 * e.id.0 + 1] {
                if let Some(&v) = row.get(&EdgeId(k)) {
                    terms.push((v, Rational::one()));
                }
            }
        }
        if !terms.is_empty() {
            lp.add_constraint(format!("cap{}", e.id.0), terms, Relation::Le, e.capacity.clone());
        }
    }
    for (i, row) in vars.iter().enumerate() {
        for u in d.nodes() {
            if u == w || u == g.drain {
                continue;
            }
            let mut terms: Vec<(VarId, Rational)> = Vec::new();
            for a in d.out_arcs(u) {
                if let Some(&v) = row.get(&a.edge) {
                    terms.push((v, Rational::one()));
                }
            }
            for a in d.in_arcs(u) {
                if let Some(&v) = row.get(&a.edge) {
                    terms.push((v, -Rational::one()));
                }
            }
            if !terms.is_empty() {
                lp.add_constraint(format!("cons{}_{}", i, u.0), terms, Relation::Eq, Rational::zero());
            }
        }
        let (via_s, via_t) = collector_arcs(&g, i);
        lp.add_constraint(
            format!("split{}", i),
            vec![(row[&via_s], Rational::one()), (row[&via_t], -Rational::one())],
            Relation::Eq,
            Rational::zero(),
        );
        if let Demand::Finite(dem) = &net.commodities()[i].max_demand {
            lp.add_constraint(format!("dem{}", i), vec![(row[&via_s], Rational::one())], Relation::Le, dem.clone());
        }
    }
    let objective = vars
        .iter()
        .flat_map(|row| d.out_arcs(w).iter().filter_map(|a| row.get(&a.edge)))
        .map(|&v| (v, Rational::one()))
        .collect();
    lp.set_objective(objective);

    let sol = lp::solve(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::Infeasible("undirected w-flow transform".into())),
        LpStatus::Unbounded => return Err(Error::Unbounded("undirected w-flow transform".into())),
    }
    let per_commodity: Vec<Rational> = (0..l).map(|i| sol.value(vars[i][&collector_arcs(&g, i).0]).clone()).collect();
    let mut witness = FlowSolution::empty(l);
    for (i, arcs) in vars.iter().enumerate() {
        let flow: BTreeMap<EdgeId, Rational> = arcs
            .iter()
            .map(|(&e, &v)| (e, sol.value(v).clone()))
            .filter(|(_, x)| x.is_positive())
            .collect();
        witness.flows[i] = recover_paths(net, &g, i, w, flow);
    }
    witness.objective = witness.total();
    let doubled = sol.objective.clone();
    let value = &doubled / Rational::from_integer(2.into());
    Ok(UndirectedWFlow { value, doubled, per_commodity, witness })
}

fn collector_arcs(g: &TransformedNetwork, commodity: usize) -> (EdgeId, EdgeId) {
    let find = |target: ArcOrigin| EdgeId(g.origin.iter().position(|o| *o == target).expect("collector arc exists"));
    (find(ArcOrigin::SourceCollector(commodity)), find(ArcOrigin::SinkCollector(commodity)))
}

/// Peels `w -> z_i` paths off commodity `i`'s arc flow, pairs the ones
/// arriving through `s_i` with those arriving through `t_i`, and splices
/// each pair into a path of the original network.
fn recover_paths(
    net: &FlowNetwork,
    g: &TransformedNetwork,
    commodity: usize,
    w: NodeId,
    mut flow: BTreeMap<EdgeId, Rational>,
) -> Vec<PathFlow> {
    let d = &g.directed;
    let zi = g.collectors[commodity];
    let mut via_s: Vec<(EdgeWalk, Rational)> = Vec::new();
    let mut via_t: Vec<(EdgeWalk, Rational)> = Vec::new();
    while let Some(arcs) = positive_path(d, &flow, w, zi) {
        let amount = arcs.iter().map(|e| flow[e].clone()).min().expect("path has arcs");
        for e in &arcs {
            let left = flow.get_mut(e).expect("arc carries flow");
            *left -= &amount;
            if left.is_zero() {
                flow.remove(e);
            }
        }
        let last = *arcs.last().expect("path has arcs");
        let walk = original_walk(net, g, w, &arcs[..arcs.len() - 1]);
        match g.origin[last.0] {
            ArcOrigin::SourceCollector(_) => via_s.push((walk, amount)),
            _ => via_t.push((walk, amount)),
        }
    }
    let mut out: Vec<PathFlow> = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < via_s.len() && b < via_t.len() {
        let amount = via_s[a].1.clone().min(via_t[b].1.clone());
        let path = fix_paths(&via_s[a].0.reversed(), &via_t[b].0);
        match out.iter_mut().find(|pf| pf.path == path) {
            Some(pf) => pf.flow += &amount,
            None => out.push(PathFlow { path, flow: amount.clone() }),
        }
        via_s[a].1 -= &amount;
        via_t[b].1 -= &amount;
        if via_s[a].1.is_zero() {
            a += 1;
        }
        if via_t[b].1.is_zero() {
            b += 1;
        }
    }
    out
}

/// Depth-first search for a node-simple `from -> to` path over arcs with
/// positive flow, lowest arc id first.
fn positive_path(d: &FlowNetwork, flow: &BTreeMap<EdgeId, Rational>, from: NodeId, to: NodeId) -> Option<Vec<EdgeId>> {
    fn go(
        d: &FlowNetwork,
        flow: &BTreeMap<EdgeId, Rational>,
        at: NodeId,
        to: NodeId,
        seen: &mut [bool],
        path: &mut Vec<EdgeId>,
    ) -> bool {
        if at == to {
            return true;
        }
        for a in d.out_arcs(at) {
            if seen[a.to.0] || !flow.contains_key(&a.edge) {
                continue;
            }
            seen[a.to.0] = true;
            path.push(a.edge);
            if go(d, flow, a.to, to, seen, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut seen = vec![false; d.node_count()];
    seen[from.0] = true;
    let mut path = Vec::new();
    go(d, flow, from, to, &mut seen, &mut path).then_some(path)
}

fn original_walk(net: &FlowNetwork, g: &TransformedNetwork, start: NodeId, arcs: &[EdgeId]) -> EdgeWalk {
    let mut walk = EdgeWalk::trivial(start);
    for e in arcs {
        match g.origin[e.0] {
            ArcOrigin::Original(edge, dir) => walk.push(&net.arc(edge, dir)),
            other => unreachable!("collector arc {other:?} inside a w -> z_i path"),
        }
    }
    walk
}

/// Joins `p1: s -> w` and `p2: w -> t` into one walk without a repeated
/// `(edge, direction)` step.
///
/// While the two halves share a step `u -> v`, they are re-cut as
/// `s ~p1~ u ~rev p2~ w` and `w ~rev p1~ v ~p2~ t`, which drops both copies
/// of the shared step. A half that repeats a step on its own is shortcut
/// between the two copies. Either move shortens the total, so this ends.
pub fn fix_paths(p1: &EdgeWalk, p2: &EdgeWalk) -> EdgeWalk {
    let (mut p1, mut p2) = (p1.clone(), p2.clone());
    loop {
        p1 = shortcut(p1);
        p2 = shortcut(p2);
        let shared = p1
            .steps()
            .iter()
            .enumerate()
            .find_map(|(k, s)| p2.steps().iter().position(|x| x == s).map(|j| (k, j)));
        let Some((k, j)) = shared else {
            return p1.concat(&p2);
        };
        let head = p1.slice(0, k).concat(&p2.slice(0, j).reversed());
        let tail = p1.slice(k + 1, p1.len()).reversed().concat(&p2.slice(j + 1, p2.len()));
        p1 = head;
        p2 = tail;
    }
}

fn shortcut(mut walk: EdgeWalk) -> EdgeWalk {
    loop {
        let steps: &[Step] = walk.steps();
        let repeat = (0..steps.len()).find_map(|a| (a + 1..steps.len()).find(|&b| steps[a] == steps[b]).map(|b| (a, b)));
        match repeat {
            Some((a, b)) => walk = walk.slice(0, a).concat(&walk.slice(b, walk.len())),
            None => return walk,
        }
    }
}
