//! Segment routing: traffic must visit an ordered subsequence of
//! middlepoints and is split by ECMP over all shortest paths between
//! consecutive ones. Directed networks only.

mod acyclic;
mod ecmp;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, VarId};
use crate::network::{Demand, EdgeId, FlowNetwork, NodeId, Orientation};
use crate::rational::Rational;

pub use acyclic::{acyclic_feasible, AcyclicAnswer, AcyclicMode, DEFAULT_COMBINATION_CAP};
pub use ecmp::{ecmp_fractions, shortest_paths_between, EcmpTable, ShortestPaths};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddlepointConfig {
    /// Global order that every tunnel must respect.
    pub middlepoints: Vec<NodeId>,
    /// Most middlepoints a single tunnel may use.
    pub max_per_tunnel: usize,
    /// Only tunnels through every middlepoint.
    pub use_all: bool,
}

impl MiddlepointConfig {
    pub fn new(middlepoints: Vec<NodeId>, max_per_tunnel: usize) -> Self {
        MiddlepointConfig { middlepoints, max_per_tunnel, use_all: false }
    }

    pub fn all(middlepoints: Vec<NodeId>) -> Self {
        let k = middlepoints.len();
        MiddlepointConfig { middlepoints, max_per_tunnel: k, use_all: true }
    }

    pub fn validate(&self, net: &FlowNetwork) -> Result<()> {
        let k = self.middlepoints.len();
        if let Some(m) = self.middlepoints.iter().find(|m| m.0 >= net.node_count()) {
            return Err(Error::UnknownNode(format!("#{}", m.0)));
        }
        let mut sorted = self.middlepoints.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != k {
            return Err(Error::InvalidConfig("middlepoints must be distinct".into()));
        }
        if self.max_per_tunnel > k {
            return Err(Error::InvalidConfig(format!(
                "per-tunnel limit {} exceeds the {} middlepoints",
                self.max_per_tunnel, k
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tunnel {
    pub commodity: usize,
    pub middlepoints: Vec<NodeId>,
    /// Consecutive `(from, to)` pairs from source through the middlepoints to sink.
    pub segments: Vec<(NodeId, NodeId)>,
}

/// Tunnels for every commodity plus the ECMP table of every segment they use.
#[derive(Debug, Clone)]
pub struct TunnelPlan {
    pub tunnels: Vec<Vec<Tunnel>>,
    pub tables: BTreeMap<(NodeId, NodeId), EcmpTable>,
}

impl TunnelPlan {
    /// Load each edge receives per unit of flow on `tunnel`.
    pub fn tunnel_loads(&self, tunnel: &Tunnel) -> BTreeMap<EdgeId, Rational> {
        let mut loads: BTreeMap<EdgeId, Rational> = BTreeMap::new();
        for seg in &tunnel.segments {
            for (e, f) in &self.tables[seg].fractions {
                *loads.entry(*e).or_insert_with(Rational::zero) += f;
            }
        }
        loads
    }

    pub fn tunnel_count(&self) -> usize {
        self.tunnels.iter().map(Vec::len).sum()
    }
}

/// `C(k,0) + ... + C(k,m)`, the most tunnels one commodity can have.
pub fn tunnel_count_bound(k: usize, m: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 0..=m.min(k) {
        total += binom;
        binom = binom * (k - j) as u128 / (j + 1) as u128;
    }
    total
}

fn require_directed(net: &FlowNetwork) -> Result<()> {
    if net.orientation() == Orientation::Directed {
        Ok(())
    } else {
        Err(Error::WrongOrientation("directed"))
    }
}

/// All order-respecting middlepoint subsequences of allowed size for every
/// commodity. A commodity's own endpoints are never used as its
/// middlepoints, and tunnels with an unreachable segment are dropped.
pub fn build_tunnels(net: &FlowNetwork, cfg: &MiddlepointConfig) -> Result<TunnelPlan> {
    require_directed(net)?;
    cfg.validate(net)?;
    let mut forward: BTreeMap<NodeId, ShortestPaths> = BTreeMap::new();
    let mut backward: BTreeMap<NodeId, ShortestPaths> = BTreeMap::new();
    let mut tables: BTreeMap<(NodeId, NodeId), Option<EcmpTable>> = BTreeMap::new();
    let mut tunnels = Vec::new();
    for (i, c) in net.commodities().iter().enumerate() {
        let pool: Vec<NodeId> =
            cfg.middlepoints.iter().copied().filter(|&m| m != c.source && m != c.sink).collect();
        let mut list = Vec::new();
        for subset in subsequences(&pool, cfg.max_per_tunnel) {
            if cfg.use_all && subset.len() != cfg.middlepoints.len() {
                continue;
            }
            let mut hops = vec![c.source];
            hops.extend(&subset);
            hops.push(c.sink);
            let segments: Vec<(NodeId, NodeId)> = hops.windows(2).map(|p| (p[0], p[1])).collect();
            let mut usable = true;
            for &(u, v) in &segments {
                let entry = tables.entry((u, v)).or_insert_with(|| {
                    let fu = forward.entry(u).or_insert_with(|| ShortestPaths::compute(net, u, false));
                    let bv = backward.entry(v).or_insert_with(|| ShortestPaths::compute(net, v, true));
                    ecmp::table_from(net, fu, bv).ok()
                });
                usable &= entry.is_some();
            }
            if usable {
                list.push(Tunnel { commodity: i, middlepoints: subset, segments });
            }
        }
        tunnels.push(list);
    }
    let tables = tables.into_iter().filter_map(|(k, t)| t.map(|t| (k, t))).collect();
    Ok(TunnelPlan { tunnels, tables })
}

/// Subsequences of `pool` with at most `max` entries, shortest first, then
/// in lexicographic order of positions.
fn subsequences(pool: &[NodeId], max: usize) -> Vec<Vec<NodeId>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<NodeId>)> = vec![(0, Vec::new())];
    for _ in 0..max.min(pool.len()) {
        let mut next = Vec::new();
        for (start, seq) in &frontier {
            for (k, &m) in pool.iter().enumerate().skip(*start) {
                let mut s = seq.clone();
                s.push(m);
                next.push((k + 1, s));
            }
        }
        out.extend(next.iter().map(|(_, s)| s.clone()));
        frontier = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpSize {
    pub variables: usize,
    pub constraints: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrSolution {
    /// `theta` for utilization, total throughput for maximum flow.
    pub objective: Rational,
    /// Aligned with [`TunnelPlan::tunnels`].
    pub flows: Vec<Vec<Rational>>,
    pub size: LpSize,
}

impl SrSolution {
    /// `f_i(t) / sum_t f_i(t)`; `None` for a commodity that carries nothing.
    pub fn split_ratios(&self) -> Vec<Option<Vec<Rational>>> {
        self.flows
            .iter()
            .map(|fs| {
                let total = crate::rational::sum(fs);
                (!total.is_zero()).then(|| fs.iter().map(|f| f / &total).collect())
            })
            .collect()
    }

    pub fn commodity_total(&self, commodity: usize) -> Rational {
        crate::rational::sum(&self.flows[commodity])
    }

    /// Load on every edge implied by the tunnel flows.
    pub fn edge_loads(&self, net: &FlowNetwork, plan: &TunnelPlan) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); net.edges().len()];
        for (tunnels, flows) in plan.tunnels.iter().zip(&self.flows) {
            for (t, f) in tunnels.iter().zip(flows) {
                for (e, frac) in plan.tunnel_loads(t) {
                    loads[e.0] += f * frac;
                }
            }
        }
        loads
    }
}

struct TunnelProgram {
    lp: LinearProgram,
    vars: Vec<Vec<VarId>>,
    edge_terms: Vec<Vec<(VarId, Rational)>>,
}

impl TunnelProgram {
    fn new(net: &FlowNetwork, plan: &TunnelPlan, sense: Sense) -> Self {
        let mut lp = LinearProgram::new(sense);
        let mut edge_terms = vec![Vec::new(); net.edges().len()];
        let mut vars = Vec::new();
        for (i, tunnels) in plan.tunnels.iter().enumerate() {
            let mut row = Vec::new();
            for (k, t) in tunnels.iter().enumerate() {
                let v = lp.add_var(format!("f{i}_t{k}"));
                for (e, frac) in plan.tunnel_loads(t) {
                    edge_terms[e.0].push((v, frac));
                }
                row.push(v);
            }
            vars.push(row);
        }
        TunnelProgram { lp, vars, edge_terms }
    }

    fn finish(self, sol: lp::LpSolution) -> SrSolution {
        let flows = self.vars.iter().map(|row| row.iter().map(|v| sol.value(*v).clone()).collect()).collect();
        SrSolution {
            objective: sol.objective,
            flows,
            size: LpSize { variables: self.lp.num_vars(), constraints: self.lp.num_constraints() },
        }
    }
}

/// Minimum maximum link utilization with every required demand routed on
/// the plan's tunnels. One capacity row per edge, one demand row per commodity.
pub fn solve_sr_lu(net: &FlowNetwork, plan: &TunnelPlan) -> Result<SrSolution> {
    require_directed(net)?;
    let mut prog = TunnelProgram::new(net, plan, Sense::Minimize);
    let theta = prog.lp.add_var("theta");
    for (e, terms) in prog.edge_terms.iter().enumerate() {
        let mut terms = terms.clone();
        terms.push((theta, -net.edges()[e].capacity.clone()));
        prog.lp.add_constraint(format!("util_e{e}"), terms, Relation::Le, Rational::zero());
    }
    for (i, c) in net.commodities().iter().enumerate() {
        let demand = c.required_demand().ok_or(Error::InfiniteDemand(i))?;
        if prog.vars[i].is_empty() && !demand.is_zero() {
            return Err(Error::Infeasible(format!("commodity {i} has no usable tunnel")));
        }
        let terms = prog.vars[i].iter().map(|&v| (v, Rational::one())).collect();
        prog.lp.add_constraint(format!("demand_{i}"), terms, Relation::Ge, demand);
    }
    prog.lp.set_objective(vec![(theta, Rational::one())]);
    let sol = lp::solve(&prog.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(prog.finish(sol)),
        LpStatus::Infeasible => Err(Error::Infeasible("demands cannot be routed on the tunnels".into())),
        LpStatus::Unbounded => Err(Error::Unbounded("utilization".into())),
    }
}

/// Maximum total tunnel flow within capacities and finite demands.
pub fn solve_sr_mf(net: &FlowNetwork, plan: &TunnelPlan) -> Result<SrSolution> {
    require_directed(net)?;
    let mut prog = TunnelProgram::new(net, plan, Sense::Maximize);
    for (e, terms) in prog.edge_terms.iter().enumerate() {
        prog.lp.add_constraint(format!("cap_e{e}"), terms.clone(), Relation::Le, net.edges()[e].capacity.clone());
    }
    for (i, c) in net.commodities().iter().enumerate() {
        if let Demand::Finite(d) = &c.max_demand {
            let terms = prog.vars[i].iter().map(|&v| (v, Rational::one())).collect();
            prog.lp.add_constraint(format!("demand_{i}"), terms, Relation::Le, d.clone());
        }
    }
    let objective = prog.vars.iter().flatten().map(|&v| (v, Rational::one())).collect();
    prog.lp.set_objective(objective);
    let sol = lp::solve(&prog.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(prog.finish(sol)),
        LpStatus::Infeasible => Err(Error::Infeasible("tunnel maximum flow".into())),
        LpStatus::Unbounded => Err(Error::Unbounded("a tunnel crosses no capacitated edge".into())),
    }
}

/// Edges that lie on shortest paths of two or more segments of `tunnel`,
/// so that some ECMP choice turns the tunnel into a walk repeating them.
pub fn detect_cycles(plan: &TunnelPlan, tunnel: &Tunnel) -> Vec<EdgeId> {
    let mut hits: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for seg in &tunnel.segments {
        for e in plan.tables[seg].fractions.keys() {
            *hits.entry(*e).or_insert(0) += 1;
        }
    }
    hits.into_iter().filter(|&(_, n)| n >= 2).map(|(e, _)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn chain() -> FlowNetwork {
        FlowNetwork::builder(Orientation::Directed)
            .edge("s", "w", int(10))
            .edge("w", "t", int(10))
            .commodity("s", "t", Demand::Finite(int(5)))
            .build()
            .unwrap()
    }

    #[test]
    fn binomial_bounds() {
        assert_eq!(tunnel_count_bound(2, 1), 3);
        assert_eq!(tunnel_count_bound(3, 3), 8);
        assert_eq!(tunnel_count_bound(5, 0), 1);
        assert_eq!(tunnel_count_bound(4, 2), 11);
    }

    #[test]
    fn subsequences_respect_order_and_size() {
        let pool = [NodeId(3), NodeId(1), NodeId(2)];
        let subs = subsequences(&pool, 3);
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&vec![NodeId(3), NodeId(2)]));
        assert!(!subs.contains(&vec![NodeId(2), NodeId(3)]));
        assert_eq!(subsequences(&pool, 1).len(), 4);
    }

    #[test]
    fn single_middlepoint_chain() {
        let net = chain();
        let w = net.node("w").unwrap();
        let plan = build_tunnels(&net, &MiddlepointConfig::all(vec![w])).unwrap();
        assert_eq!(plan.tunnels[0].len(), 1);
        let sol = solve_sr_lu(&net, &plan).unwrap();
        assert_eq!(sol.objective, ratio(1, 2));
        assert_eq!(sol.split_ratios()[0], Some(vec![int(1)]));
        assert_eq!(sol.size, LpSize { variables: 2, constraints: 3 });
        let mf = solve_sr_mf(&net, &plan).unwrap();
        assert_eq!(mf.objective, int(5));
    }

    #[test]
    fn disconnected_tunnels_are_dropped() {
        let net = FlowNetwork::builder(Orientation::Directed)
            .edge("s", "t", int(1))
            .edge("s", "w", int(1))
            .commodity("s", "t", Demand::Finite(int(1)))
            .build()
            .unwrap();
        let w = net.node("w").unwrap();
        let plan = build_tunnels(&net, &MiddlepointConfig::new(vec![w], 1)).unwrap();
        assert_eq!(plan.tunnels[0].len(), 1);
        assert!(plan.tunnels[0][0].middlepoints.is_empty());
        let plan = build_tunnels(&net, &MiddlepointConfig::all(vec![w])).unwrap();
        assert!(matches!(solve_sr_lu(&net, &plan), Err(Error::Infeasible(_))));
    }

    #[test]
    fn bad_configs_are_rejected() {
        let net = chain();
        let w = net.node("w").unwrap();
        assert!(matches!(
            build_tunnels(&net, &MiddlepointConfig::new(vec![w, w], 1)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(build_tunnels(&net, &MiddlepointConfig::new(vec![w], 2)), Err(Error::InvalidConfig(_))));
    }
}
