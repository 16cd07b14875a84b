//! Group flow: multi-commodity flow through at least one node of a group.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constrained::complete_families;
use crate::error::{Error, Result};
use crate::network::{FlowNetwork, NodeId};
use crate::paths::{EnumOptions, PathConstraint, PathFamily};
use crate::rational::Rational;
use crate::te::{solve_te_mf, FlowSolution};

use super::{multi_max_flow, CentralityOptions, CentralityReport};

/// Evaluates group flow values from one enumeration of every commodity's
/// paths, memoizing by group.
pub struct GroupFlowOracle<'a> {
    net: &'a FlowNetwork,
    families: Vec<PathFamily>,
    cache: HashMap<Vec<NodeId>, Rational>,
}

impl<'a> GroupFlowOracle<'a> {
    pub fn new(net: &'a FlowNetwork, opts: &CentralityOptions) -> Result<Self> {
        opts.guard(net)?;
        let families =
            complete_families(
            net,
            &PathConstraint::Unconstrained,
            EnumOptions { cap: opts.path_cap, reuse: opts.reuse },
        )?;
        Ok(GroupFlowOracle { net, families, cache: HashMap::new() })
    }

    fn key(&self, group: &[NodeId]) -> Result<Vec<NodeId>> {
        if let Some(n) = group.iter().find(|n| n.0 >= self.net.node_count()) {
            return Err(Error::UnknownNode(format!("#{}", n.0)));
        }
        let mut key = group.to_vec();
        key.sort();
        key.dedup();
        Ok(key)
    }

    pub fn solve(&self, group: &[NodeId]) -> Result<FlowSolution> {
        let key = self.key(group)?;
        if key.is_empty() {
            return Ok(FlowSolution::empty(self.net.commodities().len()));
        }
        let restricted: Vec<PathFamily> = self.families.iter().map(|f| f.restrict_to_any(&key)).collect();
        solve_te_mf(self.net, &restricted)
    }

    pub fn value(&mut self, group: &[NodeId]) -> Result<Rational> {
        let key = self.key(group)?;
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = self.solve(&key)?.objective;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn evaluations(&self) -> usize {
        self.cache.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFlowResult {
    pub group: Vec<NodeId>,
    pub value: Rational,
    pub witness: FlowSolution,
}

pub fn group_flow(net: &FlowNetwork, group: &[NodeId], opts: &CentralityOptions) -> Result<GroupFlowResult> {
    let oracle = GroupFlowOracle::new(net, opts)?;
    let witness = oracle.solve(group)?;
    let mut group = group.to_vec();
    group.sort();
    group.dedup();
    Ok(GroupFlowResult { group, value: witness.objective.clone(), witness })
}

/// Group flow over the unconstrained multi-commodity maximum flow.
pub fn group_flow_centrality(net: &FlowNetwork, group: &[NodeId], opts: &CentralityOptions) -> Result<CentralityReport> {
    let r = group_flow(net, group, opts)?;
    let denominator = multi_max_flow(net, opts.path_cap)?;
    Ok(CentralityReport::new(r.group, r.value, denominator, Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NGroupMethod {
    /// Every group of at most `N` nodes.
    Brute,
    /// Add the best single node `N` times; ties go to the smallest node id.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGroupResult {
    pub method: NGroupMethod,
    pub group: Vec<NodeId>,
    pub value: Rational,
    /// Greedy only: node added at each step and the value reached.
    pub trajectory: Vec<(NodeId, Rational)>,
    pub evaluations: usize,
}

/// Best group flow over groups of at most `n` nodes. Brute force keeps the
/// first optimum in (size, lexicographic) order.
pub fn n_group_max_flow(
    net: &FlowNetwork,
    n: usize,
    method: NGroupMethod,
    opts: &CentralityOptions,
) -> Result<NGroupResult> {
    let mut oracle = GroupFlowOracle::new(net, opts)?;
    let nodes: Vec<NodeId> = net.nodes().collect();
    let mut best_group = Vec::new();
    let mut best = Rational::zero();
    let mut trajectory = Vec::new();
    match method {
        NGroupMethod::Brute => {
            for size in 1..=n.min(nodes.len()) {
                for group in combinations(&nodes, size) {
                    let v = oracle.value(&group)?;
                    if v > best {
                        best = v;
                        best_group = group;
                    }
                }
            }
        }
        NGroupMethod::Greedy => {
            for _ in 0..n.min(nodes.len()) {
                let mut step: Option<(NodeId, Rational)> = None;
                for &v in nodes.iter().filter(|v| !best_group.contains(v)) {
                    let mut g = best_group.clone();
                    g.push(v);
                    let value = oracle.value(&g)?;
                    if step.as_ref().is_none_or(|(_, b)| value > *b) {
                        step = Some((v, value));
                    }
                }
                let Some((v, value)) = step else { break };
                best_group.push(v);
                best = value.clone();
                trajectory.push((v, value));
            }
            best_group.sort();
        }
    }
    Ok(NGroupResult { method, group: best_group, value: best, trajectory, evaluations: oracle.evaluations() })
}

/// `size`-element subsets of `items` in lexicographic order of positions.
fn combinations(items: &[NodeId], size: usize) -> Vec<Vec<NodeId>> {
    fn go(items: &[NodeId], size: usize, start: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..items.len() {
            cur.push(items[k]);
            go(items, size, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Marginal gains of adding `v` to `S` and to a superset `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginPair {
    pub small: Rational,
    pub large: Rational,
}

impl MarginPair {
    pub fn compute(oracle: &mut GroupFlowOracle<'_>, s: &[NodeId], t: &[NodeId], v: NodeId) -> Result<MarginPair> {
        let with = |g: &[NodeId]| {
            let mut g = g.to_vec();
            g.push(v);
            g
        };
        let small = oracle.value(&with(s))? - oracle.value(s)?;
        let large = oracle.value(&with(t))? - oracle.value(t)?;
        Ok(MarginPair { small, large })
    }

    /// The larger set gains strictly more, which submodularity forbids.
    pub fn violates_submodularity(&self) -> bool {
        self.small < self.large
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeViolation {
    pub small: Vec<NodeId>,
    pub large: Vec<NodeId>,
    pub added: NodeId,
    pub margins: MarginPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub triples: usize,
    pub monotonicity_violations: usize,
    pub submodularity_violations: Vec<ProbeViolation>,
}

/// Samples `trials` triples `S ⊆ T`, `v ∉ T` with a seeded generator and
/// checks monotonicity and diminishing returns.
pub fn submodularity_probe(
    net: &FlowNetwork,
    trials: usize,
    seed: u64,
    opts: &CentralityOptions,
) -> Result<ProbeReport> {
    let mut oracle = GroupFlowOracle::new(net, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<NodeId> = net.nodes().collect();
    let mut report = ProbeReport { triples: 0, monotonicity_violations: 0, submodularity_violations: Vec::new() };
    if nodes.is_empty() {
        return Ok(report);
    }
    for _ in 0..trials {
        let v = nodes[rng.gen_range(0..nodes.len())];
        let large: Vec<NodeId> = nodes.iter().copied().filter(|&x| x != v && rng.gen_bool(0.5)).collect();
        let small: Vec<NodeId> = large.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let mut with_small = small.clone();
        with_small.push(v);
        let mut with_large = large.clone();
        with_large.push(v);
        let (gs, gl) = (oracle.value(&small)?, oracle.value(&large)?);
        let (gsv, glv) = (oracle.value(&with_small)?, oracle.value(&with_large)?);
        report.triples += 1;
        if gs > gl || gs > gsv || gl > glv || gsv > glv {
            report.monotonicity_violations += 1;
        }
        let margins = MarginPair { small: gsv - gs, large: glv - gl };
        if margins.violates_submodularity() {
            report.submodularity_violations.push(ProbeViolation { small, large, added: v, margins });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Demand, Orientation};
    use crate::rational::int;

    fn two_commodities() -> FlowNetwork {
        FlowNetwork::builder(Orientation::Directed)
            .edge("a", "x", int(1))
            .edge("x", "b", int(1))
            .edge("c", "y", int(1))
            .edge("y", "d", int(1))
            .commodity("a", "b", Demand::Infinite)
            .commodity("c", "d", Demand::Infinite)
            .build()
            .unwrap()
    }

    #[test]
    fn empty_group_is_zero_and_values_add_up() {
        let net = two_commodities();
        let opts = CentralityOptions::default();
        let mut oracle = GroupFlowOracle::new(&net, &opts).unwrap();
        let (x, y) = (net.node("x").unwrap(), net.node("y").unwrap());
        assert_eq!(oracle.value(&[]).unwrap(), int(0));
        assert_eq!(oracle.value(&[x]).unwrap(), int(1));
        assert_eq!(oracle.value(&[y, x]).unwrap(), int(2));
        assert_eq!(oracle.value(&[x, y]).unwrap(), int(2));
        assert_eq!(oracle.evaluations(), 3);
    }

    #[test]
    fn brute_and_greedy_agree_on_independent_commodities() {
        let net = two_commodities();
        let opts = CentralityOptions::default();
        let brute = n_group_max_flow(&net, 1, NGroupMethod::Brute, &opts).unwrap();
        assert_eq!(brute.value, int(1));
        assert_eq!(brute.group, vec![net.node("a").unwrap()]);
        let greedy = n_group_max_flow(&net, 2, NGroupMethod::Greedy, &opts).unwrap();
        assert_eq!(greedy.value, int(2));
        assert_eq!(greedy.trajectory.len(), 2);
    }

    #[test]
    fn combinations_count() {
        let items: Vec<NodeId> = (0..5).map(NodeId).collect();
        assert_eq!(combinations(&items, 2).len(), 10);
        assert_eq!(combinations(&items, 0), vec![Vec::<NodeId>::new()]);
    }

    #[test]
    fn probe_on_additive_instance_finds_nothing() {
        let net = two_commodities();
        let r = submodularity_probe(&net, 50, 7, &CentralityOptions::default()).unwrap();
        assert_eq!(r.triples, 50);
        assert_eq!(r.monotonicity_violations, 0);
    }
}
