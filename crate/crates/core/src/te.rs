//! Classic traffic engineering over explicit path families: maximum
//! multi-commodity flow, minimum maximum-link-utilization, and the decision
//! version of maximum flow.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, VarId};
use crate::network::{Demand, EdgeId, FlowNetwork};
use crate::paths::PathFamily;
use crate::rational::{self, Rational};
use crate::walk::EdgeWalk;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFlow {
    pub path: EdgeWalk,
    pub flow: Rational,
}

/// Per-commodity path flows plus the objective (throughput or utilization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    pub objective: Rational,
    /// Indexed by commodity; only paths with positive flow are kept.
    pub flows: Vec<Vec<PathFlow>>,
}

impl FlowSolution {
    pub fn empty(commodities: usize) -> Self {
        FlowSolution { objective: Rational::zero(), flows: vec![Vec::new(); commodities] }
    }

    pub fn commodity_total(&self, commodity: usize) -> Rational {
        rational::sum(self.flows[commodity].iter().map(|pf| &pf.flow))
    }

    pub fn total(&self) -> Rational {
        (0..self.flows.len()).map(|i| self.commodity_total(i)).fold(Rational::zero(), |a, b| a + b)
    }

    /// Load on every edge; an undirected edge used twice by a path counts twice.
    pub fn edge_loads(&self, net: &FlowNetwork) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); net.edges().len()];
        for pf in self.flows.iter().flatten() {
            for (edge, uses) in pf.path.edge_usage() {
                loads[edge.0] += &pf.flow * Rational::from_integer(uses.into());
            }
        }
        loads
    }

    /// Largest excess of load over `scale * capacity`, or zero.
    pub fn capacity_violation(&self, net: &FlowNetwork, scale: &Rational) -> Rational {
        let mut worst = Rational::zero();
        for (edge, load) in net.edges().iter().zip(self.edge_loads(net)) {
            let excess = load - scale * &edge.capacity;
            if excess > worst {
                worst = excess;
            }
        }
        worst
    }
}

fn check_families(net: &FlowNetwork, families: &[PathFamily]) -> Result<()> {
    if families.len() != net.commodities().len() {
        return Err(Error::FamilyMismatch { family: families.len(), commodity: net.commodities().len() });
    }
    for (i, fam) in families.iter().enumerate() {
        if fam.commodity != i {
            return Err(Error::FamilyMismatch { family: i, commodity: fam.commodity });
        }
        fam.ensure_complete()?;
        let c = &net.commodities()[i];
        if fam.paths.iter().any(|p| p.start() != c.source || p.end() != c.sink) {
            return Err(Error::FamilyMismatch { family: i, commodity: i });
        }
    }
    Ok(())
}

/// Indices of the paths worth a column: a path using every edge at least
/// as often as another path of the same family never improves the optimum,
/// so only the first path of each minimal usage pattern is kept.
fn undominated(paths: &[EdgeWalk]) -> Vec<usize> {
    let usage: Vec<Vec<(EdgeId, usize)>> = paths.iter().map(|p| p.edge_usage().into_iter().collect()).collect();
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| (usage[i].iter().map(|u| u.1).sum::<usize>(), i));
    let covers = |small: &[(EdgeId, usize)], big: &[(EdgeId, usize)]| {
        let mut it = big.iter();
        small.iter().all(|(e, n)| it.by_ref().find(|(f, _)| f >= e).is_some_and(|(f, m)| f == e && m >= n))
    };
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&k| covers(&usage[k], &usage[i])) {
            kept.push(i);
        }
    }
    kept.sort();
    kept
}

/// Shared path-LP skeleton: one variable per (commodity, undominated path),
/// one capacity row per edge touched by any path.
struct PathProgram {
    lp: LinearProgram,
    /// Per commodity: (path index in the family, variable).
    vars: Vec<Vec<(usize, VarId)>>,
    edge_terms: BTreeMap<EdgeId, Vec<(VarId, Rational)>>,
}

impl PathProgram {
    fn new(sense: Sense, families: &[PathFamily]) -> Self {
        let mut lp = LinearProgram::new(sense);
        let mut vars = Vec::new();
        let mut edge_terms: BTreeMap<EdgeId, Vec<(VarId, Rational)>> = BTreeMap::new();
        for fam in families {
            let mut row = Vec::new();
            for k in undominated(&fam.paths) {
                let v = lp.add_var(format!("f{}_{}", fam.commodity, k));
                for (edge, uses) in fam.paths[k].edge_usage() {
                    edge_terms.entry(edge).or_default().push((v, Rational::from_integer(uses.into())));
                }
                row.push((k, v));
            }
            vars.push(row);
        }
        PathProgram { lp, vars, edge_terms }
    }

    fn demand_terms(&self, commodity: usize) -> Vec<(VarId, Rational)> {
        self.vars[commodity].iter().map(|&(_, v)| (v, Rational::one())).collect()
    }

    fn extract(&self, families: &[PathFamily], values: &[Rational], objective: Rational) -> FlowSolution {
        let flows = families
            .iter()
            .zip(&self.vars)
            .map(|(fam, vars)| {
                vars.iter()
                    .filter(|(_, v)| !values[v.0].is_zero())
                    .map(|&(k, v)| PathFlow { path: fam.paths[k].clone(), flow: values[v.0].clone() })
                    .collect()
            })
            .collect();
        FlowSolution { objective, flows }
    }
}

/// Maximum multi-commodity flow restricted to the supplied path families.
/// Infinite demands simply omit the demand row.
pub fn solve_te_mf(net: &FlowNetwork, families: &[PathFamily]) -> Result<FlowSolution> {
    check_families(net, families)?;
    let mut prog = PathProgram::new(Sense::Maximize, families);
    for (edge, terms) in std::mem::take(&mut prog.edge_terms) {
        prog.lp.add_constraint(format!("cap_e{}", edge.0), terms, Relation::Le, net.edge(edge).capacity.clone());
    }
    for (i, c) in net.commodities().iter().enumerate() {
        if let Demand::Finite(d) = &c.max_demand {
            let terms = prog.demand_terms(i);
            if !terms.is_empty() {
                prog.lp.add_constraint(format!("demand_{i}"), terms, Relation::Le, d.clone());
            }
        }
    }
    let objective: Vec<_> = prog.vars.iter().flatten().map(|&(_, v)| (v, Rational::one())).collect();
    prog.lp.set_objective(objective);
    let sol = lp::solve(&prog.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(prog.extract(families, &sol.values, sol.objective)),
        LpStatus::Unbounded => Err(Error::Unbounded("maximum flow".into())),
        LpStatus::Infeasible => Err(Error::Infeasible("maximum flow".into())),
    }
}

/// Minimum maximum link utilization `theta` routing every required demand
/// on the supplied paths. Utilization above 1 is allowed.
pub fn solve_te_lu(net: &FlowNetwork, families: &[PathFamily]) -> Result<FlowSolution> {
    check_families(net, families)?;
    let mut prog = PathProgram::new(Sense::Minimize, families);
    let theta = prog.lp.add_var("theta");
    for (edge, mut terms) in std::mem::take(&mut prog.edge_terms) {
        terms.push((theta, -net.edge(edge).capacity.clone()));
        prog.lp.add_constraint(format!("util_e{}", edge.0), terms, Relation::Le, Rational::zero());
    }
    for (i, c) in net.commodities().iter().enumerate() {
        let demand = c.required_demand().ok_or(Error::InfiniteDemand(i))?;
        let terms = prog.demand_terms(i);
        if terms.is_empty() {
            if demand.is_zero() {
                continue;
            }
            return Err(Error::Infeasible(format!("commodity {i} has no usable path")));
        }
        prog.lp.add_constraint(format!("demand_{i}"), terms, Relation::Ge, demand);
    }
    prog.lp.set_objective(vec![(theta, Rational::one())]);
    let sol = lp::solve(&prog.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(prog.extract(families, &sol.values, sol.objective)),
        LpStatus::Infeasible => Err(Error::Infeasible("demands cannot be routed on the supplied paths".into())),
        LpStatus::Unbounded => Err(Error::Unbounded("utilization".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmfAnswer {
    pub yes: bool,
    pub demand_total: Rational,
    pub witness: FlowSolution,
}

/// Can the full demand sum be routed? Requires finite demands.
pub fn decide_dmf(net: &FlowNetwork, families: &[PathFamily]) -> Result<DmfAnswer> {
    let mut demand_total = Rational::zero();
    for (i, c) in net.commodities().iter().enumerate() {
        demand_total += c.max_demand.finite().ok_or(Error::InfiniteDemand(i))?;
    }
    let witness = solve_te_mf(net, families)?;
    Ok(DmfAnswer { yes: witness.objective == demand_total, demand_total, witness })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmfBridgeReport {
    pub dmf_yes: bool,
    pub max_flow: Rational,
    pub demand_total: Rational,
    /// `None` when the utilization program is infeasible.
    pub theta: Option<Rational>,
    pub holds: bool,
}

/// Solves both the decision problem and the utilization program and checks
/// that "all demand routable" coincides with "optimal utilization at most 1".
pub fn check_dmf_bridge(net: &FlowNetwork, families: &[PathFamily]) -> Result<DmfBridgeReport> {
    for (i, c) in net.commodities().iter().enumerate() {
        let max = c.max_demand.finite().ok_or(Error::InfiniteDemand(i))?;
        if c.min_demand.as_ref().is_some_and(|m| m != max) {
            return Err(Error::InvalidCommodity {
                index: i,
                reason: "minimum and maximum demand must coincide".into(),
            });
        }
    }
    let dmf = decide_dmf(net, families)?;
    let theta = match solve_te_lu(net, families) {
        Ok(sol) => Some(sol.objective),
        Err(Error::Infeasible(_)) => None,
        Err(e) => return Err(e),
    };
    let lu_yes = theta.as_ref().is_some_and(|t| *t <= Rational::one());
    Ok(DmfBridgeReport {
        dmf_yes: dmf.yes,
        max_flow: dmf.witness.objective,
        demand_total: dmf.demand_total,
        theta,
        holds: dmf.yes == lu_yes,
    })
}
