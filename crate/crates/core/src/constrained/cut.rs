//! Minimum s-w-t edge cut: the cheapest edge set meeting every path through `w`.
//!
//! The cut is a minimum-weight hitting set of the enumerated path family,
//! solved by branch and bound. Past [`EXACT_CUT_EDGE_LIMIT`] candidate edges
//! a greedy cover is returned instead and flagged as not exact.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::network::{EdgeId, FlowNetwork, NodeId};
use crate::paths::{EnumOptions, PathConstraint};
use crate::rational::Rational;

use super::exact::complete_families;

pub const EXACT_CUT_EDGE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    pub edges: Vec<EdgeId>,
    pub value: Rational,
    /// `false` when the value is only a greedy upper bound on the minimum.
    pub exact: bool,
}

/// Cuts every commodity's paths through `w`. Debug builds re-verify the
/// result by enumerating the network with the cut removed.
pub fn min_swt_edge_cut(net: &FlowNetwork, w: NodeId, cap: usize) -> Result<EdgeCut> {
    if w.0 >= net.node_count() {
        return Err(Error::UnknownNode(format!("#{}", w.0)));
    }
    let constraint = PathConstraint::Through(w);
    let families = complete_families(net, &constraint, EnumOptions::with_cap(cap))?;
    let mut sets: Vec<BTreeSet<EdgeId>> = families
        .iter()
        .flat_map(|f| f.paths.iter().map(|p| p.steps().iter().map(|s| s.edge).collect()))
        .collect();
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    // Hitting a subset hits every superset, so supersets are redundant.
    let mut minimal: Vec<BTreeSet<EdgeId>> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m.is_subset(&s)) {
            minimal.push(s);
        }
    }
    let weight = |e: &EdgeId| net.edge(*e).capacity.clone();
    let candidates: BTreeSet<EdgeId> = minimal.iter().flatten().copied().collect();

    let greedy = greedy_cover(&minimal, &weight);
    let (edges, exact) = if candidates.len() <= EXACT_CUT_EDGE_LIMIT {
        let mut search = Search {
            sets: &minimal,
            weight: &weight,
            best_value: value_of(&greedy, &weight),
            best: greedy.clone(),
            chosen: Vec::new(),
        };
        search.run(Rational::zero());
        (search.best, true)
    } else {
        (greedy, false)
    };
    let mut edges = edges;
    edges.sort();
    let cut = EdgeCut { value: value_of(&edges, &weight), edges, exact };
    debug_assert!(verify_cut(net, w, &cut.edges, cap)?);
    Ok(cut)
}

/// True when removing `edges` leaves no path through `w` for any commodity.
pub fn verify_cut(net: &FlowNetwork, w: NodeId, edges: &[EdgeId], cap: usize) -> Result<bool> {
    let reduced = net.without_edges(edges);
    let families = complete_families(&reduced, &PathConstraint::Through(w), EnumOptions::with_cap(cap))?;
    Ok(families.iter().all(|f| f.is_empty()))
}

fn value_of(edges: &[EdgeId], weight: &dyn Fn(&EdgeId) -> Rational) -> Rational {
    edges.iter().map(weight).fold(Rational::zero(), |a, b| a + b)
}

/// Repeatedly takes the edge with the best weight per newly hit path.
fn greedy_cover(sets: &[BTreeSet<EdgeId>], weight: &dyn Fn(&EdgeId) -> Rational) -> Vec<EdgeId> {
    let mut alive: Vec<&BTreeSet<EdgeId>> = sets.iter().collect();
    let mut chosen = Vec::new();
    while !alive.is_empty() {
        let candidates: BTreeSet<EdgeId> = alive.iter().flat_map(|s| s.iter().copied()).collect();
        let best = candidates
            .into_iter()
            .max_by(|a, b| {
                let hits = |e: &EdgeId| alive.iter().filter(|s| s.contains(e)).count() as i64;
                // Compare hits/weight without dividing by a possible zero weight.
                let (ha, hb) = (Rational::from_integer(hits(a).into()), Rational::from_integer(hits(b).into()));
                (ha * weight(b)).cmp(&(hb * weight(a))).then_with(|| b.cmp(a))
            })
            .expect("live sets are non-empty");
        alive.retain(|s| !s.contains(&best));
        chosen.push(best);
    }
    chosen
}

struct Search<'a> {
    sets: &'a [BTreeSet<EdgeId>],
    weight: &'a dyn Fn(&EdgeId) -> Rational,
    best: Vec<EdgeId>,
    best_value: Rational,
    chosen: Vec<EdgeId>,
}

impl Search<'_> {
    fn run(&mut self, cost: Rational) {
        // Branch on the smallest set not yet hit; only strict improvements survive.
        let Some(set) = self.unhit() else {
            if cost < self.best_value {
                self.best = self.chosen.clone();
                self.best_value = cost;
            }
            return;
        };
        let mut options: Vec<EdgeId> = set.iter().copied().collect();
        options.sort_by(|a, b| (self.weight)(a).cmp(&(self.weight)(b)).then(a.cmp(b)));
        for e in options {
            let c = &cost + (self.weight)(&e);
            if c >= self.best_value {
                continue;
            }
            self.chosen.push(e);
            self.run(c);
            self.chosen.pop();
        }
    }

    fn unhit(&self) -> Option<&BTreeSet<EdgeId>> {
        self.sets
            .iter()
            .filter(|s| !s.iter().any(|e| self.chosen.contains(e)))
            .min_by_key(|s| s.len())
    }
}
